#pragma once

#include <stdexcept>
#include <string>

namespace nct {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched theta, bad dimensions, malformed input.
struct ConfigError : Error {
  using Error::Error;
};

// Truncated left-multiplication matrix singular or residual above tolerance.
struct NotInvertibleError : Error {
  NotInvertibleError(const std::string& msg, double cond) : Error(msg), condition(cond) {}
  double condition;
};

// Parameter outside its pseudo-cone, ray through an eigenvalue, etc.
struct DomainError : Error {
  using Error::Error;
};

// Quadrature or fit could not reach the requested accuracy.
struct PrecisionError : Error {
  using Error::Error;
};

}  // namespace nct
