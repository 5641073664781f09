#pragma once

#include <map>
#include <string>

#include "nct/element.hpp"

namespace nct {

// Differential operator in the normal form sum_alpha a_alpha delta^alpha with
// coefficients acting on the left. Products are normalized semantically via
// the algebra's own mul/delta (Leibniz), not by rewrite tables.
struct DiffOp {
  ThetaPtr theta;
  std::map<MultiIndex, NcElement> terms;  // alpha -> a_alpha, zero coefficients dropped

  int order() const;  // max |alpha|
  NcElement apply(const NcElement& u) const;
};

DiffOp diffop_zero(ThetaPtr theta);
DiffOp diffop_scalar(ThetaPtr theta, Complex c);
DiffOp diffop_mult(NcElement a);           // multiplication operator u -> a*u
DiffOp diffop_delta(ThetaPtr theta, int j);

DiffOp operator+(const DiffOp& p, const DiffOp& q);
DiffOp operator-(const DiffOp& p, const DiffOp& q);
DiffOp operator*(Complex c, const DiffOp& p);
// composition: delta^alpha passes through coefficients by the Leibniz rule
DiffOp operator*(const DiffOp& p, const DiffOp& q);
DiffOp diffop_pow(const DiffOp& p, int m);  // m >= 0

struct ParseError : Error {
  ParseError(const std::string& msg, size_t pos) : Error(msg), position(pos) {}
  size_t position;
};

struct OperatorAst {
  std::string source;
  DiffOp normalized;
};

// Grammar (EBNF):
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := primary ('^' ['-'] integer)?
//   primary := number | 'i' | 'U' index | 'd' index | '(' expr ')' | ('+'|'-') factor
// Precedence ^ > * > +/-. 'U j' generators may carry negative exponents;
// 'd j' derivations and parenthesized expressions only nonnegative ones.
OperatorAst parse_operator(const std::string& src, ThetaPtr theta);

// Canonical rendering of the normal form; reparses to the same normal form.
std::string print_operator(const OperatorAst& ast);

}  // namespace nct
