#pragma once

#include <functional>
#include <vector>

#include "nct/lattice.hpp"

namespace nct {

struct DecayFit {
  double exponent = 0.0;   // slope of log y vs log t
  double intercept = 0.0;
  double residual = 0.0;   // rms of the log-log fit
  double t_lo = 0.0, t_hi = 0.0;
  bool flagged = false;    // non-uniformity across pooled rays
};

// Least squares on log y = exponent * log t + intercept; requires t, y > 0.
DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& y);

// Decay exponent of f along the ray t -> t*e^{i*arg}, log-spaced t samples.
DecayFit ray_decay(const std::function<double(Complex)>& f, double ray_arg, double t_lo,
                   double t_hi, int samples = 12);

// Pooled fit over several rays. Each ray is fit separately too; the result is
// flagged when some per-ray residual exceeds twice the pooled residual or the
// per-ray exponents spread by more than `spread_tol`.
DecayFit pooled_ray_decay(const std::function<double(Complex)>& f,
                          const std::vector<double>& ray_args, double t_lo, double t_hi,
                          int samples = 12, double spread_tol = 0.2);

}  // namespace nct
