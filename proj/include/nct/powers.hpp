#pragma once

#include "nct/contour.hpp"
#include "nct/resolvent.hpp"

namespace nct {

struct PowerOptions {
  double kernel_tol_frac = 1e-10;  // |eigenvalue| <= frac * ||T|| counts as kernel (0^z := 0)
  double normal_tol = 1e-8;        // ||T*T - TT*|| / ||T||^2 bound for the spectral route
  double quad_tol = 1e-8;          // tail + quadrature target for the contour route
  QuadratureParams quad;
};

// Principal-branch functional calculus on the truncation; kernel eigenvalues
// map to 0. Refuses non-normal T and eigenvalues on (-inf, 0).
TruncatedOperator power_spectral(const TruncatedOperator& T, Complex z, PowerOptions opts = {});

struct ContourPowerResult {
  TruncatedOperator op;
  double error_estimate = 0.0;  // quadrature refinement difference
  int shift_m = 0;              // P^z = P^m P^{z-m} for Re z >= 0
  double r = 0.0;               // keyhole throat
  double t_max = 0.0;           // ray truncation from the tail bound
};

// P^z = 1/(2 i pi) int_Gamma lambda^z (P - lambda)^{-1} d lambda over the
// keyhole Gamma. r = 0 picks 0.5 * min |nonzero eigenvalue|.
ContourPowerResult power_contour(const TruncatedOperator& T, Complex z, double r = 0.0,
                                 PowerOptions opts = {});

// lambda^z functional calculus of the left-multiplication matrix of a on the
// cutoff box; kernel convention as above.
NcElement element_power(const NcElement& a, Complex z, int cutoff,
                        double kernel_tol_frac = 1e-10);

// Homogeneous components of the complex power symbol: for j <= J,
// rho_{wz-j}(z; xi) = 1/(2 i pi) int_{gamma_xi} lambda^z sigma_{-w-j}(xi; lambda) d lambda,
// gamma_xi a clockwise circle around Sp(rho_w(xi)) in (0, inf) scaled by |xi|^w.
// Requires a positive spectral cloud (ell.c > 0 and real positive eigenvalues).
NumericSymbol power_symbol(const ClassicalSymbol& rho, Complex z, int J,
                           const EllipticityData& ell, EvalPolicy policy = {},
                           QuadratureParams quad = {});

struct AbsValueResult {
  TruncatedOperator op;  // power_spectral(P*P, 1/2)
  std::function<NcElement(const Eigen::VectorXd&)> principal;  // |rho_w(xi)|
};

AbsValueResult abs_value(const TruncatedOperator& P, const ClassicalSymbol& sym,
                         PowerOptions opts = {});

// || P^{z1} P^{z2} - P^{z1+z2} || on the truncation (spectral route).
double group_property_check(const TruncatedOperator& T, Complex z1, Complex z2,
                            PowerOptions opts = {});

}  // namespace nct
