#pragma once

#include "nct/calculus.hpp"
#include "nct/fit.hpp"
#include "nct/operator.hpp"

namespace nct {

struct SpectrumOptions {
  double cluster_tol = 1e-8;  // eigenvalues within this merge into one cluster
};

struct EigenCluster {
  Complex value;
  int multiplicity = 1;
};

// Dense eigendecomposition with multiplicity clustering.
std::vector<EigenCluster> spectrum(const TruncatedOperator& T, SpectrumOptions opts = {});
std::vector<Complex> eigenvalues(const TruncatedOperator& T);

double spectral_distance(const std::vector<Complex>& spectrum, Complex lambda);

// (T - lambda)^{-1} on the truncation. guard_frac * ||T|| is the minimal
// allowed distance from lambda to the spectrum.
TruncatedOperator exact_resolvent(const TruncatedOperator& T, Complex lambda,
                                  double guard_frac = 1e-6);

// Decay fit of ||(T - lambda)^{-1}|| along the ray arg = ray_arg,
// |lambda| in [t_lo, t_hi]. A ray of minimal growth fits exponent -1.
DecayFit minimal_growth_check(const TruncatedOperator& T, double ray_arg, double t_lo,
                              double t_hi, int samples = 12, double guard_frac = 1e-6);

// Q_J(lambda) for J = 0..Jmax from the parametric parametrix of sym, sharing
// one evaluation cache per lattice point across components.
std::vector<TruncatedOperator> parametrix_operators(const ClassicalSymbol& sym, int Jmax,
                                                    Complex lambda, int N, EvalPolicy policy = {});

// Interior norm of (P - lambda) Q_J(lambda) - 1 for each J = 0..Jmax.
std::vector<double> parametrix_residuals(const ClassicalSymbol& sym, int Jmax, Complex lambda,
                                         int N, int margin, EvalPolicy policy = {});

struct ResolventReport {
  std::string operator_id;
  std::vector<Complex> lambda_grid;
  std::vector<double> exact_norms;          // ||(P-lambda)^{-1}|| per grid point
  std::vector<double> difference_norms;     // interior ||(P-lambda)^{-1} - Q_J||
  std::vector<std::vector<double>> residuals;  // [grid][J]
  std::vector<EigenCluster> spectrum_snapshot;
  DecayFit difference_fit;                  // |difference| vs |lambda|
  std::vector<std::string> skipped;         // grid points near the spectrum
  int cutoff = 0, margin = 0, depth = 0;
};

ResolventReport resolvent_vs_parametrix(const ClassicalSymbol& sym, int J,
                                        const std::vector<Complex>& lambda_grid, int N, int margin,
                                        EvalPolicy policy = {});

// Tr[A_0 (P-lambda)^{-1} A_1 ... (P-lambda)^{-1} A_m] on the truncation per
// grid lambda, fitted against (1 + |lambda|). Requires the declared-order
// precondition -m*w + sum(orders) < -n.
DecayFit trace_chain(const std::vector<TruncatedOperator>& factors,
                     const std::vector<double>& orders, const TruncatedOperator& P, double w,
                     const std::vector<Complex>& lambda_grid, double guard_frac = 1e-6);

}  // namespace nct
