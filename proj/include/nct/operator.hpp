#pragma once

#include "nct/element_linalg.hpp"
#include "nct/toroidal.hpp"

namespace nct {

// Matrix of Op(rho) on the truncated basis {U^k : |k|_inf <= N}:
// Op(rho) U^k = rho(k) * U^k, products clipped to the box. Column order is
// the lexicographic enumeration of the box.
class TruncatedOperator {
 public:
  TruncatedOperator(ThetaPtr theta, LatticeBox box, Eigen::MatrixXcd matrix,
                    std::string provenance = {});

  const ThetaPtr& theta() const { return theta_; }
  const LatticeBox& box() const { return box_; }
  int cutoff() const { return box_.cutoff(); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  const std::string& provenance() const { return provenance_; }

  NcElement apply(const NcElement& u) const;  // u clipped to the box first

 private:
  ThetaPtr theta_;
  LatticeBox box_;
  Eigen::MatrixXcd matrix_;
  std::string provenance_;
};

// Coefficient vector along the box enumeration back into A_theta.
NcElement NcElementFromVector(const ThetaPtr& theta, const LatticeBox& box,
                              const Eigen::VectorXcd& v);

TruncatedOperator quantize(const ToroidalSymbolTable& table);
TruncatedOperator quantize(const ClassicalSymbol& sym, int N,
                           std::optional<Complex> lambda = std::nullopt, EvalPolicy policy = {});
TruncatedOperator quantize(const NumericSymbol& sym, int N);

TruncatedOperator compose(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator add(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator scale(Complex c, const TruncatedOperator& a);
TruncatedOperator adjoint_op(const TruncatedOperator& a);
TruncatedOperator identity_op(const ThetaPtr& theta, int N);

// Sobolev weights (1+|k|^2)^{s/2} along the enumeration.
Eigen::VectorXd sobolev_weights(const LatticeBox& box, double s);

// ||T||_{H^s -> H^t}: largest singular value of D_t T D_s^{-1}.
double op_norm(const TruncatedOperator& T, double s = 0.0, double t = 0.0);

// Diagonal projector onto the interior modes |k|_inf <= N - margin.
Eigen::MatrixXcd interior_projector(const LatticeBox& box, int margin);

// ||P (A - B) P||_{H^s -> H^t} with P the interior projector.
double interior_norm(const TruncatedOperator& a, const TruncatedOperator& b, int margin,
                     double s = 0.0, double t = 0.0);

// Same with the projector onto the shell lo < |k|_inf <= N - margin. For
// operator pairs whose difference is smoothing (concentrated at low modes)
// this is the norm that contracts as the cutoff grows.
double shell_norm(const TruncatedOperator& a, const TruncatedOperator& b, int lo, int margin);

struct SchattenFit {
  std::vector<double> singular_values;  // descending
  double slope = 0.0;                   // log sigma_i vs log i over the fit window
  double intercept = 0.0;
  double residual = 0.0;  // rms of the log-log fit
  int window_lo = 0, window_hi = 0;
};

// Decay-rate fit of the singular value sequence, excluding the top head_frac
// and bottom tail_frac of indices (truncation artifacts live at both ends).
SchattenFit schatten_tail(const TruncatedOperator& T, double head_frac = 0.10,
                          double tail_frac = 0.20);

}  // namespace nct
