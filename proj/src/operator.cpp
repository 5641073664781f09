#include "nct/operator.hpp"

#include <algorithm>
#include <cmath>

namespace nct {

TruncatedOperator::TruncatedOperator(ThetaPtr theta, LatticeBox box, Eigen::MatrixXcd matrix,
                                     std::string provenance)
    : theta_(std::move(theta)),
      box_(std::move(box)),
      matrix_(std::move(matrix)),
      provenance_(std::move(provenance)) {
  if (matrix_.rows() != box_.dim() || matrix_.cols() != box_.dim())
    throw ConfigError("TruncatedOperator: matrix shape does not match the lattice box");
}

NcElement NcElementFromVector(const ThetaPtr& theta, const LatticeBox& box,
                              const Eigen::VectorXcd& v) {
  NcElement::CoeffMap m;
  for (int i = 0; i < box.dim(); ++i)
    if (std::abs(v(i)) > kPruneThreshold) m[box.point(i)] = v(i);
  return NcElement(theta, std::move(m));
}

NcElement TruncatedOperator::apply(const NcElement& u) const {
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(box_.dim());
  NcElement uc = u.clipped(box_.cutoff());
  for (const auto& [k, c] : uc.coeffs()) x(box_.index(k)) = c;
  return NcElementFromVector(theta_, box_, matrix_ * x);
}

TruncatedOperator quantize(const ToroidalSymbolTable& table) {
  const LatticeBox& box = table.box();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(box.dim(), box.dim());
  for (int col = 0; col < box.dim(); ++col) {
    const MultiIndex& k = box.point(col);
    NcElement w = mul(table.at(k), NcElement::monomial(table.theta(), k));
    for (const auto& [l, c] : w.coeffs())
      if (box.inside(l)) M(box.index(l), col) = c;
  }
  return TruncatedOperator(table.theta(), box, std::move(M), "quantize(table)");
}

TruncatedOperator quantize(const ClassicalSymbol& sym, int N, std::optional<Complex> lambda,
                           EvalPolicy policy) {
  return quantize(restrict_to_lattice(sym, N, lambda, policy));
}

TruncatedOperator quantize(const NumericSymbol& sym, int N) {
  return quantize(restrict_to_lattice(sym, N));
}

TruncatedOperator compose(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_theta(a.theta(), b.theta());
  if (a.cutoff() != b.cutoff()) throw ConfigError("compose: cutoff mismatch");
  return TruncatedOperator(a.theta(), a.box(), a.matrix() * b.matrix(),
                           a.provenance() + " o " + b.provenance());
}

TruncatedOperator add(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_theta(a.theta(), b.theta());
  if (a.cutoff() != b.cutoff()) throw ConfigError("add: cutoff mismatch");
  return TruncatedOperator(a.theta(), a.box(), a.matrix() + b.matrix(),
                           a.provenance() + " + " + b.provenance());
}

TruncatedOperator scale(Complex c, const TruncatedOperator& a) {
  return TruncatedOperator(a.theta(), a.box(), c * a.matrix(), a.provenance());
}

TruncatedOperator adjoint_op(const TruncatedOperator& a) {
  return TruncatedOperator(a.theta(), a.box(), a.matrix().adjoint(),
                           "(" + a.provenance() + ")*");
}

TruncatedOperator identity_op(const ThetaPtr& theta, int N) {
  LatticeBox box(theta->n(), N);
  return TruncatedOperator(theta, box, Eigen::MatrixXcd::Identity(box.dim(), box.dim()), "id");
}

Eigen::VectorXd sobolev_weights(const LatticeBox& box, double s) {
  Eigen::VectorXd w(box.dim());
  for (int i = 0; i < box.dim(); ++i) w(i) = std::pow(1.0 + sq_norm(box.point(i)), s / 2.0);
  return w;
}

double op_norm(const TruncatedOperator& T, double s, double t) {
  Eigen::MatrixXcd M = T.matrix();
  if (s != 0.0 || t != 0.0) {
    Eigen::VectorXd wt = sobolev_weights(T.box(), t);
    Eigen::VectorXd ws = sobolev_weights(T.box(), -s);
    M = wt.asDiagonal() * M * ws.asDiagonal();
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
  return svd.singularValues()(0);
}

Eigen::MatrixXcd interior_projector(const LatticeBox& box, int margin) {
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(box.dim(), box.dim());
  for (int i = 0; i < box.dim(); ++i)
    if (sup_norm(box.point(i)) <= box.cutoff() - margin) P(i, i) = 1.0;
  return P;
}

double interior_norm(const TruncatedOperator& a, const TruncatedOperator& b, int margin, double s,
                     double t) {
  require_same_theta(a.theta(), b.theta());
  if (a.cutoff() != b.cutoff()) throw ConfigError("interior_norm: cutoff mismatch");
  Eigen::MatrixXcd P = interior_projector(a.box(), margin);
  Eigen::MatrixXcd M = P * (a.matrix() - b.matrix()) * P;
  Eigen::VectorXd wt = sobolev_weights(a.box(), t);
  Eigen::VectorXd ws = sobolev_weights(a.box(), -s);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(wt.asDiagonal() * M * ws.asDiagonal());
  return svd.singularValues()(0);
}

double shell_norm(const TruncatedOperator& a, const TruncatedOperator& b, int lo, int margin) {
  require_same_theta(a.theta(), b.theta());
  if (a.cutoff() != b.cutoff()) throw ConfigError("shell_norm: cutoff mismatch");
  const LatticeBox& box = a.box();
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(box.dim(), box.dim());
  for (int i = 0; i < box.dim(); ++i) {
    int s = sup_norm(box.point(i));
    if (s > lo && s <= box.cutoff() - margin) P(i, i) = 1.0;
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(P * (a.matrix() - b.matrix()) * P);
  return svd.singularValues()(0);
}

SchattenFit schatten_tail(const TruncatedOperator& T, double head_frac, double tail_frac) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(T.matrix());
  SchattenFit fit;
  const auto& sv = svd.singularValues();
  fit.singular_values.assign(sv.data(), sv.data() + sv.size());

  int m = int(fit.singular_values.size());
  fit.window_lo = int(std::ceil(m * head_frac));
  fit.window_hi = m - int(std::ceil(m * tail_frac));
  if (fit.window_hi - fit.window_lo < 4)
    throw ConfigError("schatten_tail: fit window too small; increase the cutoff");

  // least squares on log sigma_i = slope * log(i+1) + intercept
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int i = fit.window_lo; i < fit.window_hi; ++i) {
    double sig = fit.singular_values[i];
    if (sig <= 0.0) break;
    double x = std::log(double(i + 1)), y = std::log(sig);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 4) throw ConfigError("schatten_tail: too few positive singular values in window");
  double det = cnt * sxx - sx * sx;
  fit.slope = (cnt * sxy - sx * sy) / det;
  fit.intercept = (sy * sxx - sx * sxy) / det;
  double rss = 0;
  for (int i = fit.window_lo; i < fit.window_lo + cnt; ++i) {
    double x = std::log(double(i + 1));
    double r = std::log(fit.singular_values[i]) - (fit.slope * x + fit.intercept);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / cnt);
  return fit;
}

}  // namespace nct
