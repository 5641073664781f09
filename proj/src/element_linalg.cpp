#include "nct/element_linalg.hpp"

#include <sstream>

namespace nct {

Eigen::MatrixXcd left_mult_matrix(const NcElement& a, const LatticeBox& box) {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(box.dim(), box.dim());
  for (int col = 0; col < box.dim(); ++col) {
    const MultiIndex& l = box.point(col);
    for (const auto& [k, c] : a.coeffs()) {
      MultiIndex kl = add(k, l);
      if (box.inside(kl)) M(box.index(kl), col) += c * phase(*a.theta(), k, l);
    }
  }
  return M;
}

InvertResult invert(const NcElement& a, int N, double tol) {
  LatticeBox box(a.n(), N);
  Eigen::MatrixXcd L = left_mult_matrix(a, box);

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(L);
  double rc = lu.rcond();
  double cond = rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  if (rc <= 1e-13) {
    std::ostringstream os;
    os << "not invertible at this truncation (N=" << N << ", cond=" << cond << ")";
    throw NotInvertibleError(os.str(), cond);
  }

  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(box.dim());
  e0(box.index(zero_index(a.n()))) = 1.0;
  Eigen::VectorXcd b = lu.solve(e0);

  NcElement::CoeffMap m;
  for (int i = 0; i < box.dim(); ++i)
    if (std::abs(b(i)) > kPruneThreshold) m.emplace(box.point(i), b(i));
  NcElement inv(a.theta(), std::move(m));

  double residual = (mul(a, inv) - NcElement::unit(a.theta())).norm0();
  if (residual > tol) {
    std::ostringstream os;
    os << "inverse residual " << residual << " exceeds tol " << tol
       << "; tail truncation too aggressive, increase N (currently " << N << ")";
    throw NotInvertibleError(os.str(), cond);
  }
  return InvertResult{std::move(inv), residual, cond};
}

NcElement exp_series(const NcElement& a, int terms, int N) {
  NcElement acc = NcElement::unit(a.theta());
  NcElement term = NcElement::unit(a.theta());
  for (int m = 1; m < terms; ++m) {
    term = mul(term, a).clipped(N) * Complex(1.0 / m);
    acc = acc + term;
  }
  return acc.clipped(N);
}

}  // namespace nct
