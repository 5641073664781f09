#pragma once

#include <map>
#include <optional>

#include "nct/lattice.hpp"
#include "nct/theta.hpp"

namespace nct {

// Default coefficient prune threshold. Keeps supports finite under repeated
// products without touching 1e-10-level tolerances.
constexpr double kPruneThreshold = 1e-14;

// Commutation phase under the ordered-monomial convention
// U^k := U_1^{k_1} ... U_n^{k_n}:  U^k U^l = phase(k,l) U^{k+l}.
Complex phase(const ThetaMatrix& theta, const MultiIndex& k, const MultiIndex& l);

// Finite Fourier series sum_k a_k U^k over the lattice Z^n.
// Immutable after construction; all operations are pure.
class NcElement {
 public:
  using CoeffMap = std::map<MultiIndex, Complex>;

  explicit NcElement(ThetaPtr theta) : theta_(std::move(theta)) {}
  NcElement(ThetaPtr theta, CoeffMap coeffs, double prune = kPruneThreshold);

  static NcElement zero(ThetaPtr theta) { return NcElement(std::move(theta)); }
  static NcElement unit(ThetaPtr theta);                               // U^0
  static NcElement monomial(ThetaPtr theta, const MultiIndex& k, Complex c = 1.0);
  static NcElement scalar(ThetaPtr theta, Complex c);                  // c*U^0
  // U_j = U^{e_j}
  static NcElement generator(ThetaPtr theta, int j);

  const ThetaPtr& theta() const { return theta_; }
  int n() const { return theta_->n(); }
  const CoeffMap& coeffs() const { return coeffs_; }
  Complex coeff(const MultiIndex& k) const;
  bool is_zero() const { return coeffs_.empty(); }
  // true iff support is contained in {0}
  bool is_scalar() const;
  int support_radius() const;  // max |k|_inf over the support, 0 if empty

  NcElement operator+(const NcElement& b) const;
  NcElement operator-(const NcElement& b) const;
  NcElement operator*(Complex c) const;
  NcElement operator-() const { return *this * Complex(-1.0); }

  friend NcElement mul(const NcElement& a, const NcElement& b);
  friend NcElement adjoint(const NcElement& a);

  Complex trace() const;  // tau(a) = a_0
  double norm0() const;   // Hilbert-Schmidt norm sqrt(sum |a_k|^2) = ||a||_0
  double sobolev_norm(double s) const;

  // support pruned to |k|_inf <= N
  NcElement clipped(int N) const;

 private:
  ThetaPtr theta_;
  CoeffMap coeffs_;
};

inline NcElement operator*(Complex c, const NcElement& a) { return a * c; }

NcElement mul(const NcElement& a, const NcElement& b);
NcElement adjoint(const NcElement& a);

// <u,v> = tau(u v*)
Complex inner(const NcElement& u, const NcElement& v);

// (delta^alpha a)_k = k^alpha a_k
NcElement delta(const MultiIndex& alpha, const NcElement& a);
NcElement delta_j(int j, const NcElement& a);

}  // namespace nct
