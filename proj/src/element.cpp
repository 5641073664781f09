#include "nct/element.hpp"

#include <cmath>
#include <numbers>

namespace nct {

Complex phase(const ThetaMatrix& theta, const MultiIndex& k, const MultiIndex& l) {
  // Reordering U^k U^l into U^{k+l} under U^k = U_1^{k_1}...U_n^{k_n} moves
  // every l_m (m < j) past every k_j, picking up theta(m,j) k_j l_m each time.
  // Validated against the generator relation and the cocycle property tests.
  double arg = 0.0;
  const int n = theta.n();
  for (int m = 0; m < n; ++m)
    for (int j = m + 1; j < n; ++j) arg += theta.entry(m, j) * double(k[j]) * double(l[m]);
  return std::polar(1.0, 2.0 * std::numbers::pi * arg);
}

NcElement::NcElement(ThetaPtr theta, CoeffMap coeffs, double prune)
    : theta_(std::move(theta)), coeffs_(std::move(coeffs)) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (int(it->first.size()) != theta_->n()) throw ConfigError("NcElement: wrong index dimension");
    if (std::abs(it->second) <= prune)
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

NcElement NcElement::unit(ThetaPtr theta) { return monomial(std::move(theta), MultiIndex(), 1.0); }

NcElement NcElement::monomial(ThetaPtr theta, const MultiIndex& k, Complex c) {
  MultiIndex kk = k.empty() ? zero_index(theta->n()) : k;
  CoeffMap m;
  m.emplace(std::move(kk), c);
  return NcElement(std::move(theta), std::move(m));
}

NcElement NcElement::scalar(ThetaPtr theta, Complex c) {
  return monomial(std::move(theta), MultiIndex(), c);
}

NcElement NcElement::generator(ThetaPtr theta, int j) {
  return monomial(theta, unit_index(theta->n(), j), 1.0);
}

Complex NcElement::coeff(const MultiIndex& k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex(0.0) : it->second;
}

bool NcElement::is_scalar() const {
  if (coeffs_.empty()) return true;
  return coeffs_.size() == 1 && sup_norm(coeffs_.begin()->first) == 0;
}

int NcElement::support_radius() const {
  int r = 0;
  for (const auto& [k, c] : coeffs_) r = std::max(r, sup_norm(k));
  return r;
}

NcElement NcElement::operator+(const NcElement& b) const {
  require_same_theta(theta_, b.theta_);
  CoeffMap m = coeffs_;
  for (const auto& [k, c] : b.coeffs_) m[k] += c;
  return NcElement(theta_, std::move(m));
}

NcElement NcElement::operator-(const NcElement& b) const { return *this + (-b); }

NcElement NcElement::operator*(Complex c) const {
  CoeffMap m = coeffs_;
  for (auto& [k, v] : m) v *= c;
  return NcElement(theta_, std::move(m));
}

NcElement mul(const NcElement& a, const NcElement& b) {
  require_same_theta(a.theta_, b.theta_);
  NcElement::CoeffMap m;
  for (const auto& [k, ak] : a.coeffs_)
    for (const auto& [l, bl] : b.coeffs_)
      m[add(k, l)] += ak * bl * phase(*a.theta_, k, l);
  return NcElement(a.theta_, std::move(m));
}

NcElement adjoint(const NcElement& a) {
  // (U^k)* = (U^k)^{-1} = conj(phase(k,-k)) U^{-k}
  NcElement::CoeffMap m;
  for (const auto& [k, c] : a.coeffs_) {
    MultiIndex mk = negate(k);
    m[mk] += std::conj(c) * std::conj(phase(*a.theta_, k, mk));
  }
  return NcElement(a.theta_, std::move(m));
}

Complex NcElement::trace() const { return coeff(zero_index(n())); }

double NcElement::norm0() const {
  double s = 0.0;
  for (const auto& [k, c] : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

double NcElement::sobolev_norm(double s) const {
  double acc = 0.0;
  for (const auto& [k, c] : coeffs_) acc += std::pow(1.0 + sq_norm(k), s) * std::norm(c);
  return std::sqrt(acc);
}

NcElement NcElement::clipped(int N) const {
  CoeffMap m;
  for (const auto& [k, c] : coeffs_)
    if (sup_norm(k) <= N) m.emplace(k, c);
  return NcElement(theta_, std::move(m));
}

Complex inner(const NcElement& u, const NcElement& v) {
  // tau(u v*) = sum_k u_k conj(v_k) by orthonormality of {U^k}
  require_same_theta(u.theta(), v.theta());
  Complex s = 0.0;
  for (const auto& [k, c] : u.coeffs()) s += c * std::conj(v.coeff(k));
  return s;
}

NcElement delta(const MultiIndex& alpha, const NcElement& a) {
  NcElement::CoeffMap m;
  for (const auto& [k, c] : a.coeffs()) {
    double f = int_pow(k, alpha);
    if (f != 0.0) m.emplace(k, c * f);
  }
  return NcElement(a.theta(), std::move(m));
}

NcElement delta_j(int j, const NcElement& a) { return delta(unit_index(a.n(), j), a); }

}  // namespace nct
