#include "nct/classical.hpp"

#include <cmath>

namespace nct {

namespace {

double mollifier(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

int expr_support_radius(const ExprPtr& e) {
  if (!e) return 0;
  switch (e->kind) {
    case NodeKind::Constant: return e->value->support_radius();
    case NodeKind::Inverse: return -1;
    case NodeKind::Product: {
      int s = 0;
      for (const auto& a : e->args) {
        int r = expr_support_radius(a);
        if (r < 0) return -1;
        s += r;
      }
      return s;
    }
    default: {
      int m = 0;
      for (const auto& a : e->args) {
        int r = expr_support_radius(a);
        if (r < 0) return -1;
        m = std::max(m, r);
      }
      return m;
    }
  }
}

}  // namespace

double CutoffChi::operator()(double r) const {
  if (radius <= 0.0) return 0.0;
  if (r <= radius) return 1.0;
  if (r >= radius + width) return 0.0;
  double u = (r - radius) / width;
  double a = mollifier(1.0 - u), b = mollifier(u);
  return a / (a + b);
}

double homogeneity_defect(const HomogeneousSymbol& h, const ThetaPtr& theta,
                          const Eigen::VectorXd& xi, std::optional<Complex> lambda, double t,
                          EvalPolicy policy) {
  std::optional<Complex> lam_t;
  if (lambda) lam_t = *lambda * std::pow(t, h.weight);
  NcElement base = eval(h.expr, theta, xi, lambda, policy);
  NcElement scaled = eval(h.expr, theta, xi * t, lam_t, policy);
  double tm = std::pow(t, h.degree);
  double denom = std::abs(tm) * base.norm0();
  if (denom == 0.0) return scaled.norm0();
  return (scaled - base * tm).norm0() / denom;
}

ClassicalSymbol::ClassicalSymbol(ThetaPtr theta, double order,
                                 std::vector<HomogeneousSymbol> components, double lambda_degree,
                                 double weight, CutoffChi chi)
    : theta_(std::move(theta)),
      order_(order),
      lambda_degree_(lambda_degree),
      weight_(weight),
      components_(std::move(components)),
      chi_(chi) {
  for (size_t j = 0; j < components_.size(); ++j) {
    if (std::abs(components_[j].degree - (order_ - double(j))) > 1e-12)
      throw ConfigError("ClassicalSymbol: component degrees must decrease by 1 from the order");
    singular_.push_back(has_singular_nodes(components_[j].expr));
  }
}

const HomogeneousSymbol& ClassicalSymbol::component(int j) const {
  static const HomogeneousSymbol zero{sym_zero(), 0.0, 0.0, 1.0};
  if (j < 0 || j >= int(components_.size())) return zero;
  return components_[j];
}

ClassicalSymbol ClassicalSymbol::truncated(int J) const {
  std::vector<HomogeneousSymbol> comps(components_.begin(),
                                       components_.begin() + std::min<size_t>(J + 1, components_.size()));
  return ClassicalSymbol(theta_, order_, std::move(comps), lambda_degree_, weight_, chi_);
}

NcElement ClassicalSymbol::eval_full(Evaluator& ev) const {
  double r = ev.xi().norm();
  NcElement out = NcElement::zero(theta_);
  for (size_t j = 0; j < components_.size(); ++j) {
    double factor = 1.0;
    if (singular_[j]) {
      factor = 1.0 - chi_(r);
      // components with inverse nodes at xi = 0 and no parameter attached are
      // genuinely singular; treat the uncut origin value as zero
      if (factor == 0.0 || (r == 0.0 && !ev.lambda())) continue;
    }
    out = out + ev.eval(components_[j].expr) * factor;
  }
  return out;
}

NcElement ClassicalSymbol::eval_full(const Eigen::VectorXd& xi, std::optional<Complex> lambda,
                                     EvalPolicy policy) const {
  Evaluator ev(theta_, xi, lambda, policy);
  return eval_full(ev);
}

int ClassicalSymbol::coeff_support_radius() const {
  int m = 0;
  for (const auto& c : components_) {
    int r = expr_support_radius(c.expr);
    if (r < 0) return -1;
    m = std::max(m, r);
  }
  return m;
}

ClassicalSymbol laplacian_symbol(const ThetaPtr& theta) {
  HomogeneousSymbol h{sym_xi_sq(theta->n()), 2.0, 0.0, 2.0};
  return ClassicalSymbol(theta, 2.0, {h}, 0.0, 2.0);
}

ClassicalSymbol differential_symbol(const ThetaPtr& theta,
                                    const std::map<MultiIndex, NcElement>& coeffs) {
  int q = 0;
  for (const auto& [alpha, a] : coeffs)
    if (!a.is_zero()) q = std::max(q, order(alpha));
  std::vector<HomogeneousSymbol> comps;
  for (int j = 0; j <= q; ++j) {
    std::vector<ExprPtr> terms;
    for (const auto& [alpha, a] : coeffs)
      if (order(alpha) == q - j && !a.is_zero())
        terms.push_back(sym_prod({sym_const(a), sym_xi(alpha)}));
    comps.push_back({sym_sum(std::move(terms)), double(q - j), 0.0, double(q)});
  }
  return ClassicalSymbol(theta, double(q), std::move(comps), 0.0, double(q));
}

NcElement NumericSymbol::eval_full(const Eigen::VectorXd& xi) const {
  double r = xi.norm();
  NcElement out = NcElement::zero(theta);
  for (const auto& c : components) {
    double factor = 1.0 - chi(r);
    if (factor == 0.0 || r == 0.0) continue;
    out = out + c.eval(xi) * factor;
  }
  return out;
}

}  // namespace nct
