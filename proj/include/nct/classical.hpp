#pragma once

#include <functional>

#include "nct/symbol.hpp"

namespace nct {

// Smooth ramp: chi(r) = 1 for r <= radius, 0 for r >= radius + width,
// exp(-1/x)-mollifier transition in between. radius = 0 disables the cutoff.
struct CutoffChi {
  double radius = 0.0;
  double width = 1.0;
  double operator()(double r) const;
};

// rho_{m}(xi; lambda), homogeneous: rho(t xi; t^w lambda) = t^m rho(xi; lambda).
struct HomogeneousSymbol {
  ExprPtr expr;
  double degree = 0.0;
  double lambda_degree = 0.0;
  double weight = 1.0;

  ExprPtr diff(int j) const { return diff_xi(expr, j); }
};

// Numeric relative check of the joint homogeneity invariant at one (xi, lambda).
double homogeneity_defect(const HomogeneousSymbol& h, const ThetaPtr& theta,
                          const Eigen::VectorXd& xi, std::optional<Complex> lambda, double t,
                          EvalPolicy policy = {});

// rho(xi; lambda) ~ sum_j rho_{q-j}(xi; lambda): finite list of homogeneous
// components with degrees q, q-1, ..., q-J, plus a cutoff applied to
// components that are singular at xi = 0.
class ClassicalSymbol {
 public:
  ClassicalSymbol(ThetaPtr theta, double order, std::vector<HomogeneousSymbol> components,
                  double lambda_degree = 0.0, double weight = 1.0, CutoffChi chi = {});

  const ThetaPtr& theta() const { return theta_; }
  double order() const { return order_; }
  double lambda_degree() const { return lambda_degree_; }
  double weight() const { return weight_; }
  const CutoffChi& chi() const { return chi_; }
  void set_chi(CutoffChi chi) { chi_ = chi; }

  int depth() const { return int(components_.size()) - 1; }  // J
  const std::vector<HomogeneousSymbol>& components() const { return components_; }
  // component of degree order - j (zero expr if absent)
  const HomogeneousSymbol& component(int j) const;
  HomogeneousSymbol principal() const { return component(0); }

  // truncation to components j <= J
  ClassicalSymbol truncated(int J) const;

  // chi-assembled full symbol at one point; singular components are scaled by
  // (1 - chi)(|xi|) and skipped where that factor vanishes.
  NcElement eval_full(Evaluator& ev) const;
  NcElement eval_full(const Eigen::VectorXd& xi, std::optional<Complex> lambda,
                      EvalPolicy policy = {}) const;

  // max support radius over Constant leaves (coefficient radius of a
  // differential symbol); Inverse nodes make this unbounded -> -1
  int coeff_support_radius() const;

 private:
  ThetaPtr theta_;
  double order_, lambda_degree_, weight_;
  std::vector<HomogeneousSymbol> components_;
  std::vector<bool> singular_;
  CutoffChi chi_;
};

// Convenience builders.
// Laplacian symbol |xi|^2 (a single polynomial component).
ClassicalSymbol laplacian_symbol(const ThetaPtr& theta);
// Differential symbol sum_alpha a_alpha xi^alpha from coefficient table,
// grouped into homogeneous components by |alpha|.
ClassicalSymbol differential_symbol(const ThetaPtr& theta,
                                    const std::map<MultiIndex, NcElement>& coeffs);

// Component that only exists as a pointwise numeric rule (e.g. the contour
// integrals defining complex-power symbols).
struct NumericComponent {
  double degree = 0.0;
  std::function<NcElement(const Eigen::VectorXd&)> eval;
};

struct NumericSymbol {
  ThetaPtr theta;
  double order = 0.0;
  std::vector<NumericComponent> components;
  CutoffChi chi;  // applied to every component (all are singular at xi = 0)

  NcElement eval_full(const Eigen::VectorXd& xi) const;
};

}  // namespace nct
