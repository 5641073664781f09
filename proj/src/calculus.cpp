#include "nct/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "nct/element_linalg.hpp"

namespace nct {

namespace {

// cache of d^alpha applied to a component expression, built on demand
struct DiffTable {
  ExprPtr base;
  std::map<MultiIndex, ExprPtr> table;

  const ExprPtr& get(const MultiIndex& alpha) {
    auto it = table.find(alpha);
    if (it != table.end()) return it->second;
    return table.emplace(alpha, diff_xi(base, alpha)).first->second;
  }
};

}  // namespace

ClassicalSymbol sharp(const ClassicalSymbol& r1, const ClassicalSymbol& r2, int J) {
  require_same_theta(r1.theta(), r2.theta());
  if (std::abs(r1.weight() - r2.weight()) > 1e-12)
    throw ConfigError("sharp: operands carry different lambda-weights");
  const int n = r1.theta()->n();
  const double q = r1.order() + r2.order();

  std::vector<DiffTable> d1;
  for (const auto& c : r1.components()) d1.push_back({c.expr, {}});

  std::vector<HomogeneousSymbol> comps;
  for (int j = 0; j <= J; ++j) {
    std::vector<ExprPtr> terms;
    for (int k = 0; k <= std::min(j, r1.depth()); ++k) {
      for (int l = 0; l <= std::min(j - k, r2.depth()); ++l) {
        int m = j - k - l;
        for (const auto& alpha : multi_orders(n, m)) {
          ExprPtr da = d1[k].get(alpha);
          if (is_zero_expr(da)) continue;
          ExprPtr db = apply_delta(r2.component(l).expr, alpha);
          if (is_zero_expr(db)) continue;
          terms.push_back(sym_scale(1.0 / multi_factorial(alpha), sym_prod({da, db})));
        }
      }
    }
    comps.push_back({sym_sum(std::move(terms)), q - j, r1.lambda_degree() + r2.lambda_degree(),
                     r1.weight()});
  }
  return ClassicalSymbol(r1.theta(), q, std::move(comps),
                         r1.lambda_degree() + r2.lambda_degree(), r1.weight(), r1.chi());
}

ClassicalSymbol star(const ClassicalSymbol& r, int J) {
  const int n = r.theta()->n();
  std::vector<HomogeneousSymbol> comps;
  for (int j = 0; j <= J; ++j) {
    std::vector<ExprPtr> terms;
    for (int k = 0; k <= std::min(j, r.depth()); ++k) {
      int m = j - k;
      ExprPtr base = star_expr(r.component(k).expr);
      for (const auto& alpha : multi_orders(n, m)) {
        ExprPtr t = apply_delta(diff_xi(base, alpha), alpha);
        if (is_zero_expr(t)) continue;
        terms.push_back(sym_scale(1.0 / multi_factorial(alpha), std::move(t)));
      }
    }
    comps.push_back({sym_sum(std::move(terms)), r.order() - j, r.lambda_degree(), r.weight()});
  }
  return ClassicalSymbol(r.theta(), r.order(), std::move(comps), r.lambda_degree(), r.weight(),
                         r.chi());
}

EllipticityData ellipticity_data(const HomogeneousSymbol& principal, const ThetaPtr& theta,
                                 EllipticityOptions opts) {
  if (principal.degree <= 0.0) throw ConfigError("ellipticity_data: principal degree must be > 0");
  const int n = theta->n();
  EllipticityData out;
  out.c = std::numeric_limits<double>::infinity();

  std::vector<Eigen::VectorXd> samples;
  if (n == 1) {
    Eigen::VectorXd p(1), m(1);
    p << 1.0;
    m << -1.0;
    samples = {p, m};
  } else if (n == 2) {
    for (int i = 0; i < opts.sphere_samples; ++i) {
      double a = 2.0 * std::numbers::pi * i / opts.sphere_samples;
      Eigen::VectorXd v(2);
      v << std::cos(a), std::sin(a);
      samples.push_back(v);
    }
  } else {
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> g;
    for (int i = 0; i < opts.sphere_samples; ++i) {
      Eigen::VectorXd v(n);
      for (int j = 0; j < n; ++j) v(j) = g(rng);
      samples.push_back(v.normalized());
    }
  }

  LatticeBox box(n, opts.cutoff);
  for (const auto& xi : samples) {
    NcElement v = eval(principal.expr, theta, xi, std::nullopt, {opts.cutoff, 2 * opts.cutoff, 1e-6});
    Eigen::MatrixXcd L = left_mult_matrix(v, box);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(L);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    double smax = svd.singularValues()(0);
    if (smin < opts.min_singular) {
      std::ostringstream os;
      os << "not elliptic at sample xi = (";
      for (int j = 0; j < n; ++j) os << (j ? "," : "") << xi(j);
      os << "), smallest singular value " << smin;
      throw NotInvertibleError(os.str(), smax / std::max(smin, 1e-300));
    }
    out.c = std::min(out.c, smin);
    out.c_prime = std::max(out.c_prime, smax);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(L, false);
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      out.spectral_cloud.push_back(es.eigenvalues()(i));
    out.sphere_samples.push_back(xi);
  }

  // Theta(P): complement of the argument span of the cloud. Find the largest
  // circular gaps between sampled eigenvalue arguments and shrink by slack.
  std::vector<double> args;
  for (const auto& z : out.spectral_cloud)
    if (std::abs(z) > 1e-14) args.push_back(std::arg(z));
  std::sort(args.begin(), args.end());
  args.erase(std::unique(args.begin(), args.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-9; }),
             args.end());
  PseudoCone cone;
  if (!args.empty()) {
    for (size_t i = 0; i < args.size(); ++i) {
      double lo = args[i];
      double hi = (i + 1 < args.size()) ? args[i + 1] : args[0] + 2.0 * std::numbers::pi;
      double gap = hi - lo;
      double shrink = opts.slack * gap;
      if (gap - 2.0 * shrink > 2.0 * cone.guard) cone.sectors.push_back({lo + shrink, hi - shrink});
    }
  }
  out.theta_cone = cone;
  return out;
}

namespace {

ClassicalSymbol parametrix_impl(const ClassicalSymbol& r, int J, bool with_parameter) {
  const int n = r.theta()->n();
  const double w = r.order();

  ExprPtr principal = r.principal().expr;
  ExprPtr lead = with_parameter ? sym_sum({principal, sym_scale(-1.0, sym_lambda())}) : principal;
  ExprPtr lead_inv = sym_inv(lead);  // shared across all components

  std::vector<DiffTable> dr;
  for (const auto& c : r.components()) dr.push_back({c.expr, {}});

  const double lam_deg = with_parameter ? -1.0 : 0.0;
  std::vector<HomogeneousSymbol> sigma;
  sigma.push_back({lead_inv, -w, lam_deg, r.weight()});
  for (int j = 1; j <= J; ++j) {
    std::vector<ExprPtr> terms;
    for (int l = 0; l < j; ++l) {
      for (int k = 0; k <= std::min(j - l, r.depth()); ++k) {
        int m = j - k - l;
        for (const auto& alpha : multi_orders(n, m)) {
          ExprPtr da = dr[k].get(alpha);
          if (is_zero_expr(da)) continue;
          ExprPtr ds = apply_delta(sigma[l].expr, alpha);
          if (is_zero_expr(ds)) continue;
          terms.push_back(sym_scale(1.0 / multi_factorial(alpha), sym_prod({lead_inv, da, ds})));
        }
      }
    }
    sigma.push_back({sym_scale(-1.0, sym_sum(std::move(terms))), -w - j, lam_deg, r.weight()});
  }
  return ClassicalSymbol(r.theta(), -w, std::move(sigma), lam_deg, r.weight());
}

}  // namespace

ClassicalSymbol parametrix(const ClassicalSymbol& r, int J) { return parametrix_impl(r, J, false); }

ClassicalSymbol parametric_parametrix(const ClassicalSymbol& r, int J) {
  return parametrix_impl(r, J, true);
}

}  // namespace nct
