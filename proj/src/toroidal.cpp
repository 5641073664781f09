#include "nct/toroidal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace nct {

namespace {

constexpr double kPi = std::numbers::pi;

double mollifier(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// Smooth ramp s: s(u) = 0 for u <= 0, 1 for u >= 1, s(u) + s(1-u) = 1.
double smoothstep(double u) {
  double a = mollifier(u), b = mollifier(1.0 - u);
  return a == 0.0 && b == 0.0 ? 0.0 : a / (a + b);
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
  x.resize(m);
  w.resize(m);
  for (int i = 0; i < m; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = m * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= m; ++k) {
      double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = m * (t * p1 - p0) / (t * t - 1.0);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

}  // namespace

ToroidalSymbolTable::ToroidalSymbolTable(ThetaPtr theta, int N)
    : theta_(theta), box_(theta->n(), N), values_(box_.dim(), NcElement::zero(theta)) {}

ToroidalSymbolTable restrict_to_lattice(const ClassicalSymbol& sym, int N,
                                        std::optional<Complex> lambda, EvalPolicy policy) {
  ToroidalSymbolTable table(sym.theta(), N);
  const int n = sym.theta()->n();
  for (const auto& k : table.box().points()) {
    Eigen::VectorXd xi(n);
    for (int j = 0; j < n; ++j) xi(j) = k[j];
    table.set(k, sym.eval_full(xi, lambda, policy));
  }
  return table;
}

ToroidalSymbolTable restrict_to_lattice(const NumericSymbol& sym, int N) {
  ToroidalSymbolTable table(sym.theta, N);
  const int n = sym.theta->n();
  for (const auto& k : table.box().points()) {
    Eigen::VectorXd xi(n);
    for (int j = 0; j < n; ++j) xi(j) = k[j];
    table.set(k, sym.eval_full(xi));
  }
  return table;
}

PhiInterpolant::PhiInterpolant(int n, PhiProfile profile) : n_(n), profile_(profile) {
  const double a = profile.transition;
  if (a <= 0.0 || a >= kPi) throw ConfigError("build_phi: transition must lie in (0, pi)");

  // psihat is 1 on [-(pi-a), pi-a], 0 outside [-(pi+a), pi+a], and satisfies
  // psihat(w) + psihat(2 pi - w) = 1, so the periodization of psihat is
  // identically 1 and psi interpolates the lattice exactly.
  std::vector<double> gx, gw;
  gauss_legendre(profile.panel_order, gx, gw);
  const double lo = 0.0, hi = kPi + a;
  const double h = (hi - lo) / profile.panels;
  for (int p = 0; p < profile.panels; ++p) {
    double c = lo + (p + 0.5) * h;
    for (int i = 0; i < profile.panel_order; ++i) {
      double w = c + 0.5 * h * gx[i];
      double ph;
      if (w <= kPi - a)
        ph = 1.0;
      else if (w >= kPi + a)
        ph = 0.0;
      else
        ph = smoothstep((kPi + a - w) / (2.0 * a));
      nodes_.push_back(w);
      weights_.push_back(0.5 * h * gw[i]);
      psihat_.push_back(ph);
    }
  }

  if (profile.check_radius > 0) {
    double worst = 0.0;
    int worst_k = 0;
    for (int k = 1; k <= profile.check_radius; ++k) {
      double v = std::abs(eval1d(double(k)));
      if (v > worst) {
        worst = v;
        worst_k = k;
      }
    }
    double at0 = std::abs(eval1d(0.0) - 1.0);
    if (worst > profile.check_tol || at0 > profile.check_tol) {
      std::ostringstream os;
      os << "build_phi: interpolation property fails, |phi(" << worst_k << ")| = " << worst
         << ", |phi(0)-1| = " << at0;
      throw PrecisionError(os.str());
    }
  }
}

double PhiInterpolant::eval1d(double x) const {
  // psi(x) = (1/2 pi) int psihat(w) e^{iwx} dw; psihat even => cosine form
  double s = 0.0;
  for (size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * psihat_[i] * std::cos(nodes_[i] * x);
  return s / kPi;  // both half-lines folded into [0, pi + a]
}

double PhiInterpolant::operator()(const Eigen::VectorXd& xi) const {
  double p = 1.0;
  for (int j = 0; j < n_; ++j) p *= eval1d(xi(j));
  return p;
}

PhiInterpolant build_phi(int n, PhiProfile profile) { return PhiInterpolant(n, profile); }

NcElement ToroidalExtension::operator()(const Eigen::VectorXd& xi) const {
  NcElement out = NcElement::zero(table_.theta());
  const int n = table_.theta()->n();
  Eigen::VectorXd d(n);
  for (const auto& k : table_.box().points()) {
    for (int j = 0; j < n; ++j) d(j) = xi(j) - k[j];
    double w = phi_(d);
    if (w != 0.0) out = out + table_.at(k) * w;
  }
  return out;
}

}  // namespace nct
