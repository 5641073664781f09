#include "nct/contour.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "nct/errors.hpp"

namespace nct {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kPrefactor = 1.0 / Complex(0.0, 2.0 * kPi);  // 1/(2 i pi)

// append Gauss-Legendre samples of lambda(t), t in [a, b], with derivative dl
void add_segment(std::vector<ContourNode>& out, double a, double b, int order,
                 const std::function<Complex(double)>& lam,
                 const std::function<Complex(double)>& dl) {
  std::vector<double> x, w;
  gauss_legendre(order, x, w);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < order; ++i) {
    double t = mid + half * x[i];
    out.push_back({lam(t), kPrefactor * dl(t) * (w[i] * half)});
  }
}

// geometric panel edges from r to t_max, growth ratio g
std::vector<double> graded_edges(double r, double t_max, double g) {
  std::vector<double> e{r};
  double width = r;
  while (e.back() < t_max) {
    e.push_back(std::min(e.back() + width, t_max));
    width *= g;
  }
  return e;
}

}  // namespace

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

std::vector<ContourNode> keyhole_nodes(const KeyholeContour& c, QuadratureParams params) {
  if (c.r <= 0.0) throw ConfigError("keyhole_nodes: throat radius must be positive");
  double t_max = c.t_max > 0.0 ? c.t_max : 1e6 * c.r;
  if (t_max <= c.r) throw ConfigError("keyhole_nodes: t_max must exceed the throat radius");

  std::vector<ContourNode> out;
  Complex e_in = std::polar(1.0, c.phi_in), e_out = std::polar(1.0, c.phi_out);
  auto edges = graded_edges(c.r, t_max, params.ray_grading);

  // incoming ray: t from t_max down to r -> reversed sign on the derivative
  for (size_t i = 0; i + 1 < edges.size(); ++i)
    add_segment(
        out, edges[i], edges[i + 1], params.panel_order,
        [&](double t) { return t * e_in; }, [&](double) { return -e_in; });

  // throat arc through arg 0
  double a0 = c.phi_in, a1 = c.phi_out;
  if (a1 <= a0) a1 += 2.0 * kPi;
  // traverse from phi_in up through 0 to phi_out (counterclockwise near the throat)
  for (int p = 0; p < params.arc_panels; ++p) {
    double lo = a0 + (a1 - a0) * p / params.arc_panels;
    double hi = a0 + (a1 - a0) * (p + 1) / params.arc_panels;
    add_segment(
        out, lo, hi, params.panel_order,
        [&](double phi) { return std::polar(c.r, phi); },
        [&](double phi) { return Complex(0.0, 1.0) * std::polar(c.r, phi); });
  }

  // outgoing ray: t from r to t_max
  for (size_t i = 0; i + 1 < edges.size(); ++i)
    add_segment(
        out, edges[i], edges[i + 1], params.panel_order,
        [&](double t) { return t * e_out; }, [&](double) { return e_out; });

  return out;
}

std::vector<ContourNode> circle_nodes(const JordanCircle& c, QuadratureParams params) {
  if (c.radius <= 0.0) throw ConfigError("circle_nodes: radius must be positive");
  std::vector<ContourNode> out;
  double sgn = c.clockwise ? -1.0 : 1.0;
  for (int p = 0; p < params.arc_panels; ++p) {
    double lo = 2.0 * kPi * p / params.arc_panels;
    double hi = 2.0 * kPi * (p + 1) / params.arc_panels;
    add_segment(
        out, lo, hi, params.panel_order,
        [&](double phi) { return c.center + std::polar(c.radius, sgn * phi); },
        [&](double phi) { return Complex(0.0, sgn) * std::polar(c.radius, sgn * phi); });
  }
  return out;
}

double keyhole_tmax(double tail_exponent, double scale, double tol, double t_min) {
  if (tail_exponent >= -1.0)
    throw DomainError("keyhole_tmax: tail exponent >= -1, the ray integral does not converge");
  double d = tail_exponent;
  // scale * T^{d+1} / |d+1| <= tol
  double T = std::pow(tol * std::abs(d + 1.0) / std::max(scale, 1e-300), 1.0 / (d + 1.0));
  return std::max(T, t_min);
}

QuadratureParams refine(QuadratureParams params) {
  params.panel_order += 4;
  params.arc_panels *= 2;
  params.ray_grading = 1.0 + 0.5 * (params.ray_grading - 1.0);
  return params;
}

}  // namespace nct
