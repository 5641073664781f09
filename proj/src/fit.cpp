#include "nct/fit.hpp"

#include <cmath>

#include "nct/errors.hpp"

namespace nct {

DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 3) throw ConfigError("fit_decay: need >= 3 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = int(t.size());
  for (int i = 0; i < m; ++i) {
    if (t[i] <= 0.0 || y[i] <= 0.0) throw DomainError("fit_decay: samples must be positive");
    double x = std::log(t[i]), v = std::log(y[i]);
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
  }
  double det = m * sxx - sx * sx;
  DecayFit fit;
  fit.exponent = (m * sxy - sx * sy) / det;
  fit.intercept = (sy * sxx - sx * sxy) / det;
  double rss = 0;
  for (int i = 0; i < m; ++i) {
    double r = std::log(y[i]) - (fit.exponent * std::log(t[i]) + fit.intercept);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / m);
  fit.t_lo = t.front();
  fit.t_hi = t.back();
  return fit;
}

namespace {

std::vector<double> log_spaced(double lo, double hi, int m) {
  std::vector<double> t(m);
  for (int i = 0; i < m; ++i) t[i] = lo * std::pow(hi / lo, double(i) / (m - 1));
  return t;
}

}  // namespace

DecayFit ray_decay(const std::function<double(Complex)>& f, double ray_arg, double t_lo,
                   double t_hi, int samples) {
  auto t = log_spaced(t_lo, t_hi, samples);
  std::vector<double> y(t.size());
  Complex dir = std::polar(1.0, ray_arg);
  for (size_t i = 0; i < t.size(); ++i) y[i] = f(t[i] * dir);
  return fit_decay(t, y);
}

DecayFit pooled_ray_decay(const std::function<double(Complex)>& f,
                          const std::vector<double>& ray_args, double t_lo, double t_hi,
                          int samples, double spread_tol) {
  if (ray_args.empty()) throw ConfigError("pooled_ray_decay: no rays");
  auto ts = log_spaced(t_lo, t_hi, samples);
  std::vector<double> pooled_t, pooled_y;
  std::vector<DecayFit> per_ray;
  for (double arg : ray_args) {
    Complex dir = std::polar(1.0, arg);
    std::vector<double> y(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) y[i] = f(ts[i] * dir);
    per_ray.push_back(fit_decay(ts, y));
    pooled_t.insert(pooled_t.end(), ts.begin(), ts.end());
    pooled_y.insert(pooled_y.end(), y.begin(), y.end());
  }
  DecayFit fit = fit_decay(pooled_t, pooled_y);
  double emin = per_ray[0].exponent, emax = per_ray[0].exponent;
  for (const auto& r : per_ray) {
    emin = std::min(emin, r.exponent);
    emax = std::max(emax, r.exponent);
    if (r.residual > 2.0 * std::max(fit.residual, 1e-12)) fit.flagged = true;
  }
  if (emax - emin > spread_tol) fit.flagged = true;
  return fit;
}

}  // namespace nct
