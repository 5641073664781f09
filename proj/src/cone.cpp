#include "nct/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nct/errors.hpp"

namespace nct {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// smallest nonnegative representative of x mod 2*pi
double wrap(double x) {
  double y = std::fmod(x, kTwoPi);
  return y < 0.0 ? y + kTwoPi : y;
}

bool in_sector(const Sector& s, double arg, double guard) {
  if (s.width() >= kTwoPi - 1e-15) return true;
  double rel = wrap(arg - s.lo);
  return rel > guard && rel < s.width() - guard;
}

}  // namespace

PseudoCone PseudoCone::cut_plane(double cut_arg, double guard) {
  PseudoCone c;
  c.sectors = {{cut_arg, cut_arg + kTwoPi}};
  c.excluded_rays = {cut_arg};  // full sector short-circuits the angular test
  c.guard = guard;
  return c;
}

PseudoCone PseudoCone::half_plane_with_disk(double r) {
  PseudoCone c;
  c.sectors = {{std::numbers::pi / 2, 3 * std::numbers::pi / 2}};
  c.disk_radius = r;
  c.include_origin = true;  // 0 lies in the glued disk
  return c;
}

bool contains(const PseudoCone& cone, Complex lambda) {
  double a = std::abs(lambda);
  if (a == 0.0) return cone.include_origin && cone.disk_radius > 0.0;
  double arg = std::arg(lambda);
  if (a < cone.disk_radius) {
    // inside the glued disk only the marked points are removed
    for (const auto& p : cone.excluded_points)
      if (std::abs(lambda - p) < 1e-12 * std::max(1.0, cone.disk_radius)) return false;
    return true;
  }
  for (double ray : cone.excluded_rays) {
    double d = wrap(arg - ray);
    if (d < cone.guard || kTwoPi - d < cone.guard) return false;
  }
  for (const auto& s : cone.sectors)
    if (in_sector(s, arg, cone.guard)) return true;
  return false;
}

bool compactly_inside(const PseudoCone& inner, const PseudoCone& outer) {
  // every inner sector closure strictly inside some outer sector interior
  for (const auto& si : inner.sectors) {
    bool ok = false;
    for (const auto& so : outer.sectors) {
      double lo_rel = wrap(si.lo - so.lo);
      if (lo_rel > outer.guard && lo_rel + si.width() < so.width() - outer.guard) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  // inner sectors must stay clear of outer deleted rays
  for (double ray : outer.excluded_rays)
    for (const auto& si : inner.sectors) {
      double rel = wrap(ray - si.lo);
      if (rel < si.width()) return false;
    }
  // disk data: the bounded part of the closure must sit inside the outer set
  if (inner.disk_radius > 0.0) {
    if (outer.disk_radius <= inner.disk_radius) return false;
    if (!inner.include_origin && outer.include_origin) {
      // fine: inner omits the origin
    }
    if (inner.include_origin && !outer.include_origin) return false;
  }
  return true;
}

PseudoCone lambda_P(const std::vector<Complex>& spectrum, const PseudoCone& theta_P,
                    double max_disk_radius, double zero_tol) {
  if (theta_P.sectors.empty()) throw DomainError("lambda_P: not elliptic with parameter");
  PseudoCone out = theta_P;
  bool zero_in_sp = false;
  double r0 = max_disk_radius;
  for (const auto& z : spectrum) {
    double a = std::abs(z);
    if (a <= zero_tol) {
      zero_in_sp = true;
      continue;
    }
    r0 = std::min(r0, a);
    double arg = std::arg(z);
    for (const auto& s : theta_P.sectors)
      if (in_sector(s, arg, 0.0)) {
        out.excluded_rays.push_back(arg);
        break;
      }
  }
  std::sort(out.excluded_rays.begin(), out.excluded_rays.end());
  out.excluded_rays.erase(std::unique(out.excluded_rays.begin(), out.excluded_rays.end()),
                          out.excluded_rays.end());
  out.disk_radius = r0;
  out.include_origin = !zero_in_sp;
  return out;
}

}  // namespace nct
