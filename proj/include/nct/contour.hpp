#pragma once

#include <vector>

#include "nct/cone.hpp"

namespace nct {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w);

// One quadrature sample: contribution f(lambda) * weight, weight carrying the
// Gauss-Legendre weight, the parametrization derivative d lambda / dt, and the
// 1/(2 i pi) prefactor.
struct ContourNode {
  Complex lambda;
  Complex weight;
};

// Keyhole traversal keeping the positive real spectrum on the right:
// in along arg = phi_in from t_max to the throat r, arc of radius r from
// phi_in through 0 to phi_out, out along arg = phi_out from r to t_max.
// Ray panels grow geometrically (params.ray_grading), so a large t_max adds
// only O(log t_max) panels.
std::vector<ContourNode> keyhole_nodes(const KeyholeContour& c, QuadratureParams params = {});

// Clockwise (or counterclockwise) circle, same weight convention.
std::vector<ContourNode> circle_nodes(const JordanCircle& c, QuadratureParams params = {});

// Truncation t_max making the discarded tail of |lambda^z (P - lambda)^{-1}|
// ~ t^{d} (d = tail exponent, here Re z - 1 for resolvents) smaller than tol:
// | int_T^inf C t^d dt | = C T^{d+1} / |d+1|. Throws when d >= -1 (divergent).
double keyhole_tmax(double tail_exponent, double scale, double tol, double t_min);

// Richardson-style error estimate: |I(params) - I(refined params)|.
QuadratureParams refine(QuadratureParams params);

template <typename F, typename V>
V contour_sum(const std::vector<ContourNode>& nodes, F&& f, V zero) {
  V acc = std::move(zero);
  for (const auto& nd : nodes) acc = acc + f(nd.lambda) * nd.weight;
  return acc;
}

}  // namespace nct
