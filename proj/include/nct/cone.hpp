#pragma once

#include <complex>
#include <vector>

#include "nct/lattice.hpp"

namespace nct {

// Angular sector (lo, hi) in radians, lo < hi, hi - lo <= 2*pi; membership is
// by argument modulo 2*pi. Open at both ends up to the angular guard.
struct Sector {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

// A set agreeing with a cone (union of sectors) outside a disk about the
// origin; optionally with deleted rays and marked (excluded) disk points.
struct PseudoCone {
  std::vector<Sector> sectors;
  double disk_radius = 0.0;
  bool include_origin = false;
  std::vector<double> excluded_rays;       // deleted ray arguments
  std::vector<Complex> excluded_points;    // marked points inside the disk
  double guard = 1e-3;                     // angular guard for numeric membership

  static PseudoCone cut_plane(double cut_arg = 0.0, double guard = 1e-3);  // C \ ray(cut_arg)
  static PseudoCone half_plane_with_disk(double r);  // Lambda(r): Re <= 0 or |.| <= r
};

bool contains(const PseudoCone& cone, Complex lambda);
bool compactly_inside(const PseudoCone& inner, const PseudoCone& outer);

// Lambda(P): Theta(P) with rays through spectrum points deleted, glued to the
// disk of radius dist(0, Sp(P) \ {0}); origin excluded iff 0 in Sp(P).
PseudoCone lambda_P(const std::vector<Complex>& spectrum, const PseudoCone& theta_P,
                    double max_disk_radius = 1e6, double zero_tol = 1e-12);

// Quadrature contours.
struct KeyholeContour {
  double r = 0.5;            // throat radius
  double phi_out = 1.5707963267948966;   // outgoing ray argument (+pi/2)
  double phi_in = -1.5707963267948966;   // incoming ray argument (-pi/2)
  double t_max = 0.0;        // ray truncation; 0 -> 1e6 * r
};

struct JordanCircle {
  Complex center;
  double radius = 1.0;
  bool clockwise = true;
};

struct QuadratureParams {
  int panel_order = 8;
  int arc_panels = 16;
  double ray_grading = 2.0;  // geometric panel growth along rays
};

}  // namespace nct
