#pragma once

#include <Eigen/Dense>

#include "nct/element.hpp"

namespace nct {

// Matrix of left multiplication u |-> a*u on the truncated basis
// {U^k : |k|_inf <= N}, lexicographic enumeration, products clipped to the box.
Eigen::MatrixXcd left_mult_matrix(const NcElement& a, const LatticeBox& box);

struct InvertResult {
  NcElement inverse;
  double residual;   // ||a * inverse - U^0||_0 on the truncation
  double condition;  // estimate for the truncated left-multiplication matrix
};

// Truncated inverse: solves L_a b = e_0 on {|k|_inf <= N}. Throws
// NotInvertibleError when the truncated matrix is singular/ill-conditioned or
// the residual exceeds tol (the latter advising a larger N).
InvertResult invert(const NcElement& a, int N, double tol = 1e-10);

// Partial sum sum_{m<terms} a^m/m!, supports clipped to |k|_inf <= N.
NcElement exp_series(const NcElement& a, int terms, int N);

}  // namespace nct
