#pragma once

#include <Eigen/Dense>
#include <memory>

#include "nct/errors.hpp"

namespace nct {

// The deformation matrix theta of A_theta. Entries are angles in units of
// full turns: U_k U_j = exp(2*i*pi*theta(j,k)) U_j U_k.
class ThetaMatrix {
 public:
  ThetaMatrix(int n, const Eigen::MatrixXd& entries, double antisym_tol = 1e-12);

  static std::shared_ptr<const ThetaMatrix> make(int n, const Eigen::MatrixXd& entries);
  // n=2 shorthand: theta = [[0, t], [-t, 0]].
  static std::shared_ptr<const ThetaMatrix> make2(double theta12);
  static std::shared_ptr<const ThetaMatrix> commutative(int n);

  int n() const { return n_; }
  double entry(int j, int k) const { return entries_(j, k); }
  const Eigen::MatrixXd& entries() const { return entries_; }

  bool operator==(const ThetaMatrix& other) const {
    return n_ == other.n_ && entries_ == other.entries_;
  }

 private:
  int n_;
  Eigen::MatrixXd entries_;
};

using ThetaPtr = std::shared_ptr<const ThetaMatrix>;

inline void require_same_theta(const ThetaPtr& a, const ThetaPtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !(*a == *b)) throw ConfigError("theta mismatch between operands");
}

}  // namespace nct
