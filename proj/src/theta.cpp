#include "nct/theta.hpp"

#include "nct/lattice.hpp"

namespace nct {

std::vector<MultiIndex> multi_orders(int n, int m) {
  std::vector<MultiIndex> out;
  MultiIndex cur(n, 0);
  // recursive enumeration of compositions of m into n parts
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == n - 1) {
      cur[pos] = rem;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      cur[pos] = v;
      self(self, pos + 1, rem - v);
    }
  };
  if (n >= 1 && m >= 0) rec(rec, 0, m);
  return out;
}

LatticeBox::LatticeBox(int n, int N) : n_(n), N_(N) {
  if (n < 1 || N < 0) throw ConfigError("LatticeBox: need n >= 1, N >= 0");
  dim_ = 1;
  for (int j = 0; j < n; ++j) dim_ *= 2 * N + 1;
  points_.reserve(dim_);
  MultiIndex k(n, -N);
  while (true) {
    points_.push_back(k);
    int j = n - 1;
    while (j >= 0 && k[j] == N) {
      k[j] = -N;
      --j;
    }
    if (j < 0) break;
    ++k[j];
  }
}

int LatticeBox::index(const MultiIndex& k) const {
  if (!inside(k)) throw ConfigError("LatticeBox::index: point outside the box");
  int idx = 0;
  for (int j = 0; j < n_; ++j) idx = idx * (2 * N_ + 1) + (k[j] + N_);
  return idx;
}

ThetaMatrix::ThetaMatrix(int n, const Eigen::MatrixXd& entries, double antisym_tol)
    : n_(n), entries_(entries) {
  if (n < 1) throw ConfigError("ThetaMatrix: n must be >= 1");
  if (entries.rows() != n || entries.cols() != n)
    throw ConfigError("ThetaMatrix: entries must be n x n");
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (std::abs(entries(j, k) + entries(k, j)) > antisym_tol)
        throw ConfigError("ThetaMatrix: matrix is not antisymmetric");
}

ThetaPtr ThetaMatrix::make(int n, const Eigen::MatrixXd& entries) {
  return std::make_shared<const ThetaMatrix>(n, entries);
}

ThetaPtr ThetaMatrix::make2(double theta12) {
  Eigen::MatrixXd m(2, 2);
  m << 0.0, theta12, -theta12, 0.0;
  return make(2, m);
}

ThetaPtr ThetaMatrix::commutative(int n) {
  return make(n, Eigen::MatrixXd::Zero(n, n));
}

}  // namespace nct
