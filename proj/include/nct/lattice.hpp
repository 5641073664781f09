#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nct {

using Complex = std::complex<double>;

// Lattice point in Z^n or differentiation multi-order, dimension n small (1..4).
using MultiIndex = std::vector<int>;

inline MultiIndex zero_index(int n) { return MultiIndex(n, 0); }

inline MultiIndex unit_index(int n, int j) {
  MultiIndex k(n, 0);
  k.at(j) = 1;
  return k;
}

inline MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex c(a);
  for (size_t j = 0; j < c.size(); ++j) c[j] += b[j];
  return c;
}

inline MultiIndex sub(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex c(a);
  for (size_t j = 0; j < c.size(); ++j) c[j] -= b[j];
  return c;
}

inline MultiIndex negate(const MultiIndex& a) {
  MultiIndex c(a);
  for (auto& x : c) x = -x;
  return c;
}

inline int order(const MultiIndex& a) {  // |alpha| = sum of entries (nonnegative multi-orders)
  int s = 0;
  for (int x : a) s += x;
  return s;
}

inline int sup_norm(const MultiIndex& k) {
  int m = 0;
  for (int x : k) m = std::max(m, std::abs(x));
  return m;
}

inline double sq_norm(const MultiIndex& k) {
  double s = 0;
  for (int x : k) s += double(x) * double(x);
  return s;
}

// k^alpha with 0^0 = 1.
inline double int_pow(const MultiIndex& k, const MultiIndex& alpha) {
  double p = 1.0;
  for (size_t j = 0; j < k.size(); ++j)
    for (int r = 0; r < alpha[j]; ++r) p *= double(k[j]);
  return p;
}

inline double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

inline double multi_factorial(const MultiIndex& alpha) {
  double f = 1.0;
  for (int a : alpha) f *= factorial(a);
  return f;
}

// All alpha >= 0 with |alpha| = m, dimension n.
std::vector<MultiIndex> multi_orders(int n, int m);

// Lexicographic enumeration of the box {k in Z^n : |k|_inf <= N}.
// This ordering is frozen; serialized matrices depend on it.
class LatticeBox {
 public:
  LatticeBox(int n, int N);

  int dim() const { return dim_; }         // (2N+1)^n
  int n() const { return n_; }
  int cutoff() const { return N_; }

  bool inside(const MultiIndex& k) const { return sup_norm(k) <= N_; }
  int index(const MultiIndex& k) const;    // throws if outside
  const MultiIndex& point(int i) const { return points_.at(i); }
  const std::vector<MultiIndex>& points() const { return points_; }

 private:
  int n_, N_, dim_;
  std::vector<MultiIndex> points_;
};

}  // namespace nct
