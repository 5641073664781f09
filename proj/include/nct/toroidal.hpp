#pragma once

#include "nct/classical.hpp"

namespace nct {

// Restriction of a symbol to the lattice box: k -> rho(k) in A_theta.
class ToroidalSymbolTable {
 public:
  ToroidalSymbolTable(ThetaPtr theta, int N);

  const ThetaPtr& theta() const { return theta_; }
  const LatticeBox& box() const { return box_; }
  int cutoff() const { return box_.cutoff(); }

  const NcElement& at(const MultiIndex& k) const { return values_.at(box_.index(k)); }
  void set(const MultiIndex& k, NcElement v) { values_.at(box_.index(k)) = std::move(v); }

 private:
  ThetaPtr theta_;
  LatticeBox box_;
  std::vector<NcElement> values_;
};

ToroidalSymbolTable restrict_to_lattice(const ClassicalSymbol& sym, int N,
                                        std::optional<Complex> lambda = std::nullopt,
                                        EvalPolicy policy = {});
ToroidalSymbolTable restrict_to_lattice(const NumericSymbol& sym, int N);

struct PhiProfile {
  double transition = 1.5;   // half-width of the Fourier-side ramp, in (0, pi)
  int panels = 160;          // quadrature panels for the inverse transform
  int panel_order = 16;
  int check_radius = 0;      // verify |phi(k)| <= tol for 0 < |k|_inf <= check_radius
  double check_tol = 1e-10;
};

// Lattice interpolant phi: phi(0) = 1, phi(k) = 0 for integer k != 0,
// integral 1. Product of 1-d kernels whose Fourier transform is a smooth
// partition-of-unity ramp; the interpolation identities hold analytically and
// are verified numerically on construction.
class PhiInterpolant {
 public:
  PhiInterpolant(int n, PhiProfile profile = {});

  int n() const { return n_; }
  double operator()(const Eigen::VectorXd& xi) const;
  double eval1d(double x) const;

 private:
  int n_;
  PhiProfile profile_;
  std::vector<double> nodes_, weights_, psihat_;  // cached 1-d quadrature data
};

PhiInterpolant build_phi(int n, PhiProfile profile = {});

// rho~(xi) = sum_{|k|_inf <= N} phi(xi - k) rho_k; agrees with the table on
// lattice points.
class ToroidalExtension {
 public:
  ToroidalExtension(ToroidalSymbolTable table, PhiInterpolant phi)
      : table_(std::move(table)), phi_(std::move(phi)) {}

  NcElement operator()(const Eigen::VectorXd& xi) const;

 private:
  ToroidalSymbolTable table_;
  PhiInterpolant phi_;
};

}  // namespace nct
