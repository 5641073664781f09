#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nct/experiments.hpp"
#include "nct/powers.hpp"

using namespace nct;

namespace {

// 1 + Delta on the 2-torus: positive spectrum 1 + |k|^2, diagonal
TruncatedOperator shifted_laplacian(const ThetaPtr& theta, int N) {
  return add(quantize(laplacian_symbol(theta), N), identity_op(theta, N));
}

}  // namespace

TEST_CASE("spectral power of 1 + Delta matches the diagonal oracle") {
  auto theta = ThetaMatrix::make2(0.25);
  TruncatedOperator P = shifted_laplacian(theta, 4);
  LatticeBox box(2, 4);
  for (Complex z : {Complex(0.5, 0.0), Complex(-1.0, 0.0), Complex(0.3, 0.7)}) {
    TruncatedOperator Q = power_spectral(P, z);
    for (int i = 0; i < box.dim(); ++i) {
      double s = 1.0;
      for (int c : box.point(i)) s += double(c) * c;
      Complex want = std::pow(Complex(s, 0.0), z);
      CHECK(std::abs(Q.matrix()(i, i) - want) < 1e-10 * std::abs(want));
    }
    // off-diagonal stays zero
    CHECK((Q.matrix() - Q.matrix().diagonal().asDiagonal().toDenseMatrix()).norm() < 1e-10);
  }
  // sqrt(3) appears at k = (1, 1) for z = 1/2
  TruncatedOperator H = power_spectral(P, Complex(0.5, 0.0));
  int idx = box.index({1, 1});
  CHECK(std::abs(H.matrix()(idx, idx) - std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("spectral power maps kernel eigenvalues to zero") {
  auto theta = ThetaMatrix::make2(0.25);
  // Delta itself has the kernel vector e_0
  TruncatedOperator D = quantize(laplacian_symbol(theta), 3);
  TruncatedOperator Q = power_spectral(D, Complex(0.5, 0.0));
  LatticeBox box(2, 3);
  int zero = box.index({0, 0});
  CHECK(std::abs(Q.matrix()(zero, zero)) < 1e-10);
  int one = box.index({1, 0});
  CHECK(std::abs(Q.matrix()(one, one) - 1.0) < 1e-10);
}

TEST_CASE("spectral power refuses the branch cut and non-normal input") {
  auto theta = ThetaMatrix::make2(0.25);
  // spectrum containing -1: refuse the principal branch
  TruncatedOperator P = shifted_laplacian(theta, 3);
  TruncatedOperator neg = scale(Complex(-1.0, 0.0), P);
  CHECK_THROWS_AS(power_spectral(neg, Complex(0.5, 0.0)), DomainError);

  // non-normal operator: quantization of U1 * xi_1 (weighted shift)
  HomogeneousSymbol h{sym_prod({sym_const(NcElement::monomial(theta, {1, 0})), sym_xi({1, 0})}),
                      1.0, 0.0, 1.0};
  ClassicalSymbol shift(theta, 1.0, {h});
  TruncatedOperator S = quantize(shift, 3);
  CHECK_THROWS_AS(power_spectral(S, Complex(0.5, 0.0)), DomainError);
}

TEST_CASE("contour power agrees with the spectral route, Re z < 0") {
  auto theta = ThetaMatrix::make2(1.0 / std::sqrt(3.0));
  TruncatedOperator P = shifted_laplacian(theta, 3);
  for (Complex z : {Complex(-0.5, 0.0), Complex(-1.0, 0.3), Complex(-2.5, -0.8)}) {
    ContourPowerResult res = power_contour(P, z);
    TruncatedOperator want = power_spectral(P, z);
    double err = (res.op.matrix() - want.matrix()).norm();
    CHECK(err < 1e-6 * want.matrix().norm());
    CHECK(res.shift_m == 0);
    CHECK(res.error_estimate < 1e-6);
  }
}

TEST_CASE("contour power shifts by an integer for Re z >= 0") {
  auto theta = ThetaMatrix::make2(0.25);
  TruncatedOperator P = shifted_laplacian(theta, 3);
  for (Complex z : {Complex(0.5, 0.0), Complex(1.7, 0.4)}) {
    ContourPowerResult res = power_contour(P, z);
    CHECK(res.shift_m == int(std::ceil(z.real())) + 1);
    TruncatedOperator want = power_spectral(P, z);
    CHECK((res.op.matrix() - want.matrix()).norm() < 1e-6 * want.matrix().norm());
  }
}

TEST_CASE("contour power refuses spectrum off the right half plane") {
  auto theta = ThetaMatrix::make2(0.25);
  TruncatedOperator P = shifted_laplacian(theta, 3);
  TruncatedOperator neg = scale(Complex(-1.0, 0.0), P);
  CHECK_THROWS_AS(power_contour(neg, Complex(-0.5, 0.0)), DomainError);
}

TEST_CASE("group property of complex powers") {
  auto theta = ThetaMatrix::make2(0.25);
  TruncatedOperator P = shifted_laplacian(theta, 4);
  CHECK(group_property_check(P, Complex(0.5, 0.2), Complex(-1.3, 0.4)) < 1e-9);
  CHECK(group_property_check(P, Complex(-0.5, 0.0), Complex(0.5, 0.0)) < 1e-9);
}

TEST_CASE("element power via the left multiplication matrix") {
  auto theta = ThetaMatrix::make2(0.25);
  // a = 2.5 + U1 + U1* is strictly positive (spectrum 2.5 + 2 cos in [0.5, 4.5])
  NcElement a = NcElement::monomial(theta, {0, 0}, 2.5);
  a = a + NcElement::monomial(theta, {1, 0}) + NcElement::monomial(theta, {-1, 0});
  NcElement s = element_power(a, Complex(0.5, 0.0), 16);
  // oracle: s * s = a after cutting to a comfortable box
  NcElement err = mul(s, s) - a;
  NcElement errc = err.clipped(8);
  double worst = 0.0;
  for (const auto& [k, c] : errc.coeffs()) worst = std::max(worst, std::abs(c));
  CHECK(worst < 1e-6);

  // z = -1 inverts
  NcElement inv = element_power(a, Complex(-1.0, 0.0), 16);
  NcElement one = mul(inv, a) - NcElement::monomial(theta, {0, 0});
  NcElement onec = one.clipped(8);
  double w1 = 0.0;
  for (const auto& [k, c] : onec.coeffs()) w1 = std::max(w1, std::abs(c));
  CHECK(w1 < 1e-6);
}

TEST_CASE("power symbol: principal part is the scalar power for 1 + Delta") {
  auto theta = ThetaMatrix::make2(0.25);
  ClassicalSymbol lap = laplacian_symbol(theta);
  EllipticityData ell = ellipticity_data(lap.principal(), theta);
  Complex z(-0.7, 0.0);
  NumericSymbol ps = power_symbol(lap, z, 2, ell);
  CHECK(ps.order == doctest::Approx(2.0 * z.real()));
  REQUIRE(ps.components.size() == 3);
  Eigen::VectorXd xi(2);
  xi << 3.0, -2.0;
  // principal component at xi: (|xi|^2)^z * 1
  NcElement lead = ps.components[0].eval(xi);
  Complex want = std::pow(Complex(13.0, 0.0), z);
  CHECK(std::abs(lead.coeff({0, 0}) - want) < 1e-7 * std::abs(want));
  // for the flat Laplacian the lower-order power components vanish
  NcElement sub = ps.components[1].eval(xi);
  double m = 0.0;
  for (const auto& [k, c] : sub.coeffs()) m = std::max(m, std::abs(c));
  CHECK(m < 1e-7);
}

TEST_CASE("power symbol at z = 1 returns the symbol itself") {
  auto theta = ThetaMatrix::make2(0.25);
  ClassicalSymbol lap = laplacian_symbol(theta);
  EllipticityData ell = ellipticity_data(lap.principal(), theta);
  NumericSymbol ps = power_symbol(lap, Complex(1.0, 0.0), 1, ell);
  Eigen::VectorXd xi(2);
  xi << 2.0, 1.0;
  NcElement lead = ps.components[0].eval(xi);
  CHECK(std::abs(lead.coeff({0, 0}) - Complex(5.0, 0.0)) < 1e-7);
}

TEST_CASE("power symbol refuses a non-positive spectral cloud") {
  auto theta = ThetaMatrix::make2(0.25);
  // -Delta: negative definite principal symbol
  ClassicalSymbol lap = laplacian_symbol(theta);
  HomogeneousSymbol h{sym_scale(Complex(-1.0, 0.0), lap.principal().expr), 2.0, 0.0, 2.0};
  ClassicalSymbol neg(theta, 2.0, {h});
  EllipticityData ell = ellipticity_data(neg.principal(), theta);
  CHECK_THROWS_AS(power_symbol(neg, Complex(0.5, 0.0), 1, ell), DomainError);
}

TEST_CASE("absolute value of a self-adjoint operator") {
  auto theta = ThetaMatrix::make2(0.25);
  // P = quantize(xi_1 + xi_2): diagonal with entries k1 + k2, sign-indefinite
  HomogeneousSymbol h{sym_sum({sym_xi({1, 0}), sym_xi({0, 1})}), 1.0, 0.0, 1.0};
  ClassicalSymbol sym(theta, 1.0, {h});
  TruncatedOperator P = quantize(sym, 4);
  AbsValueResult abs_res = abs_value(P, sym);
  LatticeBox box(2, 4);
  for (int i = 0; i < box.dim(); ++i) {
    auto k = box.point(i);
    double want = std::abs(double(k[0] + k[1]));
    CHECK(std::abs(abs_res.op.matrix()(i, i) - want) < 1e-8);
  }
  // principal symbol closure: |xi_1 + xi_2| at a scalar point
  Eigen::VectorXd xi(2);
  xi << 1.0, -3.0;
  NcElement p = abs_res.principal(xi);
  CHECK(std::abs(p.coeff({0, 0}) - Complex(2.0, 0.0)) < 1e-7);
}
