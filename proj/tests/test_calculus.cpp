#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nct/experiments.hpp"
#include "nct/resolvent.hpp"

using namespace nct;

TEST_CASE("sharp quantization equals operator composition (differential case)") {
  auto theta = ThetaMatrix::make2(0.25);
  DiffOp a = random_diffop(theta, 2, 2, 101);
  DiffOp b = random_diffop(theta, 2, 2, 102);
  ClassicalSymbol ra = diffop_symbol(a), rb = diffop_symbol(b);
  int J = int(ra.order() + rb.order());
  TruncatedOperator lhs = quantize(sharp(ra, rb, J), 8);
  TruncatedOperator rhs = compose(quantize(ra, 8), quantize(rb, 8));
  CHECK(interior_norm(lhs, rhs, 6) < 1e-10);
}

TEST_CASE("sharp is associative on quantizations") {
  auto theta = ThetaMatrix::make2(1.0 / std::sqrt(2.0));
  DiffOp a = random_diffop(theta, 1, 1, 103);
  DiffOp b = random_diffop(theta, 1, 1, 104);
  DiffOp c = random_diffop(theta, 1, 1, 105);
  ClassicalSymbol ra = diffop_symbol(a), rb = diffop_symbol(b), rc = diffop_symbol(c);
  ClassicalSymbol left = sharp(sharp(ra, rb, 2), rc, 3);
  ClassicalSymbol right = sharp(ra, sharp(rb, rc, 2), 3);
  CHECK(interior_norm(quantize(left, 7), quantize(right, 7), 5) < 1e-10);
}

TEST_CASE("star quantization equals the matrix adjoint") {
  auto theta = ThetaMatrix::make2(0.25);
  for (unsigned seed : {201u, 202u, 203u}) {
    DiffOp a = random_diffop(theta, 2, 2, seed);
    ClassicalSymbol ra = diffop_symbol(a);
    TruncatedOperator lhs = quantize(star(ra, int(ra.order())), 8);
    TruncatedOperator rhs = adjoint_op(quantize(ra, 8));
    CHECK(interior_norm(lhs, rhs, 6) < 1e-10);
  }
}

TEST_CASE("star is an involution up to expansion depth") {
  auto theta = ThetaMatrix::make2(0.25);
  DiffOp a = random_diffop(theta, 2, 2, 204);
  ClassicalSymbol ra = diffop_symbol(a);
  ClassicalSymbol rss = star(star(ra, 2), 2);
  CHECK(interior_norm(quantize(rss, 8), quantize(ra, 8), 6) < 1e-10);
}

TEST_CASE("ellipticity data for the flat Laplacian") {
  auto theta = ThetaMatrix::make2(0.25);
  ClassicalSymbol lap = laplacian_symbol(theta);
  EllipticityData ell = ellipticity_data(lap.principal(), theta);
  CHECK(ell.c == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ell.c_prime == doctest::Approx(1.0).epsilon(1e-10));
  // Theta(P) excludes a neighborhood of the positive real axis, keeps -1
  CHECK(contains(ell.theta_cone, Complex(-1.0, 0.0)));
  CHECK(contains(ell.theta_cone, Complex(0.0, 1.0)));
  CHECK(!contains(ell.theta_cone, Complex(1.0, 0.0)));
}

TEST_CASE("ellipticity refusal for a symbol vanishing on the sphere") {
  auto theta = ThetaMatrix::make2(0.25);
  // xi_1^2 alone vanishes at xi = (0, 1)
  HomogeneousSymbol h{sym_xi({2, 0}), 2.0, 0.0, 2.0};
  CHECK_THROWS_AS(ellipticity_data(h, theta), NotInvertibleError);
}

TEST_CASE("parametric parametrix of the Laplacian is exact at depth 0") {
  auto theta = ThetaMatrix::make2(0.25);
  ClassicalSymbol lap = laplacian_symbol(theta);
  auto res = parametrix_residuals(lap, 2, Complex(-10.0, 0.0), 6, 2);
  for (double r : res) CHECK(r < 1e-10);
}

TEST_CASE("parametrix symbol composes to 1 plus lower order (twisted coefficients)") {
  auto theta = ThetaMatrix::make2(0.25);
  // P = k Delta k with k = exp(h), h selfadjoint and small
  NcElement g = NcElement::generator(theta, 0);
  NcElement h = (g + adjoint(g)) * Complex(0.1);
  NcElement k = exp_series(h, 20, 3);
  DiffOp K = diffop_mult(k);
  DiffOp lap = diffop_zero(theta);
  for (int j = 0; j < 2; ++j) lap = lap + diffop_delta(theta, j) * diffop_delta(theta, j);
  DiffOp P = K * lap * K;
  ClassicalSymbol sym = diffop_symbol(P);
  CHECK(sym.order() == doctest::Approx(2.0));

  // residual of (P - lambda) Q_J on the truncation drops with J
  auto res = parametrix_residuals(sym, 3, Complex(-50.0, 0.0), 8, 4);
  CHECK(res[3] < res[0]);
}

TEST_CASE("homogeneity of differential and parametrix components") {
  auto theta = ThetaMatrix::make2(0.25);
  ClassicalSymbol lap = laplacian_symbol(theta);
  Eigen::VectorXd xi(2);
  xi << 0.8, -0.6;
  CHECK(homogeneity_defect(lap.principal(), theta, xi, std::nullopt, 3.0) < 1e-12);
  ClassicalSymbol sigma = parametric_parametrix(lap, 1);
  // sigma_{-2} is jointly homogeneous of degree -2 with lambda-weight 2
  CHECK(homogeneity_defect(sigma.component(0), theta, xi, Complex(-1.0, 0.5), 2.0) < 1e-10);
}
