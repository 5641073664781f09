#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nct/symbol.hpp"

using namespace nct;

namespace {

NcElement random_element(const ThetaPtr& theta, int support, int terms, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> ks(-support, support);
  NcElement::CoeffMap m;
  for (int t = 0; t < terms; ++t) {
    MultiIndex k(theta->n());
    for (int j = 0; j < theta->n(); ++j) k[j] = ks(rng);
    m[k] = Complex(u(rng), u(rng));
  }
  return NcElement(theta, std::move(m));
}

// random expression with no singular nodes (safe for finite differences)
ExprPtr random_expr(const ThetaPtr& theta, std::mt19937_64& rng, int depth = 2) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 1);
  switch (pick(rng)) {
    case 0: return sym_const(random_element(theta, 2, 3, rng));
    case 1: {
      std::uniform_int_distribution<int> b(0, 2);
      return sym_xi({b(rng), b(rng)});
    }
    case 2: return sym_sum({random_expr(theta, rng, depth - 1), random_expr(theta, rng, depth - 1)});
    case 3:
      return sym_prod({random_expr(theta, rng, depth - 1), random_expr(theta, rng, depth - 1)});
    default: return sym_prod({sym_bracket(), random_expr(theta, rng, depth - 1)});
  }
}

// 4th-order central difference stencil
NcElement fd_diff(const ExprPtr& e, const ThetaPtr& theta, Eigen::VectorXd xi, int j, double h) {
  auto at = [&](double s) {
    Eigen::VectorXd x = xi;
    x(j) += s;
    return eval(e, theta, x);
  };
  return (at(-2 * h) - at(2 * h)) * Complex(1.0 / (12 * h)) +
         (at(h) - at(-h)) * Complex(8.0 / (12 * h));
}

}  // namespace

TEST_CASE("diff_xi matches finite differences on random trees") {
  auto theta = ThetaMatrix::make2(0.25);
  std::mt19937_64 rng(21);
  Eigen::VectorXd xi(2);
  xi << 0.7, -1.3;
  for (int t = 0; t < 40; ++t) {
    ExprPtr e = random_expr(theta, rng);
    for (int j = 0; j < 2; ++j) {
      NcElement sym = eval(diff_xi(e, j), theta, xi);
      NcElement num = fd_diff(e, theta, xi, j, 1e-3);
      CHECK((sym - num).norm0() < 1e-8 * std::max(1.0, num.norm0()));
    }
  }
}

TEST_CASE("diff_xi: inverse rule at a safe point") {
  auto theta = ThetaMatrix::make2(0.25);
  std::mt19937_64 rng(22);
  Eigen::VectorXd xi(2);
  xi << 1.2, 0.4;
  // u = <xi>^2 + 3 is scalar, positive, invertible everywhere
  ExprPtr u = sym_sum({sym_prod({sym_bracket(), sym_bracket()}), sym_const(NcElement::scalar(theta, 3.0))});
  ExprPtr e = sym_inv(u);
  for (int j = 0; j < 2; ++j) {
    NcElement sym = eval(diff_xi(e, j), theta, xi);
    NcElement num = fd_diff(e, theta, xi, j, 1e-3);
    CHECK((sym - num).norm0() < 1e-8);
  }
}

TEST_CASE("bracket norm and its derivative") {
  auto theta = ThetaMatrix::make2(0.25);
  Eigen::VectorXd xi(2);
  xi << 3.0, 4.0;
  NcElement v = eval(sym_bracket(), theta, xi);
  CHECK(std::abs(v.trace() - std::sqrt(26.0)) < 1e-12);
  // d<xi>/dxi_1 = xi_1 / <xi>
  NcElement d = eval(diff_xi(sym_bracket(), 0), theta, xi);
  CHECK(std::abs(d.trace() - 3.0 / std::sqrt(26.0)) < 1e-12);
}

TEST_CASE("scalar powers: evaluation and chain rule") {
  auto theta = ThetaMatrix::make2(0.25);
  Eigen::VectorXd xi(2);
  xi << 1.0, 1.0;
  ExprPtr e = sym_pow(sym_bracket(), Complex(-1.5, 0.0));
  NcElement v = eval(e, theta, xi);
  CHECK(std::abs(v.trace() - std::pow(3.0, -0.75)) < 1e-12);
  NcElement d = eval(diff_xi(e, 0), theta, xi);
  NcElement num = fd_diff(e, theta, xi, 0, 1e-4);
  CHECK((d - num).norm0() < 1e-8);
  // non-scalar child is rejected
  CHECK_THROWS_AS(sym_pow(sym_const(NcElement::generator(theta, 0)), 0.5), ConfigError);
}

TEST_CASE("apply_delta is a derivation matching delta on evaluations") {
  auto theta = ThetaMatrix::make2(0.25);
  std::mt19937_64 rng(23);
  Eigen::VectorXd xi(2);
  xi << 0.9, -0.2;
  for (int t = 0; t < 40; ++t) {
    ExprPtr e = random_expr(theta, rng);
    for (int j = 0; j < 2; ++j) {
      NcElement lhs = eval(apply_delta(e, j), theta, xi);
      NcElement rhs = delta_j(j, eval(e, theta, xi));
      CHECK((lhs - rhs).norm0() < 1e-10 * std::max(1.0, rhs.norm0()));
    }
  }
}

TEST_CASE("apply_delta through an inverse node") {
  auto theta = ThetaMatrix::make2(0.25);
  Eigen::VectorXd xi(2);
  xi << 1.0, 2.0;
  // u = 2 + 0.3 (U_1 + U_1*) is selfadjoint, invertible
  NcElement g = NcElement::generator(theta, 0);
  NcElement a = NcElement::scalar(theta, 2.0) + (g + adjoint(g)) * Complex(0.3);
  ExprPtr e = sym_inv(sym_const(a));
  EvalPolicy pol;
  pol.invert_cutoff = 14;
  NcElement lhs = eval(apply_delta(e, 0), theta, xi, std::nullopt, pol);
  NcElement rhs = delta_j(0, eval(e, theta, xi, std::nullopt, pol));
  CHECK((lhs - rhs).norm0() < 1e-7);
}

TEST_CASE("star_expr matches pointwise adjoint for real xi") {
  auto theta = ThetaMatrix::make2(0.25);
  std::mt19937_64 rng(24);
  Eigen::VectorXd xi(2);
  xi << -0.4, 1.7;
  for (int t = 0; t < 40; ++t) {
    ExprPtr e = random_expr(theta, rng);
    NcElement lhs = eval(star_expr(e), theta, xi);
    NcElement rhs = adjoint(eval(e, theta, xi));
    CHECK((lhs - rhs).norm0() < 1e-10 * std::max(1.0, rhs.norm0()));
  }
}

TEST_CASE("builders normalize: zero collapse and flattening") {
  auto theta = ThetaMatrix::make2(0.25);
  CHECK(is_zero_expr(sym_zero()));
  CHECK(is_zero_expr(sym_prod({sym_bracket(), sym_zero()})));
  CHECK(is_zero_expr(sym_sum({sym_zero(), sym_zero()})));
  CHECK(is_scalar_expr(sym_pow(sym_bracket(), 2.0)));
  CHECK(!is_scalar_expr(sym_const(NcElement::generator(theta, 0))));
  CHECK(has_singular_nodes(sym_inv(sym_bracket())));
  CHECK(!has_singular_nodes(sym_pow(sym_bracket(), 2.0)));
  CHECK(has_singular_nodes(sym_pow(sym_bracket(), -1.0)));
}

TEST_CASE("lambda node requires a parameter") {
  auto theta = ThetaMatrix::make2(0.25);
  Eigen::VectorXd xi(2);
  xi << 1.0, 0.0;
  CHECK_THROWS(eval(sym_lambda(), theta, xi));
  NcElement v = eval(sym_lambda(), theta, xi, Complex(2.0, -1.0));
  CHECK(std::abs(v.trace() - Complex(2.0, -1.0)) < 1e-14);
}
