#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nct/parser.hpp"

using namespace nct;

namespace {

double max_coeff_diff(const NcElement& a, const NcElement& b) {
  NcElement d = a - b;
  double m = 0.0;
  for (const auto& [k, c] : d.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TEST_CASE("the Laplacian parses to the diagonal normal form") {
  auto theta = ThetaMatrix::make2(0.25);
  OperatorAst ast = parse_operator("d1^2 + d2^2", theta);
  REQUIRE(ast.normalized.terms.size() == 2);
  NcElement one = NcElement::monomial(theta, {0, 0});
  CHECK(max_coeff_diff(ast.normalized.terms.at({2, 0}), one) < 1e-15);
  CHECK(max_coeff_diff(ast.normalized.terms.at({0, 2}), one) < 1e-15);
  CHECK(ast.normalized.order() == 2);
}

TEST_CASE("Leibniz normalization: d1 * U1 = U1*d1 + U1") {
  auto theta = ThetaMatrix::make2(0.25);
  OperatorAst ast = parse_operator("d1 * U1", theta);
  NcElement u1 = NcElement::monomial(theta, {1, 0});
  REQUIRE(ast.normalized.terms.count({1, 0}) == 1);
  REQUIRE(ast.normalized.terms.count({0, 0}) == 1);
  CHECK(max_coeff_diff(ast.normalized.terms.at({1, 0}), u1) < 1e-15);
  CHECK(max_coeff_diff(ast.normalized.terms.at({0, 0}), u1) < 1e-15);

  // semantic check: apply to u = U2 and compare with delta_1(U1 U2)
  NcElement u = NcElement::monomial(theta, {0, 1});
  NcElement lhs = ast.normalized.apply(u);
  NcElement rhs = delta({1, 0}, mul(u1, u));
  CHECK(max_coeff_diff(lhs, rhs) < 1e-14);
}

TEST_CASE("negative generator exponents and scalar arithmetic") {
  auto theta = ThetaMatrix::make2(0.25);
  OperatorAst ast = parse_operator("U1 + U1^-1 + (2 - 3*i)*U2^2", theta);
  REQUIRE(ast.normalized.terms.count({0, 0}) == 1);
  NcElement a = ast.normalized.terms.at({0, 0});
  CHECK(std::abs(a.coeff({1, 0}) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(a.coeff({-1, 0}) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(a.coeff({0, 2}) - Complex(2.0, -3.0)) < 1e-15);
}

TEST_CASE("operator powers expand through Leibniz") {
  auto theta = ThetaMatrix::make2(0.5);
  // (U1*d1)^2 = U1^2*d1^2 + U1^2*d1
  OperatorAst ast = parse_operator("(U1*d1)^2", theta);
  NcElement u2 = NcElement::monomial(theta, {2, 0});
  CHECK(max_coeff_diff(ast.normalized.terms.at({2, 0}), u2) < 1e-14);
  CHECK(max_coeff_diff(ast.normalized.terms.at({1, 0}), u2) < 1e-14);
}

TEST_CASE("parse errors carry a position") {
  auto theta = ThetaMatrix::make2(0.25);
  CHECK_THROWS_AS(parse_operator("d1 + + ", theta), ParseError);
  CHECK_THROWS_AS(parse_operator("U3", theta), ParseError);    // index out of range
  CHECK_THROWS_AS(parse_operator("d1^-2", theta), ParseError); // negative derivation power
  CHECK_THROWS_AS(parse_operator("", theta), ParseError);
  try {
    parse_operator("d1 * # d2", theta);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position == 5);
  }
}

TEST_CASE("print and reparse round-trips the normal form") {
  auto theta = ThetaMatrix::make2(1.0 / 3.0);
  for (const char* src : {"d1^2 + d2^2 + U1*d1 + (1+2*i)*U2^-1", "(d1 + U1)*(d2 + U2^-2)",
                          "3.5*U1^2*U2^-1*d1*d2 - i*d2^3"}) {
    OperatorAst ast = parse_operator(src, theta);
    std::string printed = print_operator(ast);
    OperatorAst again = parse_operator(printed, theta);
    REQUIRE(ast.normalized.terms.size() == again.normalized.terms.size());
    for (const auto& [alpha, coeff] : ast.normalized.terms) {
      REQUIRE(again.normalized.terms.count(alpha) == 1);
      CHECK(max_coeff_diff(coeff, again.normalized.terms.at(alpha)) < 1e-13);
    }
    // canonical form is a fixed point of print
    CHECK(print_operator(again) == printed);
  }
}

TEST_CASE("zero operator prints as (0)") {
  auto theta = ThetaMatrix::make2(0.25);
  OperatorAst ast = parse_operator("U1 - U1", theta);
  CHECK(ast.normalized.terms.empty());
  CHECK(print_operator(ast) == "(0)");
}
