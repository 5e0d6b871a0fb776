#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>
#include <qsoliton/expr.hpp>

using namespace qsoliton;

TEST_CASE("arithmetic and precedence") {
  Expression e("2 + 3*4^2", 1);
  CHECK(e(std::vector<double>{0.0}) == 50.0);
  CHECK(Expression("-x1^2", 1)(std::vector<double>{2.0}) == -4.0);
  CHECK(Expression("(1+2)*(3-5)/4", 1)(std::vector<double>{0.0}) == -1.5);
  CHECK(Expression("2^-2", 1)(std::vector<double>{0.0}) == 0.25);
}

TEST_CASE("functions and constants") {
  std::vector<double> p{0.3, -0.7};
  Expression e("exp(x1)*sin(x2) + x1^3/(1 + x2^2)", 2);
  double expect =
      std::exp(0.3) * std::sin(-0.7) + std::pow(0.3, 3) / (1 + 0.49);
  CHECK_THAT(e(p), Catch::Matchers::WithinAbs(expect, 1e-14));
  CHECK_THAT(Expression("pi", 1)(std::vector<double>{0.0}),
             Catch::Matchers::WithinAbs(std::numbers::pi, 1e-15));
  CHECK_THAT(Expression("pow(x1, 0.5)", 1)(std::vector<double>{2.0}),
             Catch::Matchers::WithinAbs(std::sqrt(2.0), 1e-15));
  CHECK_THAT(Expression("sinh(x1)*cosh(x1)", 1)(std::vector<double>{0.4}),
             Catch::Matchers::WithinAbs(std::sinh(0.4) * std::cosh(0.4),
                                        1e-14));
  CHECK_THAT(Expression("log(sqrt(x1))", 1)(std::vector<double>{4.0}),
             Catch::Matchers::WithinAbs(std::log(2.0), 1e-14));
}

TEST_CASE("jet evaluation matches hand derivatives") {
  Expression e("4/(1 + x1^2 + x2^2)^2", 2);
  std::vector<double> p{0.2, -0.5};
  auto x = seed_point(p, 2);
  Jet j = e(x);
  double w = 1 + 0.04 + 0.25;
  CHECK_THAT(j.value(), Catch::Matchers::WithinAbs(4.0 / (w * w), 1e-14));
  // d/dx1 of 4 w^-2 = -16 x1 w^-3
  CHECK_THAT(j.partial(0),
             Catch::Matchers::WithinAbs(-16.0 * 0.2 / (w * w * w), 1e-13));
  // d2/dx1dx2 = 96 x1 x2 w^-4
  CHECK_THAT(j.partial(0, 1),
             Catch::Matchers::WithinAbs(96.0 * 0.2 * -0.5 / (w * w * w * w),
                                        1e-12));
}

TEST_CASE("integer powers survive zero base in jets") {
  Expression e("x1^2 + x2^4", 2);
  auto x = seed_point(std::vector<double>{0.0, 0.0}, 4);
  Jet j = e(x);
  CHECK(j.value() == 0.0);
  CHECK(j.partial(0, 0) == 2.0);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(Expression("x1 +", 1), parse_error);
  CHECK_THROWS_AS(Expression("foo(x1)", 1), parse_error);
  CHECK_THROWS_AS(Expression("x3", 2), parse_error);
  CHECK_THROWS_AS(Expression("x1^x1", 1), parse_error);
  CHECK_THROWS_AS(Expression("(1+2", 1), parse_error);
  CHECK_THROWS_AS(Expression("1 2", 1), parse_error);
  CHECK_THROWS_AS(Expression("pow(x1, x1)", 1), parse_error);
}

TEST_CASE("constant roundtrip") {
  Expression c = Expression::constant(0.125, 3);
  CHECK(c(std::vector<double>{1.0, 2.0, 3.0}) == 0.125);
  CHECK(c.dim() == 3);
}
