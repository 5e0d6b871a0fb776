#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <qsoliton/jet.hpp>

using namespace qsoliton;

TEST_CASE("layout sizes") {
  CHECK(JetLayout::get(1, 3).size() == 4);
  CHECK(JetLayout::get(2, 2).size() == 6);
  CHECK(JetLayout::get(3, 2).size() == 10);
  CHECK(JetLayout::get(4, 6).size() == 210);  // C(10,4)
  CHECK_THROWS_AS(JetLayout::get(5, 2), std::invalid_argument);
  CHECK_THROWS_AS(JetLayout::get(2, 7), std::invalid_argument);
}

TEST_CASE("seed point gives coordinate jets") {
  std::vector<double> p{0.3, -0.4, 1.2};
  auto x = seed_point(p, 2);
  for (int i = 0; i < 3; ++i) {
    CHECK(x[i].value() == p[i]);
    for (int j = 0; j < 3; ++j)
      CHECK(x[i].partial(j) == (i == j ? 1.0 : 0.0));
    CHECK(x[i].partial(i, i) == 0.0);
  }
}

TEST_CASE("all partials of exp(x)*sin(y) up to order 4") {
  const double px = 0.3, py = -0.4;
  auto x = seed_point(std::vector<double>{px, py}, 4);
  Jet f = exp(x[0]) * sin(x[1]);
  const double e = std::exp(px);
  const double cyc[4] = {std::sin(py), std::cos(py), -std::sin(py),
                         -std::cos(py)};
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      MultiIndex m{std::uint8_t(a), std::uint8_t(b), 0, 0};
      double expect = e * cyc[b % 4];
      CHECK_THAT(f.partial(m), Catch::Matchers::WithinAbs(expect, 1e-12));
    }
}

TEST_CASE("functional identities hold coefficientwise") {
  auto x = seed_point(std::vector<double>{0.7, 0.2}, 5);
  Jet u = 0.9 + x[0] * x[0] + 0.5 * x[1] + x[0] * x[1] * x[1];

  auto check_equal = [](const Jet& a, const Jet& b, double tol) {
    REQUIRE(a.order() == b.order());
    for (int i = 0; i < a.layout().size(); ++i)
      CHECK_THAT(a.coeff(i), Catch::Matchers::WithinAbs(b.coeff(i), tol));
  };
  auto check_const = [](const Jet& a, double v, double tol) {
    CHECK_THAT(a.value(), Catch::Matchers::WithinAbs(v, tol));
    for (int i = 1; i < a.layout().size(); ++i)
      CHECK_THAT(a.coeff(i), Catch::Matchers::WithinAbs(0.0, tol));
  };

  check_const(sin(u) * sin(u) + cos(u) * cos(u), 1.0, 1e-13);
  check_const(cosh(u) * cosh(u) - sinh(u) * sinh(u), 1.0, 1e-12);
  check_const(u * reciprocal(u), 1.0, 1e-13);
  check_equal(log(exp(u)), u, 1e-12);
  check_equal(sqrt(u) * sqrt(u), u, 1e-13);
  check_equal(powi(u, 3), u * u * u, 1e-12);
  check_equal(pow(u, 3.0), u * u * u, 1e-11);
  check_equal(exp(log(u)), u, 1e-13);
}

TEST_CASE("powi is valid at zero base") {
  auto x = seed_point(std::vector<double>{0.0}, 3);
  Jet f = powi(x[0], 2);
  CHECK(f.value() == 0.0);
  CHECK(f.partial(0) == 0.0);
  CHECK(f.partial(0, 0) == 2.0);
}

TEST_CASE("derivative lowers order and matches analytic") {
  auto x = seed_point(std::vector<double>{0.3, -0.4}, 4);
  Jet f = exp(x[0]) * sin(x[1]);
  Jet fx = f.derivative(0);  // equals f at one order lower
  CHECK(fx.order() == 3);
  Jet expect = f.truncated(3);
  for (int i = 0; i < fx.layout().size(); ++i)
    CHECK_THAT(fx.coeff(i),
               Catch::Matchers::WithinAbs(expect.coeff(i), 1e-12));
  Jet fy = f.derivative(1);
  auto x3 = seed_point(std::vector<double>{0.3, -0.4}, 3);
  Jet expect_y = exp(x3[0]) * cos(x3[1]);
  for (int i = 0; i < fy.layout().size(); ++i)
    CHECK_THAT(fy.coeff(i),
               Catch::Matchers::WithinAbs(expect_y.coeff(i), 1e-12));
}

TEST_CASE("mixed-order arithmetic truncates") {
  auto x4 = seed_point(std::vector<double>{0.5}, 4);
  auto x2 = seed_point(std::vector<double>{0.5}, 2);
  Jet a = exp(x4[0]);
  Jet b = sin(x2[0]);
  Jet p = a * b;
  CHECK(p.order() == 2);
  Jet expect = exp(x2[0]) * sin(x2[0]);
  for (int i = 0; i < p.layout().size(); ++i)
    CHECK_THAT(p.coeff(i), Catch::Matchers::WithinAbs(expect.coeff(i), 1e-13));
}

TEST_CASE("domain errors") {
  auto x = seed_point(std::vector<double>{0.0, 1.0}, 2);
  CHECK_THROWS_AS(log(x[0]), std::domain_error);
  CHECK_THROWS_AS(sqrt(x[0] - 1.0), std::domain_error);
  CHECK_THROWS_AS(reciprocal(x[0]), std::domain_error);
}
