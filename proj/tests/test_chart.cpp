#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <qsoliton/chart.hpp>
#include <sstream>

using namespace qsoliton;

namespace {

// Stereographic chart of the round 2-sphere of radius a.
Chart sphere_chart(double a) {
  std::ostringstream os;
  os.precision(17);
  os << (4.0 * a * a) << "/(1 + x1^2 + x2^2)^2";
  Grid2<Expression> entries(2, Expression());
  entries.at(0, 0) = Expression(os.str(), 2);
  entries.at(1, 1) = entries.at(0, 0);
  entries.at(0, 1) = Expression::constant(0.0, 2);
  entries.at(1, 0) = entries.at(0, 1);
  Box box{{-0.9, -0.9}, {0.9, 0.9}};
  return Chart::from_expressions(2, "sphere", box, entries);
}

double sphere_entry(double a, const Vec& p) {
  double w = 1 + p[0] * p[0] + p[1] * p[1];
  return 4.0 * a * a / (w * w);
}

}  // namespace

TEST_CASE("metric evaluation and symmetry") {
  Chart c = sphere_chart(1.5);
  Vec p{0.2, -0.3};
  auto g = c.metric(p);
  CHECK_THAT(g.at(0, 0),
             Catch::Matchers::WithinAbs(sphere_entry(1.5, p), 1e-14));
  CHECK(g.at(0, 1) == g.at(1, 0));
  CHECK(g.at(0, 1) == 0.0);
}

TEST_CASE("domain enforcement") {
  Chart c = sphere_chart(1.0);
  CHECK(c.in_domain(Vec{0.0, 0.0}));
  CHECK_FALSE(c.in_domain(Vec{1.5, 0.0}));
  CHECK_THROWS_AS(c.metric(Vec{1.5, 0.0}), outside_domain);
  c.set_predicate([](const Vec& p) {
    return p[0] * p[0] + p[1] * p[1] <= 0.64;
  });
  CHECK_FALSE(c.in_domain(Vec{0.85, 0.0}));
  CHECK_THROWS_AS(c.metric(Vec{0.85, 0.0}), outside_domain);
}

TEST_CASE("non positive definite metric is a hard error") {
  Grid2<Expression> entries(2, Expression());
  entries.at(0, 0) = Expression("1 - x1^2", 2);
  entries.at(1, 1) = Expression::constant(1.0, 2);
  entries.at(0, 1) = Expression::constant(0.0, 2);
  entries.at(1, 0) = entries.at(0, 1);
  Box box{{-2.0, -2.0}, {2.0, 2.0}};
  Chart c = Chart::from_expressions(2, "bad", box, entries);
  CHECK_NOTHROW(c.metric(Vec{0.5, 0.0}));
  CHECK_THROWS_AS(c.metric(Vec{1.5, 0.0}), metric_not_pd);
}

TEST_CASE("sample points are deterministic and in-domain") {
  Chart c = sphere_chart(1.0);
  c.set_predicate([](const Vec& p) {
    return p[0] * p[0] + p[1] * p[1] <= 0.64;
  });
  auto s1 = c.sample_points(64, 7);
  auto s2 = c.sample_points(64, 7);
  auto s3 = c.sample_points(64, 8);
  REQUIRE(s1.size() == 64);
  CHECK(s1 == s2);
  CHECK(s1 != s3);
  for (const Vec& p : s1) CHECK(c.in_domain(p));
}

TEST_CASE("finite-difference jets track exact jets") {
  const double a = 1.3;
  Chart exact = sphere_chart(a);
  auto entry = [a](const Vec& p) { return sphere_entry(a, p); };
  auto zero = [](const Vec&) { return 0.0; };
  Box box{{-0.9, -0.9}, {0.9, 0.9}};
  Chart fd = Chart::from_pointwise(2, "sphere-fd", box, {entry, zero, entry});
  CHECK(fd.reduced_tolerance());
  CHECK_FALSE(exact.reduced_tolerance());

  Vec p{0.25, -0.4};
  auto ge = exact.metric_jets(p, 2);
  auto gf = fd.metric_jets(p, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < ge.at(i, j).layout().size(); ++k)
        CHECK_THAT(gf.at(i, j).coeff(k),
                   Catch::Matchers::WithinAbs(ge.at(i, j).coeff(k), 1e-3));
}

TEST_CASE("anchor defaults to box center and is settable") {
  Chart c = sphere_chart(1.0);
  CHECK(c.anchor() == Vec{0.0, 0.0});
  c.set_anchor(Vec{0.1, 0.2});
  CHECK(c.anchor() == Vec{0.1, 0.2});
}
