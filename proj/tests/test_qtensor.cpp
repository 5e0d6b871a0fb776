#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <qsoliton/qtensor.hpp>
#include <sstream>

using namespace qsoliton;

namespace {

Expression conformal_expr(double c2, int dim) {
  std::ostringstream os;
  os.precision(17);
  os << (4.0 * c2) << "/(1";
  for (int i = 1; i <= dim; ++i) os << " + x" << i << "^2";
  os << ")^2";
  return Expression(os.str(), dim);
}

Chart flat_chart(int dim) {
  Grid2<Expression> entries(dim, Expression());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      entries.at(i, j) = Expression::constant(i == j ? 1.0 : 0.0, dim);
  Box box{Vec(dim, -2.0), Vec(dim, 2.0)};
  return Chart::from_expressions(dim, "flat", box, entries);
}

// Round S^4 of radius a, stereographic (conformally flat, Einstein).
Chart round_s4(double a) {
  Grid2<Expression> entries(4, Expression());
  Expression conf = conformal_expr(a * a, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      entries.at(i, j) =
          (i == j) ? conf : Expression::constant(0.0, 4);
  Box box{Vec(4, -0.8), Vec(4, 0.8)};
  return Chart::from_expressions(4, "s4", box, entries);
}

// S^2(a) x R^2, sphere coordinates first.
Chart sphere_product(double a) {
  Grid2<Expression> entries(4, Expression());
  std::ostringstream os;
  os.precision(17);
  os << (4.0 * a * a) << "/(1 + x1^2 + x2^2)^2";
  Expression conf(os.str(), 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i != j)
        entries.at(i, j) = Expression::constant(0.0, 4);
      else
        entries.at(i, j) = i < 2 ? conf : Expression::constant(1.0, 4);
    }
  Box box{Vec{-0.8, -0.8, -2.0, -2.0}, Vec{0.8, 0.8, 2.0, 2.0}};
  return Chart::from_expressions(4, "s2xr2", box, entries);
}

Chart bumpy_chart() {
  Grid2<Expression> entries(3, Expression());
  entries.at(0, 0) = Expression("exp(0.3*x2)", 3);
  entries.at(1, 1) = Expression("1 + 0.5*x1^2 + 0.2*x3^2", 3);
  entries.at(2, 2) = Expression("2 + 0.3*sin(x1)", 3);
  entries.at(0, 1) = Expression("0.1*x3", 3);
  entries.at(1, 0) = entries.at(0, 1);
  entries.at(0, 2) = Expression::constant(0.0, 3);
  entries.at(2, 0) = entries.at(0, 2);
  entries.at(1, 2) = Expression("0.05*x1*x2", 3);
  entries.at(2, 1) = entries.at(1, 2);
  Box box{Vec(3, -0.5), Vec(3, 0.5)};
  return Chart::from_expressions(3, "bumpy", box, entries);
}

}  // namespace

TEST_CASE("weyl vanishes in conformally flat dimension <= 3 and on spheres") {
  Chart c = bumpy_chart();
  for (const Vec& p : c.sample_points(4, 1)) {
    Geometry geom(c, p, 2);
    auto w = weyl_jets(geom);
    for (const Jet& j : w.v)
      CHECK_THAT(j.value(), Catch::Matchers::WithinAbs(0.0, 1e-9));
  }
  Chart s4 = round_s4(1.0);
  Geometry geom(s4, Vec{0.2, -0.1, 0.3, 0.05}, 2);
  auto w = weyl_jets(geom);
  for (const Jet& j : w.v)
    CHECK_THAT(j.value(), Catch::Matchers::WithinAbs(0.0, 1e-8));
}

TEST_CASE("bach vanishes on flat space and on the round four-sphere") {
  Chart f4 = flat_chart(4);
  auto b0 = bach_tensor(f4, Vec{0.3, -0.5, 1.0, 0.2});
  for (double v : b0.v) CHECK_THAT(v, Catch::Matchers::WithinAbs(0.0, 1e-12));

  Chart s4 = round_s4(1.3);
  for (const Vec& p : s4.sample_points(3, 2)) {
    auto b = bach_tensor(s4, p);
    for (double v : b.v) CHECK_THAT(v, Catch::Matchers::WithinAbs(0.0, 1e-6));
  }
}

TEST_CASE("bach on S^2 x R^2 has the block form -c^2 g_N + c^2 g_F") {
  Chart c = sphere_product(1.0);
  const double c2 = 1.0 / 6.0;  // k^2/6 for sectional curvature k = 1
  for (const Vec& p : c.sample_points(4, 3)) {
    auto b = bach_tensor(c, p);
    auto g = c.metric(p);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double expect = (i < 2 && j < 2) ? -c2 * g.at(i, j)
                        : (i >= 2 && j >= 2) ? c2 * g.at(i, j)
                                             : 0.0;
        CHECK_THAT(b.at(i, j), Catch::Matchers::WithinAbs(expect, 1e-7));
      }
  }
}

TEST_CASE("bach cross-checks against finite-difference jets") {
  const double a = 1.0;
  auto conf = [a](const Vec& p) {
    double w = 1 + p[0] * p[0] + p[1] * p[1];
    return 4.0 * a * a / (w * w);
  };
  auto one = [](const Vec&) { return 1.0; };
  auto zero = [](const Vec&) { return 0.0; };
  std::vector<std::function<double(const Vec&)>> entries;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      if (i != j)
        entries.push_back(zero);
      else
        entries.push_back(i < 2 ? std::function<double(const Vec&)>(conf)
                                : std::function<double(const Vec&)>(one));
    }
  Chart fd = Chart::from_pointwise(
      4, "s2xr2-fd", Box{Vec{-0.8, -0.8, -2.0, -2.0}, Vec{0.8, 0.8, 2.0, 2.0}},
      entries);
  Chart exact = sphere_product(a);
  Vec p{0.2, -0.3, 0.4, 0.1};
  auto be = bach_tensor(exact, p);
  auto bf = bach_tensor(fd, p);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK_THAT(bf.at(i, j),
                 Catch::Matchers::WithinAbs(be.at(i, j), 2e-3));
}

TEST_CASE("ricci q satisfies its algebraic identities") {
  Chart c = bumpy_chart();
  QFields qf = instantiate(QSpec::ricci(), c);
  for (const Vec& p : c.sample_points(8, 4)) {
    Geometry geom(c, p, 2);
    double R = geom.scalar().value();
    CHECK_THAT(qf.trace.value(p), Catch::Matchers::WithinAbs(-2.0 * R, 1e-10));
    Grid2<double> ric(3, 0.0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) ric.at(i, j) = geom.ricci().at(i, j).value();
    double ric2 = inner_02(geom.ginv0(), ric, ric);
    CHECK_THAT(qf.norm2.value(p),
               Catch::Matchers::WithinAbs(4.0 * ric2, 1e-10));
    auto q = qf.q.components(p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK_THAT(q.at(i, j),
                   Catch::Matchers::WithinAbs(-2.0 * ric.at(i, j), 1e-12));
  }
}

TEST_CASE("bourguignon with rho=0 equals ricci") {
  Chart c = bumpy_chart();
  QFields qr = instantiate(QSpec::ricci(), c);
  QFields qb = instantiate(QSpec::bourguignon(0.0), c);
  for (const Vec& p : c.sample_points(6, 5)) {
    auto a = qr.q.components(p);
    auto b = qb.q.components(p);
    for (int i = 0; i < 9; ++i)
      CHECK_THAT(a.v[i], Catch::Matchers::WithinAbs(b.v[i], 1e-12));
  }
}

TEST_CASE("bourguignon subtracts rho R g") {
  Chart c = bumpy_chart();
  const double rho = 0.25;
  QFields qb = instantiate(QSpec::bourguignon(rho), c);
  QFields qr = instantiate(QSpec::ricci(), c);
  Vec p{0.1, -0.2, 0.3};
  Geometry geom(c, p, 2);
  double R = geom.scalar().value();
  auto g = geom.g0();
  auto a = qb.q.components(p);
  auto b = qr.q.components(p);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK_THAT(a.at(i, j),
                 Catch::Matchers::WithinAbs(
                     b.at(i, j) + 2.0 * rho * R * g.at(i, j), 1e-12));
}

TEST_CASE("bach q is trace-free and rejects wrong dimensions") {
  Chart c = sphere_product(1.0);
  QFields qf = instantiate(QSpec::bach(), c);
  for (const Vec& p : c.sample_points(4, 6))
    CHECK_THAT(qf.trace.value(p), Catch::Matchers::WithinAbs(0.0, 1e-8));
  Chart f3 = flat_chart(3);
  CHECK_THROWS_AS(instantiate(QSpec::bach(), f3), std::invalid_argument);
}

TEST_CASE("zero and custom q") {
  Chart c = flat_chart(2);
  QFields qz = instantiate(QSpec::zero(), c);
  Vec p{0.4, -0.9};
  CHECK(qz.trace.value(p) == 0.0);
  CHECK(qz.norm2.value(p) == 0.0);

  Grid2<Expression> entries(2, Expression());
  entries.at(0, 0) = Expression("x1*x2", 2);
  entries.at(1, 1) = Expression("1 + x1^2", 2);
  entries.at(0, 1) = Expression::constant(0.5, 2);
  entries.at(1, 0) = entries.at(0, 1);
  QFields qc = instantiate(QSpec::custom(entries), c);
  auto q = qc.q.components(p);
  CHECK_THAT(q.at(0, 0), Catch::Matchers::WithinAbs(p[0] * p[1], 1e-14));
  CHECK_THAT(q.at(1, 1), Catch::Matchers::WithinAbs(1 + p[0] * p[0], 1e-14));
  CHECK(q.at(0, 1) == 0.5);
  CHECK_THAT(qc.trace.value(p),
             Catch::Matchers::WithinAbs(p[0] * p[1] + 1 + p[0] * p[0], 1e-13));
}

TEST_CASE("q of gradient is the raised contraction") {
  Chart c = bumpy_chart();
  QFields qf = instantiate(QSpec::ricci(), c);
  ScalarField f =
      ScalarField::from_expression(Expression("x1^2 + 0.5*x2*x3", 3), "f");
  Vec p{0.2, 0.1, -0.3};
  Geometry geom(c, p, 2);
  Vec qgf = q_of_gradient(geom, qf.q.jets(p, 0), f.jet(p, 1));
  // independent contraction with plain loops
  auto ginv = geom.ginv0();
  auto q = qf.q.components(p);
  Vec df = f.partials(p);
  Vec expect(3, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
          expect[i] += ginv.at(i, k) * q.at(k, j) * ginv.at(j, l) * df[l];
  for (int i = 0; i < 3; ++i)
    CHECK_THAT(qgf[i], Catch::Matchers::WithinAbs(expect[i], 1e-12));
}

TEST_CASE("qspec descriptions") {
  CHECK(QSpec::zero().describe() == "zero");
  CHECK(QSpec::ricci().describe() == "ricci");
  CHECK(QSpec::bourguignon(0.25).describe() == "bourguignon rho=0.25");
  CHECK(QSpec::bach().describe() == "bach");
}
