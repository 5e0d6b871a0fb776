#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <qsoliton/examples.hpp>
#include <qsoliton/soliton.hpp>

using namespace qsoliton;

namespace {

CheckReport run_check(const std::string& name, const SolitonData& s,
                      const CheckOptions& o) {
  if (name == "soliton_residual") return soliton_residual(s, o);
  if (name == "hamilton_scalar") return hamilton_scalar(s, o).second;
  if (name == "hamilton_tensor") return hamilton_tensor(s, o);
  if (name == "f_lambda")
    return F_Lambda_check(s, s.Lambda.value_or(s.lambda), o);
  if (name == "laplacian_trace") return laplacian_trace_check(s, o);
  if (name == "rigidity") return rigidity_check(s, o);
  if (name == "trace_bounds") return trace_bounds_check(s, o);
  if (name == "flatness") return flatness_hypotheses(s, o);
  if (name == "compact_identity") return compact_integral_identity(s, o);
  if (name == "evolution") return evolution_identities(s, o);
  throw std::invalid_argument("unknown check " + name);
}

const std::vector<std::string> kPointwiseChecks = {
    "soliton_residual", "hamilton_scalar", "hamilton_tensor",
    "f_lambda",         "laplacian_trace", "rigidity",
    "trace_bounds",     "flatness",        "compact_identity",
    "evolution"};

void expect_table(const Example& e, int samples = 64) {
  CheckOptions o;
  o.samples = samples;
  for (const auto& name : kPointwiseChecks) {
    CheckOptions oc = o;
    if (name == "evolution") oc.samples = std::min(samples, 24);
    CheckReport r = run_check(name, e.soliton, oc);
    INFO(e.name << " / " << name << ": residual_max=" << r.residual_max
                << " notes=" << r.notes);
    CHECK(to_string(r.verdict) == to_string(e.expected.at(name)));
  }
}

}  // namespace

TEST_CASE("sphere quadratures integrate the volume") {
  const double pi = std::numbers::pi;
  double a = std::sqrt(2.0);
  CompactInfo s2 = example_detail::sphere2_quadrature(a);
  CHECK(s2.total_volume == Catch::Approx(4.0 * pi * a * a).epsilon(1e-10));
  double b = 1.3;
  CompactInfo s4 = example_detail::sphere4_quadrature(b);
  CHECK(s4.total_volume ==
        Catch::Approx(8.0 * pi * pi / 3.0 * std::pow(b, 4)).epsilon(1e-8));
}

TEST_CASE("gaussian verdict table") {
  Example e = gaussian(3, 0.7);
  expect_table(e);
  auto [h, rep] = hamilton_scalar(e.soliton);
  CHECK(std::abs(rep.constants.at("C")) < 1e-10);
}

TEST_CASE("gaussian with omori rate has full table") {
  Example e = gaussian(2, 0.5);
  CHECK(e.expected.at("omori") == Verdict::pass);
  expect_table(e, 48);
}

TEST_CASE("gaussian negative control: wrong lambda fails the equation") {
  Example e = gaussian(3, 0.7);
  e.soliton.lambda = 0.9;
  CheckReport r = soliton_residual(e.soliton);
  CHECK(r.verdict == Verdict::fail);
  // residual is |(0.7-0.9) g| = 0.2 sqrt(3) pointwise
  CHECK(r.residual_max == Catch::Approx(0.2 * std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("cylinder shrinker verdict table and constants") {
  Example e = cylinder_shrinker(2);
  expect_table(e);
  auto [h, rep] = hamilton_scalar(e.soliton);
  CHECK(std::abs(rep.constants.at("C")) < 1e-8);
  CheckReport rg = rigidity_check(e.soliton);
  CHECK(std::abs(rg.constants.at("c")) < 1e-8);
  CheckReport tb = trace_bounds_check(e.soliton);
  CHECK(tb.constants.at("tr_q") == Catch::Approx(-2.0).margin(1e-8));
  CHECK(tb.notes == "interior");
  CheckReport ev = evolution_identities(e.soliton, {.samples = 24});
  CHECK(ev.constants.at("reduction_sign") == 1.0);
}

TEST_CASE("cylinder wrong Lambda fails the first-order condition") {
  Example e = cylinder_shrinker(2);
  CheckReport r = F_Lambda_check(e.soliton, 0.25);
  CHECK(r.verdict == Verdict::fail);
  CHECK(r.notes.find("agree") != std::string::npos);
}

TEST_CASE("round sphere S^2 verdict table") {
  Example e = round_sphere(2, std::sqrt(2.0));
  CHECK(e.soliton.lambda == Catch::Approx(0.5));
  expect_table(e);
  auto [h, rep] = hamilton_scalar(e.soliton);
  // C = R = n(n-1)/a^2 = 1
  CHECK(rep.constants.at("C") == Catch::Approx(1.0).margin(1e-9));
  CheckReport tb = trace_bounds_check(e.soliton);
  CHECK(tb.notes.find("Einstein extreme") != std::string::npos);
}

TEST_CASE("round sphere S^4 equation and compact identity") {
  Example e = round_sphere(4, std::sqrt(6.0));
  CHECK(e.soliton.lambda == Catch::Approx(0.5));
  CheckOptions o;
  o.samples = 32;
  CHECK(soliton_residual(e.soliton, o).verdict == Verdict::pass);
  CHECK(hamilton_tensor(e.soliton, o).verdict == Verdict::pass);
  CheckReport ci = compact_integral_identity(e.soliton, o);
  CHECK(ci.verdict == Verdict::pass);
  CHECK(ci.notes.find("stationary") != std::string::npos);
}

TEST_CASE("compact negative control: height function on S^2") {
  const double a = std::sqrt(2.0);
  Example e = round_sphere(2, a);
  // f = x3 coordinate of the embedding, not a soliton potential
  std::ostringstream os;
  os.precision(17);
  os << a << "*(x1^2 + x2^2 - 1)/(1 + x1^2 + x2^2)";
  e.soliton.f = ScalarField::from_expression(Expression(os.str(), 2), "f");
  CheckReport ci = compact_integral_identity(e.soliton);
  CHECK(ci.verdict == Verdict::fail);
  // int |Hess f|^2 = 8 pi / 3 independently of the radius
  CHECK(ci.constants.at("integral_hess_f_sq") ==
        Catch::Approx(8.0 * std::numbers::pi / 3.0).epsilon(1e-8));
  CHECK(soliton_residual(e.soliton).verdict == Verdict::fail);
}

TEST_CASE("bach product verdict table and residual size") {
  Example e = bach_product(1);
  expect_table(e, 32);
  // Hamilton tensor residual is |B(grad f)| = c^2 |grad f| with c^2 = 1/6
  CheckOptions o;
  o.samples = 32;
  CheckReport ht = hamilton_tensor(e.soliton, o);
  CHECK(ht.verdict == Verdict::fail);
  double gf_max = 0.0;
  for (const Vec& p : e.chart->sample_points(o.samples, o.seed)) {
    Geometry geom(*e.chart, p, 1);
    Vec gf = gradient_raised(geom, e.soliton.f.jet(p, 1));
    gf_max = std::max(gf_max, g_norm(geom.g0(), gf));
  }
  CHECK(ht.residual_max == Catch::Approx(gf_max / 6.0).epsilon(1e-4));
  CheckReport rg = rigidity_check(e.soliton, o);
  CHECK(rg.verdict == Verdict::pass);
  CHECK(rg.constants.at("c") == Catch::Approx(1.0 / 6.0).epsilon(1e-5));
}

TEST_CASE("bach product over the hyperbolic factor") {
  Example e = bach_product(-1);
  CheckOptions o;
  o.samples = 24;
  CHECK(soliton_residual(e.soliton, o).verdict == Verdict::pass);
  CHECK(F_Lambda_check(e.soliton, 1.0 / 6.0, o).verdict == Verdict::pass);
}

TEST_CASE("rigid factory verdict table and Hamilton constant") {
  Example e = rigid_factory(std::sqrt(2.0), 2, 0.5, {1.0, 0.0}, 1.0);
  expect_table(e);
  auto [h, rep] = hamilton_scalar(e.soliton);
  // C = |L|^2 + 2 Lambda - 2 Lambda b = 1 + 1 - 1
  CHECK(rep.constants.at("C") == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("rigid factory with non-default rate") {
  Example e = rigid_factory(1.0, 1, 0.25, {0.5}, 0.0);
  CHECK(e.expected.at("omori") == Verdict::inapplicable);
  CheckOptions o;
  o.samples = 48;
  CHECK(soliton_residual(e.soliton, o).verdict == Verdict::pass);
  CHECK(hamilton_tensor(e.soliton, o).verdict == Verdict::pass);
  CheckReport tb = trace_bounds_check(e.soliton, o);
  CHECK(tb.verdict == Verdict::pass);
  // tr q = -4 Lambda = -1, interior of [-2 lambda n, 0] = [-1.5, 0]
  CHECK(tb.constants.at("tr_q") == Catch::Approx(-1.0).margin(1e-8));
}

TEST_CASE("hyperbolic expander verdict table") {
  Example e = hyperbolic_expander(3);
  CHECK(e.soliton.lambda == Catch::Approx(-2.0));
  expect_table(e);
  CheckReport tb = trace_bounds_check(e.soliton);
  CHECK(tb.notes.find("Einstein extreme") != std::string::npos);
  CHECK(tb.constants.at("tr_q") == Catch::Approx(12.0).margin(1e-8));
}

TEST_CASE("check reports are deterministic") {
  Example e1 = cylinder_shrinker(2);
  Example e2 = cylinder_shrinker(2);
  CheckOptions o;
  o.samples = 40;
  o.seed = 3;
  std::string a = hamilton_scalar(e1.soliton, o).second.to_json().dump();
  std::string b = hamilton_scalar(e2.soliton, o).second.to_json().dump();
  CHECK(a == b);
}

TEST_CASE("build_example dispatch") {
  for (const std::string& name : example_names()) {
    Example e = build_example(name);
    CHECK(e.chart != nullptr);
    CHECK(e.soliton.chart == e.chart.get());
    CHECK(!e.expected.empty());
  }
  CHECK_THROWS_AS(build_example("nope"), std::invalid_argument);
}
