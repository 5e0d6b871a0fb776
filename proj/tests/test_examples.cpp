#include <catch2/catch_amalgamated.hpp>

#include <qsoliton/engine.hpp>

using namespace qsoliton;

namespace {

RunConfig fast_config() {
  RunConfig cfg;
  cfg.samples = 32;
  cfg.probes = 4;
  cfg.radii_count = 32;
  cfg.rmax = 12.0;
  return cfg;
}

void check_table(const Example& e, const RunConfig& cfg) {
  RunResult res = run_checks(e.soliton, cfg, e.expected);
  REQUIRE(res.reports.size() == all_check_names().size());
  for (const CheckReport& r : res.reports) {
    INFO(e.name << " / " << r.check << ": " << r.notes);
    CHECK(to_string(r.verdict) == to_string(e.expected.at(r.check)));
  }
  CHECK(res.matches());
}

}  // namespace

TEST_CASE("gaussian verdict table via the engine") {
  check_table(gaussian(2, 0.5), fast_config());
}

TEST_CASE("round sphere verdict table via the engine") {
  check_table(round_sphere(2, std::sqrt(2.0)), fast_config());
}

TEST_CASE("cylinder verdict table via the engine") {
  check_table(cylinder_shrinker(2), fast_config());
}

TEST_CASE("bach product verdict table via the engine") {
  RunConfig cfg = fast_config();
  cfg.probes = 6;  // traces capped by the sphere factor's injectivity
  check_table(bach_product(1), cfg);
}

TEST_CASE("rigid verdict table via the engine") {
  check_table(build_example("rigid_generic"), fast_config());
}

TEST_CASE("hyperbolic expander verdict table via the engine") {
  check_table(hyperbolic_expander(2), fast_config());
}

TEST_CASE("unknown check names are rejected before computation") {
  Example e = gaussian(2, 0.5);
  RunConfig cfg = fast_config();
  cfg.checks = {"soliton_residual", "bogus"};
  CHECK_THROWS_AS(run_checks(e.soliton, cfg), std::invalid_argument);
}

TEST_CASE("check subsets run only what was asked") {
  Example e = gaussian(2, 0.5);
  RunConfig cfg = fast_config();
  cfg.checks = {"soliton_residual", "coarea"};
  RunResult res = run_checks(e.soliton, cfg, e.expected);
  REQUIRE(res.reports.size() == 2);
  CHECK(res.reports[0].check == "soliton_residual");
  CHECK(res.reports[1].check == "coarea");
  CHECK(res.matches());
}

TEST_CASE("computed c^2 is invariant under flat-factor reparametrization") {
  using example_detail::conformal;
  using example_detail::diag_entries;
  auto make = [&](double flat_scale) {
    Grid2<Expression> entries = diag_entries(4);
    entries.at(0, 0) = conformal(1.0, 0, 2, 4, false);
    entries.at(1, 1) = entries.at(0, 0);
    entries.at(2, 2) = Expression::constant(flat_scale, 4);
    entries.at(3, 3) = Expression::constant(flat_scale, 4);
    Box box{Vec(4, -2.0), Vec(4, 2.0)};
    return Chart::from_expressions(4, "bach_reparam", box, entries);
  };
  Chart original = make(1.0);
  Chart rescaled = make(4.0);  // x_flat -> x_flat / 2
  const Vec p{0.3, 0.2, 0.5, -0.4};
  const Vec p2{0.3, 0.2, 0.25, -0.2};  // same point in rescaled coordinates
  double c2a = bach_tensor(original, p).at(2, 2) / 1.0;
  double c2b = bach_tensor(rescaled, p2).at(2, 2) / 4.0;
  CHECK(c2a == Catch::Approx(1.0 / 6.0).epsilon(1e-9));
  CHECK(std::abs(c2b - c2a) / c2a < 1e-6);
}
