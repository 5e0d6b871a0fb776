// verify: runs soliton checks on a library example or a chart file.
//
// Exit codes: 0 all executed verdicts match the expected table (all-pass for
// user charts), 1 verdict mismatch, 2 configuration or parse error,
// 3 numeric failure.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include <qsoliton/chartfile.hpp>
#include <qsoliton/engine.hpp>

using namespace qsoliton;

int main(int argc, char** argv) {
  CLI::App app{"gradient q-soliton verification"};
  app.get_formatter()->column_width(34);

  std::string target, chart_file;
  std::vector<std::string> checks{"all"};
  RunConfig cfg;
  ExampleParams params;
  std::vector<double> linear;

  app.add_option("target,--target", target,
                 "example name (gaussian, round_sphere, cylinder_shrinker, "
                 "bach_product, rigid_generic, hyperbolic_expander)");
  app.add_option("--chart-file", chart_file,
                 "chart definition file instead of a library example");
  app.add_option("--checks", checks,
                 "check names to run, or 'all'")
      ->delimiter(',');
  app.add_option("--samples", cfg.samples, "sample points per check")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "sampling seed");
  double tolerance = -1.0;
  app.add_option("--tolerance", tolerance, "residual tolerance override");
  app.add_option("--radii", cfg.radii_count, "radius grid size")
      ->check(CLI::PositiveNumber);
  app.add_option("--rmax", cfg.rmax, "largest sublevel radius")
      ->check(CLI::PositiveNumber);
  app.add_option("--probes", cfg.probes, "geodesic probe count")
      ->check(CLI::PositiveNumber);
  app.add_option("--probe-length", cfg.probe_length,
                 "geodesic probe length (capped by injectivity)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out-json", cfg.out_json, "JSON report path");
  app.add_option("--out-csv-dir", cfg.out_csv_dir,
                 "directory for trace/profile CSV exports");
  app.add_option("--dim", params.dim, "dimension (gaussian, round_sphere, "
                                      "hyperbolic_expander)");
  app.add_option("--lambda", params.lambda, "soliton constant (gaussian)");
  app.add_option("--radius", params.radius,
                 "sphere factor radius (round_sphere, rigid_generic)");
  app.add_option("--flat-dims", params.flat_dims,
                 "flat factor dimension (cylinder_shrinker, rigid_generic)");
  app.add_option("--sign", params.sign,
                 "curvature sign of the N factor (bach_product)");
  app.add_option("--Lambda", params.Lambda,
                 "first-order rate (rigid_generic)");
  app.add_option("--linear", linear, "linear part of f (rigid_generic)")
      ->delimiter(',');
  app.add_option("--offset", params.offset, "constant part of f "
                                            "(rigid_generic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (tolerance >= 0.0) cfg.tolerance = tolerance;
  params.linear = linear;
  if (!(checks.size() == 1 && checks[0] == "all")) cfg.checks = checks;
  for (const std::string& name : cfg.checks) {
    bool known = false;
    for (const std::string& k : all_check_names()) known |= (k == name);
    if (!known) {
      std::cerr << "unknown check: " << name << "\n";
      return 2;
    }
  }
  if (target.empty() == chart_file.empty()) {
    std::cerr << "need exactly one of: target, --chart-file\n";
    return 2;
  }

  Example ex;
  ChartFile cf;
  SolitonData* soliton = nullptr;
  std::map<std::string, Verdict> expected;
  try {
    if (!target.empty()) {
      ex = build_example(target, params);
      soliton = &ex.soliton;
      expected = ex.expected;
    } else {
      cf = load_chart_file(chart_file);
      if (!cf.has_soliton) {
        std::cerr << "chart file declares no soliton data (f, lambda, q)\n";
        return 2;
      }
      soliton = &cf.soliton;  // user charts are expected to pass everything
    }
  } catch (const chartfile_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    RunResult res = run_checks(*soliton, cfg, expected);
    for (const CheckReport& r : res.reports) {
      std::printf("%-18s %-13s residual_max %.3e  tolerance %.1e",
                  r.check.c_str(), to_string(r.verdict), r.residual_max,
                  r.tolerance);
      if (!r.notes.empty()) std::printf("  [%s]", r.notes.c_str());
      std::printf("\n");
    }
    bool ok = res.matches();
    std::printf("%s: %s\n", soliton->name.c_str(),
                ok ? "verdicts match the expected table"
                   : "VERDICT MISMATCH against the expected table");
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
}
