// Batch runner: executes a requested subset of the check registry in
// dependency order on one soliton, assembles the JSON report, and exports
// CSVs.  Exit-code semantics live in the CLI; this header only computes.

#ifndef QSOLITON_ENGINE_HPP
#define QSOLITON_ENGINE_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "examples.hpp"
#include "geodesic.hpp"
#include "volume.hpp"

namespace qsoliton {

inline const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names = {
      "soliton_residual", "hamilton_scalar", "hamilton_tensor", "f_lambda",
      "laplacian_trace",  "rigidity",        "trace_bounds",    "flatness",
      "compact_identity", "evolution",       "shape_eigen",     "growth",
      "lower_bound",      "coarea",          "volume_upper",    "volume_lower",
      "omori"};
  return names;
}

struct RunConfig {
  std::vector<std::string> checks;  // empty means all
  int samples = 256;
  std::uint64_t seed = 0;
  std::optional<double> tolerance;
  int radii_count = 48;
  double rmax = 12.0;
  int probes = 6;
  double probe_length = 8.0;  // capped by the chart's injectivity bound
  std::string out_json;
  std::string out_csv_dir;
};

struct RunResult {
  std::string target;
  std::vector<CheckReport> reports;  // registry order
  std::map<std::string, Verdict> expected;

  const CheckReport* find(const std::string& name) const {
    for (const CheckReport& r : reports)
      if (r.check == name) return &r;
    return nullptr;
  }

  // every executed, non-inapplicable verdict must match the expected table
  bool matches() const {
    for (const CheckReport& r : reports) {
      if (r.verdict == Verdict::inapplicable) continue;
      auto it = expected.find(r.check);
      Verdict want = it == expected.end() ? Verdict::pass : it->second;
      if (r.verdict != want) return false;
    }
    return true;
  }

  nlohmann::json to_json(const RunConfig& cfg, const SolitonData& s) const {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckReport& r : reports) checks.push_back(r.to_json());
    nlohmann::json exp = nlohmann::json::object();
    for (const auto& [k, v] : expected) exp[k] = to_string(v);
    nlohmann::json j{{"schema", "qsoliton-report/1"},
                     {"target", target},
                     {"chart",
                      {{"label", s.chart->label()},
                       {"dim", s.chart->dim()},
                       {"regime", s.chart->reduced_tolerance()
                                      ? "finite_difference"
                                      : "exact"}}},
                     {"classification", s.classify()},
                     {"lambda", s.lambda},
                     {"samples", cfg.samples},
                     {"seed", cfg.seed},
                     {"checks", checks},
                     {"expected", exp},
                     {"matched", matches()}};
    if (s.Lambda) j["Lambda"] = *s.Lambda;
    return j;
  }
};

namespace engine_detail {

inline Vec radius_grid(const RunConfig& cfg) {
  const int m = std::max(4, cfg.radii_count);
  Vec r(m);
  const double lo = cfg.rmax / m;
  for (int i = 0; i < m; ++i)
    r[i] = lo + (cfg.rmax - lo) * i / (m - 1);
  return r;
}

inline CheckReport inapplicable(const SolitonData& s, const RunConfig& cfg,
                                const std::string& name,
                                const std::string& why) {
  CheckOptions o{cfg.samples, cfg.seed, cfg.tolerance};
  CheckReport r = check_detail::start(s, o, name);
  r.verdict = Verdict::inapplicable;
  r.notes = why;
  return r;
}

}  // namespace engine_detail

// Runs the requested checks (all by default) in registry order.  Geodesic
// probes are shared across shape_eigen / growth / lower_bound; the sublevel
// profile across coarea / volume_upper / volume_lower; omori consumes the
// lower_bound report.  Throws std::invalid_argument on unknown check names
// before touching any numerics.
inline RunResult run_checks(const SolitonData& s, const RunConfig& cfg,
                            std::map<std::string, Verdict> expected = {}) {
  std::vector<std::string> wanted =
      cfg.checks.empty() ? all_check_names() : cfg.checks;
  for (const std::string& name : wanted) {
    bool known = false;
    for (const std::string& k : all_check_names()) known |= (k == name);
    if (!known) throw std::invalid_argument("unknown check: " + name);
  }
  auto want = [&wanted](const std::string& name) {
    for (const std::string& w : wanted)
      if (w == name) return true;
    return false;
  };

  RunResult out;
  out.target = s.name;
  out.expected = std::move(expected);
  CheckOptions opts{cfg.samples, cfg.seed, cfg.tolerance};
  const double tol = cfg.tolerance.value_or(default_tolerance(*s.chart));

  // shared resources, built on first demand
  std::optional<std::vector<GeodesicTrace>> traces;
  auto get_traces = [&]() -> const std::vector<GeodesicTrace>& {
    if (!traces)
      traces = probe_traces(*s.chart, cfg.probes, cfg.probe_length, 1e-3,
                            cfg.seed);
    return *traces;
  };
  std::optional<SublevelProfile> profile;
  std::optional<std::string> profile_block;  // why no profile exists
  auto get_profile = [&]() -> const std::optional<SublevelProfile>& {
    if (profile || profile_block) return profile;
    if (s.lambda <= 0.0)
      profile_block = "needs lambda > 0";
    else if (s.chart->compact())
      profile_block = "chart is compact";
    else if (!s.chart->product())
      profile_block = "no product structure over a flat factor";
    else if (hamilton_scalar(s, opts).second.verdict != Verdict::pass)
      profile_block = "Hamilton constant is not constant; no C = 0 shift";
    else
      profile = build_profile(s, engine_detail::radius_grid(cfg), true,
                              cfg.seed);
    return profile;
  };
  std::optional<CheckReport> lower_report;
  auto get_lower = [&]() -> const CheckReport& {
    if (!lower_report) lower_report = lower_bound_probe(s, get_traces(), opts);
    return *lower_report;
  };

  for (const std::string& name : all_check_names()) {
    if (!want(name)) continue;
    if (name == "soliton_residual") {
      out.reports.push_back(soliton_residual(s, opts));
    } else if (name == "hamilton_scalar") {
      out.reports.push_back(hamilton_scalar(s, opts).second);
    } else if (name == "hamilton_tensor") {
      out.reports.push_back(hamilton_tensor(s, opts));
    } else if (name == "f_lambda") {
      out.reports.push_back(
          F_Lambda_check(s, s.Lambda.value_or(s.lambda), opts));
    } else if (name == "laplacian_trace") {
      out.reports.push_back(laplacian_trace_check(s, opts));
    } else if (name == "rigidity") {
      out.reports.push_back(rigidity_check(s, opts));
    } else if (name == "trace_bounds") {
      out.reports.push_back(trace_bounds_check(s, opts));
    } else if (name == "flatness") {
      out.reports.push_back(flatness_hypotheses(s, opts));
    } else if (name == "compact_identity") {
      out.reports.push_back(compact_integral_identity(s, opts));
    } else if (name == "evolution") {
      out.reports.push_back(evolution_identities(s, opts));
    } else if (name == "shape_eigen") {
      out.reports.push_back(shape_eigen_check(s, get_traces(), opts));
    } else if (name == "growth") {
      out.reports.push_back(growth_bounds(s, get_traces(), opts));
    } else if (name == "lower_bound") {
      out.reports.push_back(get_lower());
    } else if (name == "coarea") {
      const auto& pr = get_profile();
      out.reports.push_back(
          pr ? coarea_identity_check(*pr, s, opts)
             : engine_detail::inapplicable(s, cfg, name, *profile_block));
    } else if (name == "volume_upper") {
      const auto& pr = get_profile();
      out.reports.push_back(
          pr ? upper_volume_check(*pr, s, opts)
             : engine_detail::inapplicable(s, cfg, name, *profile_block));
    } else if (name == "volume_lower") {
      const auto& pr = get_profile();
      out.reports.push_back(
          pr ? lower_volume_check(*pr, s, opts)
             : engine_detail::inapplicable(s, cfg, name, *profile_block));
    } else if (name == "omori") {
      if (std::abs(s.lambda - 0.5) > 1e-12) {
        out.reports.push_back(engine_detail::inapplicable(
            s, cfg, name, "needs the lambda = 1/2 convention"));
      } else {
        out.reports.push_back(omori_yau_conditions(s, get_lower(), opts));
      }
    }
  }
  (void)tol;

  if (!cfg.out_csv_dir.empty()) {
    std::filesystem::create_directories(cfg.out_csv_dir);
    if (traces) {
      for (size_t i = 0; i < traces->size(); ++i) {
        std::ofstream os(std::filesystem::path(cfg.out_csv_dir) /
                         ("trace_" + std::to_string(i + 1) + ".csv"));
        write_trace_csv(os, s, (*traces)[i]);
      }
    }
    if (profile) {
      std::ofstream os(std::filesystem::path(cfg.out_csv_dir) /
                       "profile.csv");
      write_profile_csv(os, *profile);
    }
  }
  if (!cfg.out_json.empty()) {
    std::ofstream os(cfg.out_json);
    os << out.to_json(cfg, s).dump(2) << "\n";
  }
  return out;
}

}  // namespace qsoliton

#endif  // QSOLITON_ENGINE_HPP
