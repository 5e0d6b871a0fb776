// Check reports and their JSON serialization.

#ifndef QSOLITON_REPORT_HPP
#define QSOLITON_REPORT_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

namespace qsoliton {

enum class Verdict { pass, fail, inapplicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "?";
}

// Streaming residual statistics with a deterministic accumulation order.
struct ResidualStats {
  int count = 0;
  double max = 0.0;
  double sum = 0.0;
  double sum2 = 0.0;

  void add(double r) {
    r = std::abs(r);
    ++count;
    if (r > max) max = r;
    sum += r;
    sum2 += r * r;
  }
  double mean() const { return count ? sum / count : 0.0; }
  double stddev() const {
    if (count == 0) return 0.0;
    double m = mean();
    return std::sqrt(std::max(0.0, sum2 / count - m * m));
  }
};

struct CheckReport {
  std::string check;
  int samples = 0;
  double residual_max = 0.0;
  double residual_mean = 0.0;
  double residual_stddev = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::pass;
  std::map<std::string, double> constants;  // C, c, Lambda, ...
  std::string notes;
  std::string regime;  // "exact" or "finite_difference"

  void finish(const ResidualStats& s) {
    samples = s.count;
    residual_max = s.max;
    residual_mean = s.mean();
    residual_stddev = s.stddev();
    verdict = residual_max <= tolerance ? Verdict::pass : Verdict::fail;
  }

  nlohmann::json to_json() const {
    nlohmann::json c = nlohmann::json::object();
    for (const auto& [k, v] : constants) c[k] = v;
    return nlohmann::json{{"check", check},
                          {"samples", samples},
                          {"residual_max", residual_max},
                          {"residual_mean", residual_mean},
                          {"residual_stddev", residual_stddev},
                          {"tolerance", tolerance},
                          {"verdict", to_string(verdict)},
                          {"constants", c},
                          {"notes", notes},
                          {"regime", regime}};
  }
};

}  // namespace qsoliton

#endif  // QSOLITON_REPORT_HPP
