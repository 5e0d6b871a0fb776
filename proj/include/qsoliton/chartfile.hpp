// Declarative text format for charts and soliton data.
//
// Line-oriented `key = value`; '#' starts a comment.  Keys:
//   dim = 3                        (required, first)
//   label = my_chart
//   box = lo1 hi1 lo2 hi2 ...      (required)
//   sample_box = lo1 hi1 ...
//   anchor = x1 x2 ...
//   ball = count r2max             (first `count` coords inside a ball)
//   product = flat_dim compact_volume
//   injectivity_cap = 4.0
//   jets = exact | finite_difference
//   g i j = expression             (1-based; defaults to the identity)
//   f = expression
//   lambda = 0.5
//   Lambda = 0.5
//   normalization = 0
//   q = zero | ricci | bourguignon rho=0.25 | bach | custom
//   q i j = expression             (custom only)
//
// Expressions use the metric grammar: + - * / ^, exp, log, sin, cos, sinh,
// cosh, sqrt, constants and coordinates x1..xn.  `jets = finite_difference`
// evaluates the same expressions at order 0 only and rebuilds derivatives by
// central differences, putting every downstream check in the reduced
// tolerance regime.

#ifndef QSOLITON_CHARTFILE_HPP
#define QSOLITON_CHARTFILE_HPP

#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "soliton.hpp"

namespace qsoliton {

struct chartfile_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ChartFile {
  std::shared_ptr<Chart> chart;
  SolitonData soliton;  // soliton.chart points at *chart
  bool has_soliton = false;
};

namespace chartfile_detail {

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<double> numbers(const std::string& s, const char* what) {
  std::istringstream is(s);
  std::vector<double> out;
  double v;
  while (is >> v) out.push_back(v);
  std::string rest;
  if (is.clear(), is >> rest)
    throw chartfile_error(std::string("bad number in ") + what + ": " + s);
  return out;
}

inline double number(const std::string& s, const char* what) {
  std::vector<double> v = numbers(s, what);
  if (v.size() != 1)
    throw chartfile_error(std::string(what) + " expects one number: " + s);
  return v[0];
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// "g 1 2" -> (0, 1); throws unless 1 <= i <= j-form indices <= dim
inline std::pair<int, int> entry_indices(const std::string& key, int dim,
                                         const char* what) {
  std::istringstream is(key);
  std::string tag;
  int i = 0, j = 0;
  is >> tag >> i >> j;
  if (!is || i < 1 || j < 1 || i > dim || j > dim)
    throw chartfile_error(std::string("bad ") + what + " entry key: " + key);
  return {i - 1, j - 1};
}

}  // namespace chartfile_detail

inline ChartFile load_chart_string(const std::string& text) {
  using namespace chartfile_detail;
  int dim = 0;
  std::string label = "chart";
  std::optional<Box> box, sample_box;
  std::optional<Vec> anchor;
  std::optional<std::pair<int, double>> ball;
  std::optional<ProductStructure> product;
  double injectivity_cap = std::numeric_limits<double>::infinity();
  bool fd = false;
  std::map<std::pair<int, int>, std::string> g_entries, q_entries;
  std::optional<std::string> f_text, q_kind;
  double lambda = 0.0, normalization = 0.0;
  std::optional<double> Lambda;
  bool has_f = false, has_lambda = false;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (size_t h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw chartfile_error("line " + std::to_string(lineno) +
                            ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw chartfile_error("line " + std::to_string(lineno) +
                            ": empty key or value");

    if (key == "dim") {
      dim = int(number(val, "dim"));
      if (dim < 1 || dim > kMaxDim)
        throw chartfile_error("dim must be between 1 and " +
                              std::to_string(kMaxDim));
      continue;
    }
    if (dim == 0)
      throw chartfile_error("dim must come before every other key");
    if (key == "label") {
      label = val;
    } else if (key == "box" || key == "sample_box") {
      std::vector<double> v = numbers(val, key.c_str());
      if (int(v.size()) != 2 * dim)
        throw chartfile_error(key + " expects " + std::to_string(2 * dim) +
                              " numbers");
      Box b{Vec(dim), Vec(dim)};
      for (int i = 0; i < dim; ++i) {
        b.lo[i] = v[2 * i];
        b.hi[i] = v[2 * i + 1];
        if (!(b.lo[i] < b.hi[i]))
          throw chartfile_error(key + ": lo must be below hi");
      }
      (key == "box" ? box : sample_box) = std::move(b);
    } else if (key == "anchor") {
      std::vector<double> v = numbers(val, "anchor");
      if (int(v.size()) != dim)
        throw chartfile_error("anchor expects " + std::to_string(dim) +
                              " numbers");
      anchor = Vec(v.begin(), v.end());
    } else if (key == "ball") {
      std::vector<double> v = numbers(val, "ball");
      if (v.size() != 2 || v[0] < 1 || v[0] > dim || v[1] <= 0.0)
        throw chartfile_error("ball expects: count r2max");
      ball = {int(v[0]), v[1]};
    } else if (key == "product") {
      std::vector<double> v = numbers(val, "product");
      if (v.size() != 2 || v[0] < 1 || v[0] > dim || v[1] <= 0.0)
        throw chartfile_error("product expects: flat_dim compact_volume");
      product = ProductStructure{int(v[0]), v[1]};
    } else if (key == "injectivity_cap") {
      injectivity_cap = number(val, "injectivity_cap");
    } else if (key == "jets") {
      if (val == "finite_difference") fd = true;
      else if (val != "exact")
        throw chartfile_error("jets must be exact or finite_difference");
    } else if (key.rfind("g ", 0) == 0) {
      g_entries[entry_indices(key, dim, "metric")] = val;
    } else if (key == "f") {
      f_text = val;
      has_f = true;
    } else if (key == "lambda") {
      lambda = number(val, "lambda");
      has_lambda = true;
    } else if (key == "Lambda") {
      Lambda = number(val, "Lambda");
    } else if (key == "normalization") {
      normalization = number(val, "normalization");
    } else if (key == "q") {
      q_kind = val;
    } else if (key.rfind("q ", 0) == 0) {
      q_entries[entry_indices(key, dim, "q")] = val;
    } else {
      throw chartfile_error("line " + std::to_string(lineno) +
                            ": unknown key '" + key + "'");
    }
  }
  if (dim == 0) throw chartfile_error("missing dim");
  if (!box) throw chartfile_error("missing box");

  auto parse_expr = [dim](const std::string& t, const char* what) {
    try {
      return Expression(t, dim);
    } catch (const std::exception& e) {
      throw chartfile_error(std::string("bad ") + what + " expression '" + t +
                            "': " + e.what());
    }
  };

  Grid2<Expression> entries(dim, Expression());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      entries.at(i, j) = Expression::constant(i == j ? 1.0 : 0.0, dim);
  for (const auto& [ij, txt] : g_entries) {
    Expression e = parse_expr(txt, "metric");
    entries.at(ij.first, ij.second) = e;
    entries.at(ij.second, ij.first) = e;
  }

  ChartFile out;
  if (fd) {
    std::vector<std::function<double(const Vec&)>> fns;
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        Expression e = entries.at(i, j);
        fns.push_back([e](const Vec& p) { return e(p); });
      }
    out.chart = std::make_shared<Chart>(
        Chart::from_pointwise(dim, label, *box, std::move(fns)));
  } else {
    out.chart = std::make_shared<Chart>(
        Chart::from_expressions(dim, label, *box, std::move(entries)));
  }
  if (sample_box) out.chart->set_sample_box(*sample_box);
  if (anchor) out.chart->set_anchor(*anchor);
  if (ball) out.chart->set_ball_bound(ball->first, ball->second);
  if (product) out.chart->set_product(*product);
  out.chart->set_injectivity_cap(injectivity_cap);

  out.has_soliton = has_f || has_lambda || q_kind.has_value();
  out.soliton.chart = out.chart.get();
  out.soliton.name = label;
  out.soliton.lambda = lambda;
  out.soliton.Lambda = Lambda;
  out.soliton.normalization = normalization;
  out.soliton.f = f_text
                      ? ScalarField::from_expression(parse_expr(*f_text, "f"),
                                                     "f")
                      : ScalarField::constant(dim, 0.0, "f");
  if (q_kind) {
    const std::string& k = *q_kind;
    if (k == "zero") {
      out.soliton.qspec = QSpec::zero();
    } else if (k == "ricci") {
      out.soliton.qspec = QSpec::ricci();
    } else if (k.rfind("bourguignon", 0) == 0) {
      size_t eq = k.find("rho=");
      if (eq == std::string::npos)
        throw chartfile_error("bourguignon needs rho=<value>");
      out.soliton.qspec =
          QSpec::bourguignon(number(k.substr(eq + 4), "rho"));
    } else if (k == "bach") {
      if (dim != 4) throw chartfile_error("q = bach requires dim = 4");
      out.soliton.qspec = QSpec::bach();
    } else if (k == "custom") {
      if (q_entries.empty())
        throw chartfile_error("q = custom without q i j entries");
      Grid2<Expression> qe(dim, Expression());
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          qe.at(i, j) = Expression::constant(0.0, dim);
      for (const auto& [ij, txt] : q_entries) {
        Expression e = parse_expr(txt, "q");
        qe.at(ij.first, ij.second) = e;
        qe.at(ij.second, ij.first) = e;
      }
      out.soliton.qspec = QSpec::custom(std::move(qe));
    } else {
      throw chartfile_error("unknown q kind: " + k);
    }
  }
  return out;
}

inline ChartFile load_chart_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw chartfile_error("cannot open chart file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_chart_string(buf.str());
}

// Writes a chart (and optionally its soliton data) back out.  Requires
// expression-backed metric and f; quadrature rules and closed-form distances
// are not representable and are dropped.
inline void save_chart(std::ostream& os, const Chart& chart,
                       const SolitonData* s = nullptr) {
  using namespace chartfile_detail;
  const auto& exprs = chart.metric_expressions();
  if (!exprs)
    throw chartfile_error("chart '" + chart.label() +
                          "' has no expression-backed metric");
  const int dim = chart.dim();
  os << "dim = " << dim << "\n";
  os << "label = " << chart.label() << "\n";
  os << "box =";
  for (int i = 0; i < dim; ++i)
    os << " " << fmt(chart.box().lo[i]) << " " << fmt(chart.box().hi[i]);
  os << "\n";
  os << "sample_box =";
  for (int i = 0; i < dim; ++i)
    os << " " << fmt(chart.sample_box().lo[i]) << " "
       << fmt(chart.sample_box().hi[i]);
  os << "\n";
  os << "anchor =";
  for (int i = 0; i < dim; ++i) os << " " << fmt(chart.anchor()[i]);
  os << "\n";
  if (chart.ball_bound())
    os << "ball = " << chart.ball_bound()->first << " "
       << fmt(chart.ball_bound()->second) << "\n";
  if (chart.product())
    os << "product = " << chart.product()->flat_dim << " "
       << fmt(chart.product()->compact_volume) << "\n";
  if (std::isfinite(chart.injectivity_cap()))
    os << "injectivity_cap = " << fmt(chart.injectivity_cap()) << "\n";
  os << "jets = "
     << (chart.reduced_tolerance() ? "finite_difference" : "exact") << "\n";
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      os << "g " << (i + 1) << " " << (j + 1) << " = "
         << exprs->at(i, j).text() << "\n";
  if (!s) return;
  if (!s->f.expression())
    throw chartfile_error("potential has no expression form");
  os << "f = " << s->f.expression()->text() << "\n";
  os << "lambda = " << fmt(s->lambda) << "\n";
  if (s->Lambda) os << "Lambda = " << fmt(*s->Lambda) << "\n";
  if (s->normalization != 0.0)
    os << "normalization = " << fmt(s->normalization) << "\n";
  os << "q = "
     << (s->qspec.kind == QKind::custom ? "custom" : s->qspec.describe())
     << "\n";
  if (s->qspec.kind == QKind::custom) {
    const Grid2<Expression>& qe = *s->qspec.custom_entries;
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j)
        if (qe.at(i, j).text() != "0")
          os << "q " << (i + 1) << " " << (j + 1) << " = "
             << qe.at(i, j).text() << "\n";
  }
}

inline void save_chart_file(const std::string& path, const Chart& chart,
                            const SolitonData* s = nullptr) {
  std::ofstream os(path);
  if (!os) throw chartfile_error("cannot write chart file: " + path);
  save_chart(os, chart, s);
}

}  // namespace qsoliton

#endif  // QSOLITON_CHARTFILE_HPP
