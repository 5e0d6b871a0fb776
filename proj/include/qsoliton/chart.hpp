// Coordinate charts with exactly-differentiable metrics.
//
// A Chart evaluates its metric components together with all partials up to a
// requested order, as jets.  Example charts are backed by closed-form
// expressions (exact jets); user charts may supply order-0 evaluations only,
// in which case jets are built by Richardson-extrapolated central
// differences and the chart is flagged as reduced-tolerance.

#ifndef QSOLITON_CHART_HPP
#define QSOLITON_CHART_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "expr.hpp"
#include "jet.hpp"
#include "linalg.hpp"
#include "sampling.hpp"

namespace qsoliton {

struct outside_domain : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct metric_not_pd : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct valence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class JetMode { exact, finite_difference };

// Nested central differences with one Richardson step; error O(h^4) on
// smooth inputs.  Only used for charts that supply order-0 evaluations.
namespace fd_detail {

inline double mixed_partial(const std::function<double(const Vec&)>& f,
                            Vec p, MultiIndex alpha, double h) {
  int i = -1;
  for (int k = 0; k < kMaxDim; ++k)
    if (alpha[k] > 0) {
      i = k;
      break;
    }
  if (i < 0) return f(p);
  alpha[i] -= 1;
  p[i] += h;
  double fp = mixed_partial(f, p, alpha, h);
  p[i] -= 2.0 * h;
  double fm = mixed_partial(f, p, alpha, h);
  return (fp - fm) / (2.0 * h);
}

inline Jet fd_jet(const std::function<double(const Vec&)>& f, const Vec& p,
                  int order, double h = 0.05) {
  const JetLayout& layout = JetLayout::get(int(p.size()), order);
  Jet out(layout);
  for (int i = 0; i < layout.size(); ++i) {
    const MultiIndex& a = layout.exponent(i);
    if (mi_degree(a) == 0) {
      out.coeff(i) = f(p);
      continue;
    }
    double d1 = mixed_partial(f, p, a, h);
    double d2 = mixed_partial(f, p, a, h / 2.0);
    out.coeff(i) = (4.0 * d2 - d1) / 3.0 / mi_factorial(a);
  }
  return out;
}

}  // namespace fd_detail

// Quadrature over a whole compact manifold, expressed through chart points.
struct CompactInfo {
  double total_volume = 0.0;
  std::vector<Vec> nodes;
  std::vector<double> weights;
};

// Product metadata used by the volume-growth machinery: the chart splits as
// (compact factor) x R^k with the flat coordinates last.
struct ProductStructure {
  int flat_dim = 0;
  double compact_volume = 1.0;  // 1 when there is no compact factor
};

class Chart {
 public:
  using MetricFn = std::function<Grid2<Jet>(const Vec&, int)>;
  using Predicate = std::function<bool(const Vec&)>;
  using DistanceFn = std::function<double(const Vec&, const Vec&)>;

  Chart(int dim, std::string label, Box box, MetricFn metric,
        JetMode mode = JetMode::exact)
      : dim_(dim), label_(std::move(label)), box_(std::move(box)),
        metric_(std::move(metric)), mode_(mode) {
    anchor_.resize(dim_);
    for (int i = 0; i < dim_; ++i)
      anchor_[i] = 0.5 * (box_.lo[i] + box_.hi[i]);
  }

  // Chart whose metric entries are closed-form expressions (exact jets).
  static Chart from_expressions(int dim, std::string label, Box box,
                                Grid2<Expression> entries) {
    auto entries_ptr = std::make_shared<Grid2<Expression>>(std::move(entries));
    MetricFn fn = [dim, entries_ptr](const Vec& p, int order) {
      std::vector<Jet> x = seed_point(p, order);
      Grid2<Jet> g(dim, Jet::constant(x[0].layout(), 0.0));
      for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
          Jet v = entries_ptr->at(i, j)(x);
          g.at(i, j) = v;
          g.at(j, i) = v;
        }
      return g;
    };
    Chart c(dim, std::move(label), std::move(box), std::move(fn));
    c.metric_exprs_ = entries_ptr;
    return c;
  }

  // Chart whose metric entries are order-0 callables; jets are built by
  // finite differences and every downstream check runs at reduced tolerance.
  static Chart from_pointwise(
      int dim, std::string label, Box box,
      std::vector<std::function<double(const Vec&)>> upper_entries) {
    auto fns = std::make_shared<std::vector<std::function<double(const Vec&)>>>(
        std::move(upper_entries));
    MetricFn fn = [dim, fns](const Vec& p, int order) {
      const JetLayout& layout = JetLayout::get(dim, order);
      Grid2<Jet> g(dim, Jet::constant(layout, 0.0));
      int idx = 0;
      for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
          Jet v = fd_detail::fd_jet((*fns)[idx++], p, order);
          g.at(i, j) = v;
          g.at(j, i) = v;
        }
      return g;
    };
    return Chart(dim, std::move(label), std::move(box), std::move(fn),
                 JetMode::finite_difference);
  }

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  const Box& box() const { return box_; }
  const Vec& anchor() const { return anchor_; }
  void set_anchor(Vec a) { anchor_ = std::move(a); }
  JetMode jet_mode() const { return mode_; }
  bool reduced_tolerance() const { return mode_ == JetMode::finite_difference; }

  // Sub-box used for low-discrepancy sampling (defaults to the domain box);
  // compact charts keep a huge domain box for quadrature nodes near the
  // excluded pole but sample from a moderate region.
  void set_sample_box(Box b) { sample_box_ = std::move(b); }
  const Box& sample_box() const { return sample_box_ ? *sample_box_ : box_; }

  void set_predicate(Predicate p) { predicate_ = std::move(p); }

  // Predicate restricting the first `count` coordinates to an open ball of
  // squared radius r2max; kept as data so chart files can round-trip it.
  void set_ball_bound(int count, double r2max) {
    ball_ = {count, r2max};
    predicate_ = [count, r2max](const Vec& p) {
      double s = 0.0;
      for (int i = 0; i < count; ++i) s += p[i] * p[i];
      return s < r2max;
    };
  }
  const std::optional<std::pair<int, double>>& ball_bound() const {
    return ball_;
  }
  void set_distance(DistanceFn d) { distance_ = std::move(d); }
  void set_compact(CompactInfo c) { compact_ = std::move(c); }
  void set_product(ProductStructure p) { product_ = std::move(p); }
  void set_injectivity_cap(double s0) { injectivity_cap_ = s0; }

  bool compact() const { return compact_.has_value(); }
  const CompactInfo& compact_info() const {
    if (!compact_) throw std::logic_error("chart is not compact");
    return *compact_;
  }
  const std::optional<ProductStructure>& product() const { return product_; }
  bool has_distance() const { return distance_ != nullptr; }
  double injectivity_cap() const { return injectivity_cap_; }

  const std::shared_ptr<Grid2<Expression>>& metric_expressions() const {
    return metric_exprs_;
  }

  bool in_domain(const Vec& p) const {
    if (int(p.size()) != dim_) return false;
    if (!box_.contains(p)) return false;
    if (predicate_ && !predicate_(p)) return false;
    return true;
  }

  void require_in_domain(const Vec& p) const {
    if (!in_domain(p)) {
      std::ostringstream os;
      os << "point outside domain of chart '" << label_ << "': (";
      for (size_t i = 0; i < p.size(); ++i)
        os << (i ? ", " : "") << p[i];
      os << ")";
      throw outside_domain(os.str());
    }
  }

  // Metric jets at p; every evaluation checks symmetry (structural) and
  // positive definiteness by Cholesky (hard error on failure).
  Grid2<Jet> metric_jets(const Vec& p, int order) const {
    require_in_domain(p);
    Grid2<Jet> g = metric_(p, order);
    Grid2<double> g0(dim_, 0.0);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) g0.at(i, j) = g.at(i, j).value();
    if (!cholesky(g0)) {
      std::ostringstream os;
      os << "metric of chart '" << label_ << "' not positive definite at (";
      for (size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
      os << ")";
      throw metric_not_pd(os.str());
    }
    return g;
  }

  Grid2<double> metric(const Vec& p) const {
    Grid2<Jet> g = metric_jets(p, 0);
    Grid2<double> out(dim_, 0.0);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) out.at(i, j) = g.at(i, j).value();
    return out;
  }

  // Closed-form distance when the chart declares one.
  double distance(const Vec& a, const Vec& b) const {
    if (!distance_) throw std::logic_error("chart has no closed-form distance");
    return distance_(a, b);
  }

  // Deterministic low-discrepancy sample set inside the domain.
  std::vector<Vec> sample_points(int count, std::uint64_t seed) const {
    HaltonSampler s(sample_box(), seed);
    std::vector<Vec> out;
    out.reserve(count);
    auto pred = [this](const Vec& p) { return in_domain(p); };
    for (int i = 0; i < count; ++i) out.push_back(s.next(pred));
    return out;
  }

 private:
  int dim_;
  std::string label_;
  Box box_;
  MetricFn metric_;
  JetMode mode_;
  Vec anchor_;
  Predicate predicate_;
  std::optional<std::pair<int, double>> ball_;
  DistanceFn distance_;
  std::optional<Box> sample_box_;
  std::optional<CompactInfo> compact_;
  std::optional<ProductStructure> product_;
  double injectivity_cap_ = std::numeric_limits<double>::infinity();
  std::shared_ptr<Grid2<Expression>> metric_exprs_;
};

}  // namespace qsoliton

#endif  // QSOLITON_CHART_HPP
