// Scalar and tensor fields on a chart, evaluable pointwise with derivatives
// (as jets).  Fields are backed either by closed-form expressions or by
// arbitrary closures (e.g. curvature-derived tensors).

#ifndef QSOLITON_FIELDS_HPP
#define QSOLITON_FIELDS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "chart.hpp"

namespace qsoliton {

class ScalarField {
 public:
  using JetFn = std::function<Jet(const Vec&, int)>;

  ScalarField() = default;
  ScalarField(JetFn fn, std::string label = {})
      : fn_(std::move(fn)), label_(std::move(label)) {}

  static ScalarField from_expression(const Expression& e,
                                     std::string label = {}) {
    Expression copy = e;
    ScalarField f(
        [copy](const Vec& p, int order) {
          return copy(seed_point(p, order));
        },
        std::move(label));
    f.expr_ = copy;
    return f;
  }

  static ScalarField constant(int dim, double v, std::string label = {}) {
    return from_expression(Expression::constant(v, dim), std::move(label));
  }

  bool valid() const { return fn_ != nullptr; }
  const std::string& label() const { return label_; }
  const std::optional<Expression>& expression() const { return expr_; }

  Jet jet(const Vec& p, int order) const { return fn_(p, order); }
  double value(const Vec& p) const { return fn_(p, 0).value(); }

  // Raw coordinate gradient (partials, not index-raised).
  Vec partials(const Vec& p) const {
    Jet j = fn_(p, 1);
    Vec out(p.size());
    for (int i = 0; i < int(p.size()); ++i) out[i] = j.partial(i);
    return out;
  }

  // f + c
  ScalarField shifted(double c) const {
    JetFn base = fn_;
    ScalarField out([base, c](const Vec& p, int order) {
      return base(p, order) + c;
    }, label_);
    return out;
  }

 private:
  JetFn fn_;
  std::string label_;
  std::optional<Expression> expr_;
};

// A valence-(r,s) tensor field.  The checks in this library only consume
// symmetric (0,2) fields; any other valence passed to a (0,2) operation is a
// valence error.
class TensorField {
 public:
  using JetFn02 = std::function<Grid2<Jet>(const Vec&, int)>;

  TensorField() = default;
  TensorField(int r, int s, JetFn02 fn, int max_order = 4,
              std::string label = {})
      : r_(r), s_(s), fn_(std::move(fn)), max_order_(max_order),
        label_(std::move(label)) {}

  static TensorField symmetric02(JetFn02 fn, int max_order = 4,
                                 std::string label = {}) {
    return TensorField(0, 2, std::move(fn), max_order, std::move(label));
  }

  static TensorField zero02(int dim, std::string label = {}) {
    return symmetric02(
        [dim](const Vec& p, int order) {
          const JetLayout& layout = JetLayout::get(dim, order);
          return Grid2<Jet>(dim, Jet::constant(layout, 0.0));
        },
        kMaxJetOrder, std::move(label));
  }

  bool valid() const { return fn_ != nullptr; }
  int contravariant() const { return r_; }
  int covariant() const { return s_; }
  int max_order() const { return max_order_; }
  const std::string& label() const { return label_; }

  void require_valence02() const {
    if (r_ != 0 || s_ != 2)
      throw valence_error("operation requires a (0,2) tensor field, got (" +
                          std::to_string(r_) + "," + std::to_string(s_) + ")");
  }

  Grid2<Jet> jets(const Vec& p, int order) const {
    require_valence02();
    if (order > max_order_)
      throw std::invalid_argument("tensor field jet order " +
                                  std::to_string(order) + " beyond declared " +
                                  std::to_string(max_order_));
    return fn_(p, order);
  }

  Grid2<double> components(const Vec& p) const {
    Grid2<Jet> j = jets(p, 0);
    Grid2<double> out(j.n, 0.0);
    for (int i = 0; i < j.n; ++i)
      for (int k = 0; k < j.n; ++k) out.at(i, k) = j.at(i, k).value();
    return out;
  }

 private:
  int r_ = 0, s_ = 2;
  JetFn02 fn_;
  int max_order_ = 4;
  std::string label_;
};

}  // namespace qsoliton

#endif  // QSOLITON_FIELDS_HPP
