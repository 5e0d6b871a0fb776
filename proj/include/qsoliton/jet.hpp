// Truncated multivariate Taylor arithmetic ("jets").
//
// A Jet stores the Taylor coefficients of a smooth function at a point, in
// up to 4 variables and up to total degree 6.  All chart, field and
// curvature evaluations in this library are carried out in jet arithmetic,
// so every reported partial derivative is exact up to roundoff for
// closed-form inputs.

#ifndef QSOLITON_JET_HPP
#define QSOLITON_JET_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsoliton {

inline constexpr int kMaxDim = 4;
inline constexpr int kMaxJetOrder = 6;

using MultiIndex = std::array<std::uint8_t, kMaxDim>;

inline int mi_degree(const MultiIndex& a) {
  return int(a[0]) + int(a[1]) + int(a[2]) + int(a[3]);
}

inline double mi_factorial(const MultiIndex& a) {
  static const double fact[7] = {1, 1, 2, 6, 24, 120, 720};
  return fact[a[0]] * fact[a[1]] * fact[a[2]] * fact[a[3]];
}

// Coefficient layout for jets in `dim` variables truncated at total degree
// `order`.  Shared (cached) between all jets of the same signature; holds the
// multi-index enumeration and the sparse product table.
class JetLayout {
 public:
  static const JetLayout& get(int dim, int order) {
    if (dim < 1 || dim > kMaxDim || order < 0 || order > kMaxJetOrder)
      throw std::invalid_argument("JetLayout: dim/order out of range");
    // recursive: building a layout builds the next lower order for the
    // derivative tables
    static std::recursive_mutex mu;
    static std::array<std::unique_ptr<JetLayout>,
                      (kMaxDim + 1) * (kMaxJetOrder + 1)>
        cache;
    const int key = dim * (kMaxJetOrder + 1) + order;
    std::lock_guard<std::recursive_mutex> lock(mu);
    if (!cache[key]) cache[key].reset(new JetLayout(dim, order));
    return *cache[key];
  }

  int dim() const { return dim_; }
  int order() const { return order_; }
  int size() const { return int(exps_.size()); }
  const MultiIndex& exponent(int i) const { return exps_[i]; }

  // Position of a multi-index, or -1 if its degree exceeds the order.
  int index_of(const MultiIndex& a) const {
    if (mi_degree(a) > order_) return -1;
    return lookup_[encode(a)];
  }

  struct ProdTerm {
    std::uint16_t a, b, dst;
  };
  std::span<const ProdTerm> prod_terms() const { return prod_; }

  // Derivative table for variable i: (src coefficient, dst coefficient,
  // multiplier) triples mapping this layout onto the order-1 layout.
  struct DerivTerm {
    std::uint16_t src, dst;
    double factor;
  };
  std::span<const DerivTerm> deriv_terms(int i) const { return deriv_[i]; }

 private:
  JetLayout(int dim, int order) : dim_(dim), order_(order) {
    MultiIndex a{0, 0, 0, 0};
    enumerate(a, 0);
    lookup_.assign(encode_limit(), -1);
    for (int i = 0; i < int(exps_.size()); ++i) lookup_[encode(exps_[i])] = i;
    // product table
    for (int i = 0; i < int(exps_.size()); ++i)
      for (int j = 0; j < int(exps_.size()); ++j) {
        if (mi_degree(exps_[i]) + mi_degree(exps_[j]) > order_) continue;
        MultiIndex s;
        for (int k = 0; k < kMaxDim; ++k)
          s[k] = std::uint8_t(exps_[i][k] + exps_[j][k]);
        prod_.push_back({std::uint16_t(i), std::uint16_t(j),
                         std::uint16_t(lookup_[encode(s)])});
      }
    // derivative tables
    if (order_ > 0) {
      const JetLayout& lower = JetLayout::get(dim_, order_ - 1);
      for (int v = 0; v < dim_; ++v) {
        for (int i = 0; i < int(exps_.size()); ++i) {
          if (exps_[i][v] == 0) continue;
          MultiIndex b = exps_[i];
          b[v] -= 1;
          int dst = lower.index_of(b);
          if (dst < 0) continue;
          deriv_[v].push_back(
              {std::uint16_t(i), std::uint16_t(dst), double(exps_[i][v])});
        }
      }
    }
  }

  void enumerate(MultiIndex& a, int pos) {
    if (pos == dim_) {
      exps_.push_back(a);
      return;
    }
    int used = mi_degree(a);
    for (int k = 0; k + used <= order_; ++k) {
      a[pos] = std::uint8_t(k);
      enumerate(a, pos + 1);
    }
    a[pos] = 0;
  }

  int encode(const MultiIndex& a) const {
    int e = 0;
    for (int k = dim_ - 1; k >= 0; --k) e = e * (order_ + 1) + a[k];
    return e;
  }
  int encode_limit() const {
    int e = 1;
    for (int k = 0; k < dim_; ++k) e *= (order_ + 1);
    return e;
  }

  int dim_, order_;
  std::vector<MultiIndex> exps_;
  std::vector<int> lookup_;
  std::vector<ProdTerm> prod_;
  std::array<std::vector<DerivTerm>, kMaxDim> deriv_;
};

class Jet {
 public:
  Jet() : layout_(nullptr) {}
  explicit Jet(const JetLayout& layout)
      : layout_(&layout), c_(layout.size(), 0.0) {}

  static Jet constant(const JetLayout& layout, double v) {
    Jet j(layout);
    j.c_[0] = v;
    return j;
  }

  static Jet variable(const JetLayout& layout, int i, double value) {
    Jet j(layout);
    j.c_[0] = value;
    if (layout.order() >= 1) {
      MultiIndex e{0, 0, 0, 0};
      e[i] = 1;
      j.c_[layout.index_of(e)] = 1.0;
    }
    return j;
  }

  const JetLayout& layout() const { return *layout_; }
  int dim() const { return layout_->dim(); }
  int order() const { return layout_->order(); }
  double value() const { return c_[0]; }
  double coeff(int i) const { return c_[i]; }
  double& coeff(int i) { return c_[i]; }

  // Raw partial derivative d^alpha f (not the Taylor coefficient).
  double partial(const MultiIndex& alpha) const {
    int i = layout_->index_of(alpha);
    if (i < 0) throw std::out_of_range("Jet::partial: degree beyond order");
    return c_[i] * mi_factorial(alpha);
  }
  double partial(int i) const {
    MultiIndex a{0, 0, 0, 0};
    a[i] = 1;
    return partial(a);
  }
  double partial(int i, int j) const {
    MultiIndex a{0, 0, 0, 0};
    a[i] += 1;
    a[j] += 1;
    return partial(a);
  }

  // d/dx_i as a jet one order lower.
  Jet derivative(int i) const {
    if (order() == 0)
      throw std::logic_error("Jet::derivative: order-0 jet");
    Jet out(JetLayout::get(dim(), order() - 1));
    for (const auto& t : layout_->deriv_terms(i))
      out.c_[t.dst] = c_[t.src] * t.factor;
    return out;
  }

  Jet truncated(int new_order) const {
    if (new_order >= order()) return *this;
    const JetLayout& lo = JetLayout::get(dim(), new_order);
    Jet out(lo);
    for (int i = 0; i < lo.size(); ++i)
      out.c_[i] = c_[layout_->index_of(lo.exponent(i))];
    return out;
  }

  Jet& operator+=(const Jet& o) {
    if (o.order() < order()) { *this = truncated(o.order()); }
    if (o.order() > order()) { Jet t = o.truncated(order()); return *this += t; }
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    if (o.order() < order()) { *this = truncated(o.order()); }
    if (o.order() > order()) { Jet t = o.truncated(order()); return *this -= t; }
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
  }
  Jet& operator+=(double s) { c_[0] += s; return *this; }
  Jet& operator-=(double s) { c_[0] -= s; return *this; }

  friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
  friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
  friend Jet operator+(Jet a, double s) { a += s; return a; }
  friend Jet operator+(double s, Jet a) { a += s; return a; }
  friend Jet operator-(Jet a, double s) { a -= s; return a; }
  friend Jet operator-(double s, Jet a) { a *= -1.0; a += s; return a; }
  friend Jet operator*(Jet a, double s) { a *= s; return a; }
  friend Jet operator*(double s, Jet a) { a *= s; return a; }
  friend Jet operator/(Jet a, double s) { a *= 1.0 / s; return a; }
  friend Jet operator-(Jet a) { a *= -1.0; return a; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    if (a.order() != b.order())
      return a.order() < b.order() ? a * b.truncated(a.order())
                                   : a.truncated(b.order()) * b;
    Jet out(a.layout());
    for (const auto& t : a.layout_->prod_terms())
      out.c_[t.dst] += a.c_[t.a] * b.c_[t.b];
    return out;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator/(double s, const Jet& b) { return reciprocal(b) * s; }

  // f(u) from the univariate Taylor coefficients f^{(k)}(u.value())/k!.
  static Jet compose(const Jet& u, std::span<const double> taylor) {
    const int m = u.order();
    Jet w = u;
    w.c_[0] = 0.0;  // nilpotent part
    Jet out = Jet::constant(u.layout(), taylor[0]);
    Jet p = Jet::constant(u.layout(), 1.0);
    for (int k = 1; k <= m && k < int(taylor.size()); ++k) {
      p = p * w;
      out += p * taylor[k];
    }
    return out;
  }

  friend Jet reciprocal(const Jet& u) {
    double v = u.value();
    if (v == 0.0) throw std::domain_error("jet reciprocal at zero");
    std::array<double, kMaxJetOrder + 1> t{};
    double a = 1.0 / v;
    for (int k = 0; k <= u.order(); ++k) {
      t[k] = a;       // (-1)^k / v^{k+1}
      a *= -1.0 / v;
    }
    return compose(u, std::span<const double>(t.data(), u.order() + 1));
  }

 private:
  const JetLayout* layout_;
  std::vector<double> c_;
};

inline Jet exp(const Jet& u) {
  std::array<double, kMaxJetOrder + 1> t{};
  double e = std::exp(u.value()), f = 1.0;
  for (int k = 0; k <= u.order(); ++k) {
    t[k] = e / f;
    f *= double(k + 1);
  }
  return Jet::compose(u, std::span<const double>(t.data(), u.order() + 1));
}

inline Jet log(const Jet& u) {
  double v = u.value();
  if (v <= 0.0) throw std::domain_error("jet log of non-positive value");
  std::array<double, kMaxJetOrder + 1> t{};
  t[0] = std::log(v);
  double a = 1.0 / v;
  for (int k = 1; k <= u.order(); ++k) {
    t[k] = a / double(k);  // (-1)^{k-1} (k-1)! / v^k / k!
    a *= -1.0 / v;
  }
  return Jet::compose(u, std::span<const double>(t.data(), u.order() + 1));
}

inline Jet sin(const Jet& u) {
  std::array<double, kMaxJetOrder + 1> t{};
  double s = std::sin(u.value()), c = std::cos(u.value()), f = 1.0;
  const double cyc[4] = {s, c, -s, -c};
  for (int k = 0; k <= u.order(); ++k) {
    t[k] = cyc[k % 4] / f;
    f *= double(k + 1);
  }
  return Jet::compose(u, std::span<const double>(t.data(), u.order() + 1));
}

inline Jet cos(const Jet& u) {
  std::array<double, kMaxJetOrder + 1> t{};
  double s = std::sin(u.value()), c = std::cos(u.value()), f = 1.0;
  const double cyc[4] = {c, -s, -c, s};
  for (int k = 0; k <= u.order(); ++k) {
    t[k] = cyc[k % 4] / f;
    f *= double(k + 1);
  }
  return Jet::compose(u, std::span<const double>(t.data(), u.order() + 1));
}

inline Jet sinh(const Jet& u) {
  std::array<double, kMaxJetOrder + 1> t{};
  double s = std::sinh(u.value()), c = std::cosh(u.value()), f = 1.0;
  for (int k = 0; k <= u.order(); ++k) {
    t[k] = (k % 2 == 0 ? s : c) / f;
    f *= double(k + 1);
  }
  return Jet::compose(u, std::span<const double>(t.data(), u.order() + 1));
}

inline Jet cosh(const Jet& u) {
  std::array<double, kMaxJetOrder + 1> t{};
  double s = std::sinh(u.value()), c = std::cosh(u.value()), f = 1.0;
  for (int k = 0; k <= u.order(); ++k) {
    t[k] = (k % 2 == 0 ? c : s) / f;
    f *= double(k + 1);
  }
  return Jet::compose(u, std::span<const double>(t.data(), u.order() + 1));
}

// u^p for real p; requires u > 0.
inline Jet pow(const Jet& u, double p) {
  double v = u.value();
  if (v <= 0.0) throw std::domain_error("jet pow: non-positive base");
  std::array<double, kMaxJetOrder + 1> t{};
  double a = std::pow(v, p), f = 1.0;
  for (int k = 0; k <= u.order(); ++k) {
    t[k] = a / f;
    a *= (p - double(k)) / v;
    f *= double(k + 1);
  }
  return Jet::compose(u, std::span<const double>(t.data(), u.order() + 1));
}

// u^m for integer m, by repeated multiplication (valid at u = 0).
inline Jet powi(const Jet& u, int m) {
  if (m < 0) return reciprocal(powi(u, -m));
  Jet out = Jet::constant(u.layout(), 1.0);
  Jet base = u;
  int e = m;
  while (e > 0) {
    if (e & 1) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

inline Jet sqrt(const Jet& u) { return pow(u, 0.5); }

// Coordinate jets at a point: the inputs every field evaluation starts from.
inline std::vector<Jet> seed_point(std::span<const double> p, int order) {
  const JetLayout& layout = JetLayout::get(int(p.size()), order);
  std::vector<Jet> out;
  out.reserve(p.size());
  for (int i = 0; i < int(p.size()); ++i)
    out.push_back(Jet::variable(layout, i, p[i]));
  return out;
}

}  // namespace qsoliton

#endif  // QSOLITON_JET_HPP
