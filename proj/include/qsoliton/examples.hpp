// Closed-form example library: every chart + soliton combination used by the
// verification suite, with product structure, distances, compact quadratures
// and expected-verdict tables.
//
// Sphere factors use stereographic coordinates (projection from the north
// pole, so u = 0 is the south pole); hyperbolic factors use the Poincare
// ball.  Flat coordinates always come last.

#ifndef QSOLITON_EXAMPLES_HPP
#define QSOLITON_EXAMPLES_HPP

#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "quadrature.hpp"
#include "soliton.hpp"

namespace qsoliton {

struct Example {
  std::string name;
  std::shared_ptr<Chart> chart;
  SolitonData soliton;
  std::map<std::string, Verdict> expected;
};

namespace example_detail {

inline std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline std::string radius2(int first, int count) {
  std::ostringstream os;
  for (int i = 0; i < count; ++i)
    os << (i ? " + " : "") << "x" << (first + i + 1) << "^2";
  return os.str();
}

// 4a^2/(1 +- |u|^2)^2 over coordinates [first, first+count)
inline Expression conformal(double a, int first, int count, int dim,
                            bool hyperbolic) {
  std::ostringstream os;
  os << num(4.0 * a * a) << "/(1 " << (hyperbolic ? "-" : "+") << " ("
     << radius2(first, count) << "))^2";
  return Expression(os.str(), dim);
}

inline Grid2<Expression> diag_entries(int dim) {
  Grid2<Expression> e(dim, Expression());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      e.at(i, j) = Expression::constant(i == j ? 1.0 : 0.0, dim);
  return e;
}

// Lift stereographic coordinates to the unit sphere in R^{m+1}.
inline Vec lift_to_sphere(const Vec& u) {
  double r2 = 0.0;
  for (double x : u) r2 += x * x;
  Vec out(u.size() + 1);
  for (size_t i = 0; i < u.size(); ++i) out[i] = 2.0 * u[i] / (1.0 + r2);
  out[u.size()] = (r2 - 1.0) / (1.0 + r2);
  return out;
}

inline double sphere_distance(double a, const Vec& u, const Vec& v) {
  Vec x = lift_to_sphere(u), y = lift_to_sphere(v);
  double c = 0.0;
  for (size_t i = 0; i < x.size(); ++i) c += x[i] * y[i];
  c = std::clamp(c, -1.0, 1.0);
  return a * std::acos(c);
}

inline double hyperbolic_distance(double a, const Vec& u, const Vec& v) {
  double du2 = 0.0, ru = 0.0, rv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    du2 += (u[i] - v[i]) * (u[i] - v[i]);
    ru += u[i] * u[i];
    rv += v[i] * v[i];
  }
  return a * std::acosh(1.0 + 2.0 * du2 / ((1.0 - ru) * (1.0 - rv)));
}

inline Vec head(const Vec& p, int count) {
  return Vec(p.begin(), p.begin() + count);
}
inline Vec tail(const Vec& p, int count) {
  return Vec(p.end() - count, p.end());
}

inline double flat_distance(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Quadrature over S^2(a) in stereographic coordinates: Gauss-Legendre in the
// polar angle, uniform in the azimuth (exact for trigonometric polynomials).
inline CompactInfo sphere2_quadrature(double a, int n_alpha = 24,
                                      int n_phi = 32) {
  CompactInfo ci;
  GaussRule g = gauss_legendre(n_alpha);
  const double pi = std::numbers::pi;
  for (int i = 0; i < n_alpha; ++i) {
    double alpha = 0.5 * pi * (g.nodes[i] + 1.0);  // angle from north pole
    double wa = 0.5 * pi * g.weights[i];
    for (int j = 0; j < n_phi; ++j) {
      double phi = 2.0 * pi * (j + 0.5) / n_phi;
      double s = std::sin(alpha), c = std::cos(alpha);
      Vec u{s * std::cos(phi) / (1.0 - c), s * std::sin(phi) / (1.0 - c)};
      ci.nodes.push_back(u);
      double w = a * a * s * wa * (2.0 * pi / n_phi);
      ci.weights.push_back(w);
      ci.total_volume += w;
    }
  }
  return ci;
}

inline CompactInfo sphere4_quadrature(double a, int n_polar = 10,
                                      int n_phi = 12) {
  CompactInfo ci;
  GaussRule g = gauss_legendre(n_polar);
  const double pi = std::numbers::pi;
  for (int i1 = 0; i1 < n_polar; ++i1) {
    double a1 = 0.5 * pi * (g.nodes[i1] + 1.0);
    double w1 = 0.5 * pi * g.weights[i1];
    for (int i2 = 0; i2 < n_polar; ++i2) {
      double a2 = 0.5 * pi * (g.nodes[i2] + 1.0);
      double w2 = 0.5 * pi * g.weights[i2];
      for (int i3 = 0; i3 < n_polar; ++i3) {
        double a3 = 0.5 * pi * (g.nodes[i3] + 1.0);
        double w3 = 0.5 * pi * g.weights[i3];
        for (int j = 0; j < n_phi; ++j) {
          double phi = 2.0 * pi * (j + 0.5) / n_phi;
          double s1 = std::sin(a1), s2 = std::sin(a2), s3 = std::sin(a3);
          // x5 = cos(a1) is the pole axis
          Vec x{s1 * s2 * s3 * std::cos(phi), s1 * s2 * s3 * std::sin(phi),
                s1 * s2 * std::cos(a3), s1 * std::cos(a2)};
          double denom = 1.0 - std::cos(a1);
          Vec u(4);
          for (int k = 0; k < 4; ++k) u[k] = x[k] / denom;
          ci.nodes.push_back(u);
          double w = std::pow(a, 4) * s1 * s1 * s1 * s2 * s2 * s3 * w1 * w2 *
                     w3 * (2.0 * pi / n_phi);
          ci.weights.push_back(w);
          ci.total_volume += w;
        }
      }
    }
  }
  return ci;
}

using VerdictTable = std::map<std::string, Verdict>;

inline VerdictTable all_pass_table() {
  VerdictTable t;
  for (const char* name :
       {"soliton_residual", "hamilton_scalar", "hamilton_tensor", "f_lambda",
        "laplacian_trace", "rigidity", "trace_bounds", "flatness",
        "compact_identity", "evolution", "shape_eigen", "growth",
        "lower_bound", "coarea", "volume_upper", "volume_lower", "omori"})
    t[name] = Verdict::pass;
  return t;
}

}  // namespace example_detail

// Flat R^n with f = (lambda/2)|x|^2 and q = 0.
inline Example gaussian(int n, double lambda) {
  using namespace example_detail;
  Example e;
  e.name = "gaussian";
  Box box{Vec(n, -400.0), Vec(n, 400.0)};
  auto chart = std::make_shared<Chart>(
      Chart::from_expressions(n, "gaussian", box, diag_entries(n)));
  chart->set_anchor(Vec(n, 0.0));
  chart->set_sample_box(Box{Vec(n, -6.0), Vec(n, 6.0)});
  chart->set_distance(flat_distance);
  chart->set_product(ProductStructure{n, 1.0});
  e.chart = chart;
  e.soliton.chart = chart.get();
  e.soliton.name = "gaussian";
  e.soliton.lambda = lambda;
  e.soliton.Lambda = lambda;
  e.soliton.qspec = QSpec::zero();
  e.soliton.f = ScalarField::from_expression(
      Expression(num(0.5 * lambda) + "*(" + radius2(0, n) + ")", n), "f");
  e.expected = all_pass_table();
  e.expected["compact_identity"] = Verdict::inapplicable;
  if (std::abs(lambda - 0.5) > 1e-12)
    e.expected["omori"] = Verdict::inapplicable;
  return e;
}

// Round S^n(a) (n = 2 or 4), stationary: f = 0, q = ricci,
// lambda = (n-1)/a^2.
inline Example round_sphere(int n, double a) {
  using namespace example_detail;
  if (n != 2 && n != 4)
    throw std::invalid_argument("round_sphere: n must be 2 or 4");
  Example e;
  e.name = "round_sphere";
  CompactInfo ci = n == 2 ? sphere2_quadrature(a) : sphere4_quadrature(a);
  double reach = 0.0;
  for (const Vec& u : ci.nodes)
    for (double x : u) reach = std::max(reach, std::abs(x));
  Box box{Vec(n, -1.1 * reach), Vec(n, 1.1 * reach)};
  Grid2<Expression> entries = diag_entries(n);
  for (int i = 0; i < n; ++i) entries.at(i, i) = conformal(a, 0, n, n, false);
  auto chart = std::make_shared<Chart>(
      Chart::from_expressions(n, "round_sphere", box, entries));
  chart->set_anchor(Vec(n, 0.0));
  chart->set_sample_box(Box{Vec(n, -0.85), Vec(n, 0.85)});
  chart->set_compact(std::move(ci));
  chart->set_distance(
      [a](const Vec& u, const Vec& v) { return sphere_distance(a, u, v); });
  chart->set_injectivity_cap(0.8 * std::numbers::pi * a);
  e.chart = chart;
  e.soliton.chart = chart.get();
  e.soliton.name = "round_sphere";
  e.soliton.lambda = (n - 1) / (a * a);
  e.soliton.Lambda = e.soliton.lambda;
  e.soliton.qspec = QSpec::ricci();
  e.soliton.f = ScalarField::constant(n, 0.0, "f");
  e.expected = all_pass_table();
  e.expected["shape_eigen"] = Verdict::inapplicable;  // f constant
  e.expected["coarea"] = Verdict::inapplicable;
  e.expected["volume_upper"] = Verdict::inapplicable;
  e.expected["volume_lower"] = Verdict::inapplicable;
  if (std::abs(e.soliton.lambda - 0.5) > 1e-12)
    e.expected["omori"] = Verdict::inapplicable;
  return e;
}

// S^2(sqrt 2) x R^k shrinker: lambda = 1/2, f = |x|^2/4 + 1, q = ricci.
inline Example cylinder_shrinker(int k = 2) {
  using namespace example_detail;
  const double a = std::sqrt(2.0);
  const int dim = 2 + k;
  if (dim > kMaxDim)
    throw std::invalid_argument("cylinder_shrinker: dimension above 4");
  Example e;
  e.name = "cylinder_shrinker";
  Box box{Vec(dim, -400.0), Vec(dim, 400.0)};
  Grid2<Expression> entries = diag_entries(dim);
  entries.at(0, 0) = conformal(a, 0, 2, dim, false);
  entries.at(1, 1) = entries.at(0, 0);
  auto chart = std::make_shared<Chart>(
      Chart::from_expressions(dim, "cylinder_shrinker", box, entries));
  chart->set_anchor(Vec(dim, 0.0));
  Box sbox{Vec(dim, -0.85), Vec(dim, 0.85)};
  for (int i = 2; i < dim; ++i) {
    sbox.lo[i] = -6.0;
    sbox.hi[i] = 6.0;
  }
  chart->set_sample_box(sbox);
  chart->set_product(ProductStructure{k, 4.0 * std::numbers::pi * a * a});
  chart->set_distance([a, k](const Vec& u, const Vec& v) {
    double dn = sphere_distance(a, head(u, 2), head(v, 2));
    double df = flat_distance(tail(u, k), tail(v, k));
    return std::sqrt(dn * dn + df * df);
  });
  chart->set_injectivity_cap(0.9 * std::numbers::pi * a);
  e.chart = chart;
  e.soliton.chart = chart.get();
  e.soliton.name = "cylinder_shrinker";
  e.soliton.lambda = 0.5;
  e.soliton.Lambda = 0.5;
  e.soliton.qspec = QSpec::ricci();
  e.soliton.f = ScalarField::from_expression(
      Expression("(" + radius2(2, k) + ")/4 + 1", dim), "f");
  e.expected = all_pass_table();
  e.expected["compact_identity"] = Verdict::inapplicable;
  return e;
}

// N^2(k) x R^2 gradient Bach soliton: q is the Bach tensor,
// lambda = c^2/2, Lambda = c^2, f = (c^2/2)|x|^2, with c^2 computed by the
// engine (k^2/6 analytically).  sign > 0: N = S^2(1); sign < 0: N = H^2(1).
inline Example bach_product(int sign = 1) {
  using namespace example_detail;
  Example e;
  e.name = "bach_product";
  const bool hyp = sign < 0;
  Box box{Vec(4, -400.0), Vec(4, 400.0)};
  if (hyp) {
    box.lo[0] = box.lo[1] = -0.95;
    box.hi[0] = box.hi[1] = 0.95;
  }
  Grid2<Expression> entries = diag_entries(4);
  entries.at(0, 0) = conformal(1.0, 0, 2, 4, hyp);
  entries.at(1, 1) = entries.at(0, 0);
  auto chart = std::make_shared<Chart>(
      Chart::from_expressions(4, "bach_product", box, entries));
  chart->set_anchor(Vec(4, 0.0));
  if (hyp)  // keep the N factor inside the Poincare ball
    chart->set_ball_bound(2, 0.9025);
  Box sbox{Vec{-0.7, -0.7, -6.0, -6.0}, Vec{0.7, 0.7, 6.0, 6.0}};
  chart->set_sample_box(sbox);
  const double voln = hyp ? 1.0 : 4.0 * std::numbers::pi;
  chart->set_product(ProductStructure{2, voln});
  chart->set_distance([hyp](const Vec& u, const Vec& v) {
    double dn = hyp ? hyperbolic_distance(1.0, head(u, 2), head(v, 2))
                    : sphere_distance(1.0, head(u, 2), head(v, 2));
    double df = flat_distance(tail(u, 2), tail(v, 2));
    return std::sqrt(dn * dn + df * df);
  });
  chart->set_injectivity_cap(hyp ? 6.0 : 0.9 * std::numbers::pi);
  const double c2 = 1.0 / 6.0;  // k^2/6 for |sec| = 1
  e.chart = chart;
  e.soliton.chart = chart.get();
  e.soliton.name = "bach_product";
  e.soliton.lambda = 0.5 * c2;
  e.soliton.Lambda = c2;
  e.soliton.qspec = QSpec::bach();
  e.soliton.f = ScalarField::from_expression(
      Expression(num(0.5 * c2) + "*(" + radius2(2, 2) + ")", 4), "f");
  e.expected = all_pass_table();
  e.expected["hamilton_scalar"] = Verdict::fail;
  e.expected["hamilton_tensor"] = Verdict::fail;
  e.expected["laplacian_trace"] = Verdict::inapplicable;
  e.expected["trace_bounds"] = Verdict::inapplicable;
  e.expected["flatness"] = Verdict::inapplicable;
  e.expected["compact_identity"] = Verdict::inapplicable;
  e.expected["evolution"] = Verdict::inapplicable;
  e.expected["coarea"] = Verdict::inapplicable;
  e.expected["volume_upper"] = Verdict::inapplicable;
  e.expected["volume_lower"] = Verdict::inapplicable;
  e.expected["omori"] = Verdict::inapplicable;
  return e;
}

// Rigid soliton S^2(radius_N) x R^k with f = (Lambda/2)|x|^2 + L.x + b on the
// flat factor and the induced q = -2 Lambda g_N (lambda = Lambda).
inline Example rigid_factory(double radius_n, int k, double Lambda,
                             const Vec& L, double b) {
  using namespace example_detail;
  const int dim = 2 + k;
  if (dim > kMaxDim)
    throw std::invalid_argument("rigid_factory: dimension above 4");
  if (int(L.size()) != k)
    throw std::invalid_argument("rigid_factory: linear part size mismatch");
  Example e;
  e.name = "rigid_generic";
  const double a = radius_n;
  Box box{Vec(dim, -400.0), Vec(dim, 400.0)};
  Grid2<Expression> entries = diag_entries(dim);
  entries.at(0, 0) = conformal(a, 0, 2, dim, false);
  entries.at(1, 1) = entries.at(0, 0);
  auto chart = std::make_shared<Chart>(
      Chart::from_expressions(dim, "rigid_generic", box, entries));
  chart->set_anchor(Vec(dim, 0.0));
  Box sbox{Vec(dim, -0.85), Vec(dim, 0.85)};
  for (int i = 2; i < dim; ++i) {
    sbox.lo[i] = -6.0;
    sbox.hi[i] = 6.0;
  }
  chart->set_sample_box(sbox);
  chart->set_product(ProductStructure{k, 4.0 * std::numbers::pi * a * a});
  chart->set_distance([a, k](const Vec& u, const Vec& v) {
    double dn = sphere_distance(a, head(u, 2), head(v, 2));
    double df = flat_distance(tail(u, k), tail(v, k));
    return std::sqrt(dn * dn + df * df);
  });
  chart->set_injectivity_cap(0.9 * std::numbers::pi * a);
  e.chart = chart;
  e.soliton.chart = chart.get();
  e.soliton.name = "rigid_generic";
  e.soliton.lambda = Lambda;
  e.soliton.Lambda = Lambda;
  // q = -2 Lambda g_N, zero on the flat factor
  Grid2<Expression> qe(dim, Expression());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      qe.at(i, j) = Expression::constant(0.0, dim);
  {
    std::ostringstream os;
    os << num(-2.0 * Lambda) << "*(" << entries.at(0, 0).text() << ")";
    qe.at(0, 0) = Expression(os.str(), dim);
    qe.at(1, 1) = qe.at(0, 0);
  }
  e.soliton.qspec = QSpec::custom(qe);
  {
    std::ostringstream os;
    os << num(0.5 * Lambda) << "*(" << radius2(2, k) << ")";
    for (int i = 0; i < k; ++i)
      if (L[i] != 0.0) os << " + " << num(L[i]) << "*x" << (3 + i);
    os << " + " << num(b);
    e.soliton.f = ScalarField::from_expression(Expression(os.str(), dim), "f");
  }
  e.expected = all_pass_table();
  e.expected["compact_identity"] = Verdict::inapplicable;
  if (std::abs(Lambda - 0.5) > 1e-12)
    e.expected["omori"] = Verdict::inapplicable;
  return e;
}

// Hyperbolic space H^n(1) as a stationary expander: q = ricci,
// lambda = -(n-1), f = 0.
inline Example hyperbolic_expander(int n) {
  using namespace example_detail;
  Example e;
  e.name = "hyperbolic_expander";
  Box box{Vec(n, -0.95), Vec(n, 0.95)};
  Grid2<Expression> entries = diag_entries(n);
  for (int i = 0; i < n; ++i) entries.at(i, i) = conformal(1.0, 0, n, n, true);
  auto chart = std::make_shared<Chart>(
      Chart::from_expressions(n, "hyperbolic_expander", box, entries));
  chart->set_anchor(Vec(n, 0.0));
  chart->set_ball_bound(n, 0.9025);
  chart->set_sample_box(Box{Vec(n, -0.7), Vec(n, 0.7)});
  chart->set_distance([](const Vec& u, const Vec& v) {
    return hyperbolic_distance(1.0, u, v);
  });
  e.chart = chart;
  e.soliton.chart = chart.get();
  e.soliton.name = "hyperbolic_expander";
  e.soliton.lambda = -(n - 1.0);
  e.soliton.Lambda = e.soliton.lambda;
  e.soliton.qspec = QSpec::ricci();
  e.soliton.f = ScalarField::constant(n, 0.0, "f");
  e.expected = all_pass_table();
  e.expected["compact_identity"] = Verdict::inapplicable;
  e.expected["shape_eigen"] = Verdict::inapplicable;
  e.expected["growth"] = Verdict::inapplicable;
  e.expected["lower_bound"] = Verdict::inapplicable;
  e.expected["coarea"] = Verdict::inapplicable;
  e.expected["volume_upper"] = Verdict::inapplicable;
  e.expected["volume_lower"] = Verdict::inapplicable;
  e.expected["omori"] = Verdict::inapplicable;
  return e;
}

inline std::vector<std::string> example_names() {
  return {"gaussian",     "round_sphere",       "cylinder_shrinker",
          "bach_product", "rigid_generic",      "hyperbolic_expander"};
}

struct ExampleParams {
  int dim = 2;
  double lambda = 0.5;
  double radius = std::sqrt(2.0);
  int flat_dims = 2;
  int sign = 1;
  double Lambda = 0.5;
  Vec linear;
  double offset = 1.0;
};

inline Example build_example(const std::string& name,
                             const ExampleParams& p = {}) {
  if (name == "gaussian") return gaussian(p.dim, p.lambda);
  if (name == "round_sphere") return round_sphere(p.dim, p.radius);
  if (name == "cylinder_shrinker") return cylinder_shrinker(p.flat_dims);
  if (name == "bach_product") return bach_product(p.sign);
  if (name == "rigid_generic") {
    Vec L = p.linear;
    L.resize(p.flat_dims, 0.0);
    return rigid_factory(p.radius, p.flat_dims, p.Lambda, L, p.offset);
  }
  if (name == "hyperbolic_expander") return hyperbolic_expander(p.dim);
  throw std::invalid_argument("unknown example: " + name);
}

}  // namespace qsoliton

#endif  // QSOLITON_EXAMPLES_HPP
