// Levi-Civita pipeline on jet charts: Christoffels, Riemann, Ricci, scalar
// curvature, covariant derivatives, Hessians and Laplacians.
//
// Conventions (fixed once for the whole library):
//   R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z,
//   R^l_{ijk} = component l of R(d_i, d_j) d_k,
//   Ric_{jk}  = R^i_{ijk}        (trace on first/last slots),
//   R_{ijkl}  = g(R(d_i,d_j) d_l, d_k)   (so R_{ijij} > 0 on the sphere).
// Under these conventions constant curvature K gives
//   R(X,Y)Z = K ( <Y,Z> X - <X,Z> Y ).

#ifndef QSOLITON_CURVATURE_HPP
#define QSOLITON_CURVATURE_HPP

#include <optional>

#include "fields.hpp"
#include "linalg.hpp"

namespace qsoliton {

// All curvature data of a chart at one point, carried as jets so that
// downstream consumers can take further covariant derivatives.
class Geometry {
 public:
  Geometry(const Chart& chart, const Vec& p, int metric_order)
      : chart_(&chart), p_(p), m_(metric_order),
        g_(chart.metric_jets(p, metric_order)) {
    ginv_ = inverse(g_);
    if (m_ >= 1) compute_gamma();
  }

  const Chart& chart() const { return *chart_; }
  const Vec& point() const { return p_; }
  int dim() const { return chart_->dim(); }
  int metric_order() const { return m_; }

  const Grid2<Jet>& g() const { return g_; }
  const Grid2<Jet>& ginv() const { return ginv_; }
  // Gamma^k_{ij} at (k,i,j); jets of order metric_order-1.
  const Grid3<Jet>& gamma() const { return gamma_; }

  Grid2<double> g0() const { return values(g_); }
  Grid2<double> ginv0() const { return values(ginv_); }

  // R^l_{ijk} at (l,i,j,k); jets of order metric_order-2.
  const Grid4<Jet>& riemann_up() const {
    if (!riem_) compute_riemann();
    return *riem_;
  }

  const Grid2<Jet>& ricci() const {
    if (!ricci_) {
      const Grid4<Jet>& R = riemann_up();
      const int n = dim();
      Grid2<Jet> ric(n, zero(m_ - 2));
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int i = 0; i < n; ++i) ric.at(j, k) += R.at(i, i, j, k);
      ricci_ = std::move(ric);
    }
    return *ricci_;
  }

  const Jet& scalar() const {
    if (!scalar_) {
      const Grid2<Jet>& ric = ricci();
      const int n = dim();
      Jet s = zero(m_ - 2);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          s += ginv_.at(i, j).truncated(m_ - 2) * ric.at(i, j);
      scalar_ = std::move(s);
    }
    return *scalar_;
  }

  // Lowered Riemann R_{ijkl} = g_{km} R^m_{ijl}; R_{ijij} > 0 on the sphere.
  Grid4<Jet> riemann_low() const {
    const Grid4<Jet>& R = riemann_up();
    const int n = dim();
    const int ord = m_ - 2;
    Grid4<Jet> low(n, zero(ord));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            Jet s = zero(ord);
            for (int mm = 0; mm < n; ++mm)
              s += g_.at(k, mm).truncated(ord) * R.at(mm, i, j, l);
            low.at(i, j, k, l) = std::move(s);
          }
    return low;
  }

  Jet zero(int order) const {
    return Jet::constant(JetLayout::get(dim(), order), 0.0);
  }

 private:
  static Grid2<double> values(const Grid2<Jet>& a) {
    Grid2<double> out(a.n, 0.0);
    for (int i = 0; i < a.n; ++i)
      for (int j = 0; j < a.n; ++j) out.at(i, j) = a.at(i, j).value();
    return out;
  }

  void compute_gamma() {
    const int n = dim();
    const int ord = m_ - 1;
    gamma_ = Grid3<Jet>(n, zero(ord));
    Grid3<Jet> dg(n, zero(ord));  // dg(i,j,l) = d_l g_{ij}
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          Jet d = g_.at(i, j).derivative(l);
          dg.at(i, j, l) = d;
          dg.at(j, i, l) = d;
        }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Jet s = zero(ord);
          for (int l = 0; l < n; ++l)
            s += ginv_.at(k, l).truncated(ord) *
                 (dg.at(j, l, i) + dg.at(i, l, j) - dg.at(i, j, l));
          s *= 0.5;
          gamma_.at(k, i, j) = s;
          gamma_.at(k, j, i) = std::move(s);
        }
  }

  void compute_riemann() const {
    if (m_ < 2)
      throw std::logic_error("Geometry: curvature needs metric order >= 2");
    const int n = dim();
    const int ord = m_ - 2;
    Grid4<Jet> R(n, zero(ord));
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
          for (int k = 0; k < n; ++k) {
            Jet s = gamma_.at(l, j, k).derivative(i) -
                    gamma_.at(l, i, k).derivative(j);
            for (int mm = 0; mm < n; ++mm)
              s += gamma_.at(l, i, mm).truncated(ord) *
                       gamma_.at(mm, j, k).truncated(ord) -
                   gamma_.at(l, j, mm).truncated(ord) *
                       gamma_.at(mm, i, k).truncated(ord);
            R.at(l, i, j, k) = s;
            R.at(l, j, i, k) = -s;
          }
    riem_ = std::move(R);
  }

  const Chart* chart_;
  Vec p_;
  int m_;
  Grid2<Jet> g_, ginv_;
  Grid3<Jet> gamma_;
  mutable std::optional<Grid4<Jet>> riem_;
  mutable std::optional<Grid2<Jet>> ricci_;
  mutable std::optional<Jet> scalar_;
};

// ---------------------------------------------------------------------------
// Covariant derivative helpers (jet level).

// nabla_i omega_j for a (0,1) field given as jets.
inline Grid2<Jet> cov_deriv_01(const Geometry& geom,
                               const std::vector<Jet>& omega) {
  const int n = geom.dim();
  const int ord = omega[0].order() - 1;
  Grid2<Jet> out(n, geom.zero(ord));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet s = omega[j].derivative(i);
      for (int m = 0; m < n; ++m)
        s -= geom.gamma().at(m, i, j).truncated(ord) * omega[m].truncated(ord);
      out.at(i, j) = std::move(s);
    }
  return out;
}

// nabla_i T_{jk} for a (0,2) field given as jets; result at (i,j,k).
inline Grid3<Jet> cov_deriv_02(const Geometry& geom, const Grid2<Jet>& t) {
  const int n = geom.dim();
  const int ord = t.at(0, 0).order() - 1;
  Grid3<Jet> out(n, geom.zero(ord));
  const Grid3<Jet>& ga = geom.gamma();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Jet s = t.at(j, k).derivative(i);
        for (int m = 0; m < n; ++m)
          s -= ga.at(m, i, j).truncated(ord) * t.at(m, k).truncated(ord) +
               ga.at(m, i, k).truncated(ord) * t.at(j, m).truncated(ord);
        out.at(i, j, k) = std::move(s);
      }
  return out;
}

// Covariant Hessian of a scalar jet: (Hess f)_{ij} = d_i d_j f - Gamma^k_{ij} d_k f.
inline Grid2<Jet> hessian_jets(const Geometry& geom, const Jet& f) {
  const int n = geom.dim();
  const int ord = f.order() - 2;
  if (ord < 0) throw std::logic_error("hessian_jets: scalar jet order < 2");
  Grid2<Jet> out(n, geom.zero(ord));
  std::vector<Jet> df;
  df.reserve(n);
  for (int i = 0; i < n; ++i) df.push_back(f.derivative(i));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Jet s = df[i].derivative(j);
      for (int k = 0; k < n; ++k)
        s -= geom.gamma().at(k, i, j).truncated(ord) * df[k].truncated(ord);
      out.at(i, j) = s;
      out.at(j, i) = std::move(s);
    }
  return out;
}

// g-trace of a (0,2) jet grid.
inline Jet trace_02(const Geometry& geom, const Grid2<Jet>& t) {
  const int n = geom.dim();
  const int ord = t.at(0, 0).order();
  Jet s = geom.zero(ord);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s += geom.ginv().at(i, j).truncated(ord) * t.at(i, j);
  return s;
}

// (div T)_l = g^{ij} nabla_i T_{jl} as jets.
inline std::vector<Jet> divergence_02_jets(const Geometry& geom,
                                           const Grid2<Jet>& t) {
  const int n = geom.dim();
  Grid3<Jet> dt = cov_deriv_02(geom, t);
  const int ord = dt.at(0, 0, 0).order();
  std::vector<Jet> out(n, geom.zero(ord));
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out[l] += geom.ginv().at(i, j).truncated(ord) * dt.at(i, j, l);
  return out;
}

// Raised gradient (values): grad^i f = g^{ij} d_j f.
inline Vec gradient_raised(const Geometry& geom, const Jet& f) {
  const int n = geom.dim();
  Vec out(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out[i] += geom.ginv().at(i, j).value() * f.partial(j);
  return out;
}

// ---------------------------------------------------------------------------
// Point-level operations (the public surface of the jet-charts module).

struct CurvatureBundle {
  Grid3<double> christoffel;  // Gamma^k_{ij} at (k,i,j)
  Grid4<double> riemann;      // R^l_{ijk} at (l,i,j,k)
  Grid2<double> ricci;
  double scalar = 0.0;
};

inline CurvatureBundle curvature_at(const Chart& chart, const Vec& p) {
  Geometry geom(chart, p, 2);
  const int n = chart.dim();
  CurvatureBundle out;
  out.christoffel = Grid3<double>(n, 0.0);
  out.riemann = Grid4<double>(n, 0.0);
  out.ricci = Grid2<double>(n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.christoffel.at(k, i, j) = geom.gamma().at(k, i, j).value();
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          out.riemann.at(l, i, j, k) = geom.riemann_up().at(l, i, j, k).value();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.ricci.at(i, j) = geom.ricci().at(i, j).value();
  out.scalar = geom.scalar().value();
  return out;
}

inline Grid2<double> hessian(const Chart& chart, const ScalarField& f,
                             const Vec& p) {
  Geometry geom(chart, p, 1);
  Grid2<Jet> h = hessian_jets(geom, f.jet(p, 2));
  const int n = chart.dim();
  Grid2<double> out(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = h.at(i, j).value();
  return out;
}

inline double laplacian(const Chart& chart, const ScalarField& u,
                        const Vec& p) {
  Geometry geom(chart, p, 1);
  return trace_02(geom, hessian_jets(geom, u.jet(p, 2))).value();
}

// Drift Laplacian: Delta u - <grad f, grad u>.
inline double f_laplacian(const Chart& chart, const ScalarField& u,
                          const ScalarField& f, const Vec& p) {
  Geometry geom(chart, p, 1);
  double lap = trace_02(geom, hessian_jets(geom, u.jet(p, 2))).value();
  Vec du = u.partials(p), df = f.partials(p);
  double cross = 0.0;
  for (int i = 0; i < chart.dim(); ++i)
    for (int j = 0; j < chart.dim(); ++j)
      cross += geom.ginv().at(i, j).value() * df[i] * du[j];
  return lap - cross;
}

inline Vec divergence_02(const Chart& chart, const TensorField& t,
                         const Vec& p) {
  t.require_valence02();
  Geometry geom(chart, p, 2);
  std::vector<Jet> d = divergence_02_jets(geom, t.jets(p, 1));
  Vec out(chart.dim());
  for (int i = 0; i < chart.dim(); ++i) out[i] = d[i].value();
  return out;
}

// R(X, grad f) grad f as contravariant components, or nullopt at a critical
// point of f (|grad f| below `critical_tol`).
inline std::optional<Vec> radial_curvature(const Chart& chart,
                                           const ScalarField& f, const Vec& p,
                                           const Vec& x,
                                           double critical_tol = 1e-10) {
  Geometry geom(chart, p, 2);
  Jet fj = f.jet(p, 1);
  Vec gf = gradient_raised(geom, fj);
  if (g_norm(geom.g0(), gf) <= critical_tol) return std::nullopt;
  const int n = chart.dim();
  Vec out(n, 0.0);
  const Grid4<Jet>& R = geom.riemann_up();
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          out[l] += R.at(l, i, j, k).value() * x[i] * gf[j] * gf[k];
  return out;
}

}  // namespace qsoliton

#endif  // QSOLITON_CURVATURE_HPP
