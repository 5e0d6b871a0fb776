// Registry of flow tensors q: zero, Ricci (q = -2 Ric), Bourguignon
// (q = -2(Ric - rho R g)), Bach (dimension 4), and custom expression tables.
// Also the Weyl decomposition and the Bach tensor itself.

#ifndef QSOLITON_QTENSOR_HPP
#define QSOLITON_QTENSOR_HPP

#include <cmath>
#include <optional>
#include <string>

#include "curvature.hpp"

namespace qsoliton {

// Weyl tensor as jets, same index layout as Geometry::riemann_low:
// W(i,j,k,l) antisymmetric in (i,j) and (k,l).  Requires dim >= 3.
inline Grid4<Jet> weyl_jets(const Geometry& geom) {
  const int n = geom.dim();
  if (n < 3) throw std::invalid_argument("weyl_jets: dimension must be >= 3");
  const int ord = geom.metric_order() - 2;
  Grid4<Jet> w = geom.riemann_low();
  const Grid2<Jet>& ric = geom.ricci();
  const Jet R = geom.scalar();

  // Schouten tensor P = (Ric - R g / (2(n-1))) / (n-2)
  Grid2<Jet> pg(n, geom.zero(ord));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      pg.at(i, j) = (ric.at(i, j) - geom.g().at(i, j).truncated(ord) * R *
                                        (0.5 / (n - 1))) *
                    (1.0 / (n - 2));

  auto g = [&](int i, int j) { return geom.g().at(i, j).truncated(ord); };
  // Kulkarni-Nomizu product P ox g, subtracted from Riemann
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          w.at(i, j, k, l) -= pg.at(i, k) * g(j, l) + pg.at(j, l) * g(i, k) -
                              pg.at(i, l) * g(j, k) - pg.at(j, k) * g(i, l);
  return w;
}

namespace bach_detail {

// nabla_m T_{kijl} contracted immediately against g^{lm}; never materializes
// the rank-5 derivative.  Result D_{kij} = nabla^l T_{kijl}.
inline Grid3<Jet> divergence_last_slot(const Geometry& geom,
                                       const Grid4<Jet>& t) {
  const int n = geom.dim();
  const int ord = t.at(0, 0, 0, 0).order() - 1;
  Grid3<Jet> out(n, geom.zero(ord));
  const Grid3<Jet>& ga = geom.gamma();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Jet s = geom.zero(ord);
        for (int m = 0; m < n; ++m)
          for (int l = 0; l < n; ++l) {
            Jet d = t.at(k, i, j, l).derivative(m);
            for (int a = 0; a < n; ++a)
              d -= ga.at(a, m, k).truncated(ord) *
                       t.at(a, i, j, l).truncated(ord) +
                   ga.at(a, m, i).truncated(ord) *
                       t.at(k, a, j, l).truncated(ord) +
                   ga.at(a, m, j).truncated(ord) *
                       t.at(k, i, a, l).truncated(ord) +
                   ga.at(a, m, l).truncated(ord) *
                       t.at(k, i, j, a).truncated(ord);
            s += geom.ginv().at(l, m).truncated(ord) * d;
          }
        out.at(k, i, j) = std::move(s);
      }
  return out;
}

// nabla^k D_{kij} (divergence on the first slot of a (0,3) field).
inline Grid2<Jet> divergence_first_slot(const Geometry& geom,
                                        const Grid3<Jet>& d) {
  const int n = geom.dim();
  const int ord = d.at(0, 0, 0).order() - 1;
  Grid2<Jet> out(n, geom.zero(ord));
  const Grid3<Jet>& ga = geom.gamma();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet s = geom.zero(ord);
      for (int a = 0; a < n; ++a)
        for (int k = 0; k < n; ++k) {
          Jet dd = d.at(k, i, j).derivative(a);
          for (int b = 0; b < n; ++b)
            dd -= ga.at(b, a, k).truncated(ord) *
                      d.at(b, i, j).truncated(ord) +
                  ga.at(b, a, i).truncated(ord) *
                      d.at(k, b, j).truncated(ord) +
                  ga.at(b, a, j).truncated(ord) *
                      d.at(k, i, b).truncated(ord);
          s += geom.ginv().at(k, a).truncated(ord) * dd;
        }
      out.at(i, j) = std::move(s);
    }
  return out;
}

}  // namespace bach_detail

// Bach tensor jets: B_{ij} = nabla^k nabla^l W_{kijl} + (1/2) R^{kl} W_{kijl}.
// Needs metric jets of order out_order + 4; dimension must be 4.
inline Grid2<Jet> bach_jets(const Geometry& geom, int out_order) {
  const int n = geom.dim();
  if (n != 4)
    throw std::invalid_argument("bach tensor requires a 4-dimensional chart");
  if (geom.metric_order() < out_order + 4)
    throw std::logic_error("bach_jets: metric order too low");
  Grid4<Jet> w = weyl_jets(geom);
  Grid3<Jet> d = bach_detail::divergence_last_slot(geom, w);
  Grid2<Jet> b = bach_detail::divergence_first_slot(geom, d);
  const int ord = out_order;
  // raised Ricci R^{kl}
  Grid2<Jet> ricup(n, geom.zero(ord));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      Jet s = geom.zero(ord);
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
          s += geom.ginv().at(k, a).truncated(ord) *
               geom.ginv().at(l, c).truncated(ord) *
               geom.ricci().at(a, c).truncated(ord);
      ricup.at(k, l) = std::move(s);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet s = b.at(i, j).truncated(ord);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          s += 0.5 * ricup.at(k, l) * w.at(k, i, j, l).truncated(ord);
      b.at(i, j) = std::move(s);
    }
  return b;
}

inline Grid2<double> bach_tensor(const Chart& chart, const Vec& p) {
  Geometry geom(chart, p, 4);
  Grid2<Jet> b = bach_jets(geom, 0);
  const int n = chart.dim();
  Grid2<double> out(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = b.at(i, j).value();
  return out;
}

// ---------------------------------------------------------------------------

enum class QKind { zero, ricci, bourguignon, bach, custom };

struct QSpec {
  QKind kind = QKind::zero;
  double rho = 0.0;                          // bourguignon only
  std::optional<Grid2<Expression>> custom_entries;

  static QSpec zero() { return {}; }
  static QSpec ricci() { return {QKind::ricci}; }
  static QSpec bourguignon(double rho) { return {QKind::bourguignon, rho}; }
  static QSpec bach() { return {QKind::bach}; }
  static QSpec custom(Grid2<Expression> entries) {
    QSpec s{QKind::custom};
    s.custom_entries = std::move(entries);
    return s;
  }

  std::string describe() const {
    switch (kind) {
      case QKind::zero: return "zero";
      case QKind::ricci: return "ricci";
      case QKind::bourguignon: {
        std::ostringstream os;
        os.precision(17);
        os << "bourguignon rho=" << rho;
        return os.str();
      }
      case QKind::bach: return "bach";
      case QKind::custom: return "custom";
    }
    return "?";
  }
};

struct QFields {
  QSpec spec;
  TensorField q;       // symmetric (0,2)
  ScalarField trace;   // tr_g q
  ScalarField norm2;   // |q|_g^2
  int max_jet_order = 0;
};

// Builds the q tensor and its derived scalars on a chart.  The chart must
// outlive the returned fields.
inline QFields instantiate(const QSpec& spec, const Chart& chart) {
  const Chart* ch = &chart;
  const int dim = chart.dim();
  TensorField q;
  int max_order = 0;
  switch (spec.kind) {
    case QKind::zero:
      q = TensorField::zero02(dim, "q:zero");
      max_order = kMaxJetOrder;
      break;
    case QKind::ricci:
      max_order = kMaxJetOrder - 2;
      q = TensorField::symmetric02(
          [ch](const Vec& p, int order) {
            Geometry geom(*ch, p, order + 2);
            Grid2<Jet> out = geom.ricci();
            for (Jet& j : out.v) j *= -2.0;
            return out;
          },
          max_order, "q:ricci");
      break;
    case QKind::bourguignon: {
      const double rho = spec.rho;
      max_order = kMaxJetOrder - 2;
      q = TensorField::symmetric02(
          [ch, rho](const Vec& p, int order) {
            Geometry geom(*ch, p, order + 2);
            Grid2<Jet> out = geom.ricci();
            const Jet& R = geom.scalar();
            const int n = geom.dim();
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j) {
                Jet v = out.at(i, j) -
                        rho * R * geom.g().at(i, j).truncated(R.order());
                v *= -2.0;
                out.at(i, j) = std::move(v);
              }
            return out;
          },
          max_order, "q:bourguignon");
      break;
    }
    case QKind::bach:
      if (dim != 4)
        throw std::invalid_argument(
            "q kind 'bach' requires a 4-dimensional chart");
      max_order = kMaxJetOrder - 4;
      q = TensorField::symmetric02(
          [ch](const Vec& p, int order) {
            Geometry geom(*ch, p, order + 4);
            return bach_jets(geom, order);
          },
          max_order, "q:bach");
      break;
    case QKind::custom: {
      if (!spec.custom_entries)
        throw std::invalid_argument("custom q without entries");
      auto entries =
          std::make_shared<Grid2<Expression>>(*spec.custom_entries);
      if (entries->n != dim)
        throw std::invalid_argument("custom q dimension mismatch");
      max_order = kMaxJetOrder;
      q = TensorField::symmetric02(
          [entries, dim](const Vec& p, int order) {
            std::vector<Jet> x = seed_point(p, order);
            Grid2<Jet> out(dim, Jet::constant(x[0].layout(), 0.0));
            for (int i = 0; i < dim; ++i)
              for (int j = i; j < dim; ++j) {
                Jet v = entries->at(i, j)(x);
                out.at(i, j) = v;
                out.at(j, i) = std::move(v);
              }
            return out;
          },
          max_order, "q:custom");
      break;
    }
  }

  QFields out;
  out.spec = spec;
  out.q = q;
  out.max_jet_order = max_order;
  out.trace = ScalarField(
      [ch, q](const Vec& p, int order) {
        Geometry geom(*ch, p, order);
        return trace_02(geom, q.jets(p, order));
      },
      "tr q");
  out.norm2 = ScalarField(
      [ch, q](const Vec& p, int order) {
        Geometry geom(*ch, p, order);
        Grid2<Jet> qj = q.jets(p, order);
        const int n = geom.dim();
        Jet s = geom.zero(order);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              for (int l = 0; l < n; ++l)
                s += geom.ginv().at(i, k).truncated(order) *
                     geom.ginv().at(j, l).truncated(order) * qj.at(i, j) *
                     qj.at(k, l);
        return s;
      },
      "|q|^2");
  return out;
}

// Q(grad f) as contravariant components: g^{ik} q_{kj} g^{jl} d_l f.
inline Vec q_of_gradient(const Geometry& geom, const Grid2<Jet>& q,
                         const Jet& f) {
  const int n = geom.dim();
  Vec gf = gradient_raised(geom, f);
  Vec out(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        out[i] += geom.ginv().at(i, k).value() * q.at(k, j).value() * gf[j];
  return out;
}

}  // namespace qsoliton

#endif  // QSOLITON_QTENSOR_HPP
