// Small dense helpers for dimension <= 4: square grids of an arbitrary
// scalar type (double or Jet), Cholesky, Gauss-Jordan inverse, and a Jacobi
// eigensolver for symmetric matrices.

#ifndef QSOLITON_LINALG_HPP
#define QSOLITON_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "jet.hpp"

namespace qsoliton {

using Vec = std::vector<double>;

template <typename T>
struct Grid2 {
  int n = 0;
  std::vector<T> v;
  Grid2() = default;
  Grid2(int n_, const T& init) : n(n_), v(size_t(n_) * n_, init) {}
  T& at(int i, int j) { return v[size_t(i) * n + j]; }
  const T& at(int i, int j) const { return v[size_t(i) * n + j]; }
};

template <typename T>
struct Grid3 {
  int n = 0;
  std::vector<T> v;
  Grid3() = default;
  Grid3(int n_, const T& init) : n(n_), v(size_t(n_) * n_ * n_, init) {}
  T& at(int i, int j, int k) { return v[(size_t(i) * n + j) * n + k]; }
  const T& at(int i, int j, int k) const {
    return v[(size_t(i) * n + j) * n + k];
  }
};

template <typename T>
struct Grid4 {
  int n = 0;
  std::vector<T> v;
  Grid4() = default;
  Grid4(int n_, const T& init) : n(n_), v(size_t(n_) * n_ * n_ * n_, init) {}
  T& at(int i, int j, int k, int l) {
    return v[((size_t(i) * n + j) * n + k) * n + l];
  }
  const T& at(int i, int j, int k, int l) const {
    return v[((size_t(i) * n + j) * n + k) * n + l];
  }
};

// Gauss-Jordan inverse with value-based partial pivoting; works for T = Jet
// (pivot magnitude taken from the order-0 part).
template <typename T>
Grid2<T> inverse(const Grid2<T>& m, const T& zero, const T& one) {
  const int n = m.n;
  Grid2<T> a = m;
  Grid2<T> inv(n, zero);
  for (int i = 0; i < n; ++i) inv.at(i, i) = one;
  auto mag = [](const T& x) {
    if constexpr (std::is_same_v<T, double>) return std::abs(x);
    else return std::abs(x.value());
  };
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (mag(a.at(r, col)) > mag(a.at(piv, col))) piv = r;
    if (mag(a.at(piv, col)) == 0.0)
      throw std::runtime_error("inverse: singular matrix");
    if (piv != col)
      for (int c = 0; c < n; ++c) {
        std::swap(a.at(piv, c), a.at(col, c));
        std::swap(inv.at(piv, c), inv.at(col, c));
      }
    T d = a.at(col, col);
    for (int c = 0; c < n; ++c) {
      a.at(col, c) = a.at(col, c) / d;
      inv.at(col, c) = inv.at(col, c) / d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      T f = a.at(r, col);
      if (mag(f) == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        a.at(r, c) = a.at(r, c) - f * a.at(col, c);
        inv.at(r, c) = inv.at(r, c) - f * inv.at(col, c);
      }
    }
  }
  return inv;
}

inline Grid2<double> inverse(const Grid2<double>& m) {
  return inverse<double>(m, 0.0, 1.0);
}

inline Grid2<Jet> inverse(const Grid2<Jet>& m) {
  const JetLayout& layout = m.at(0, 0).layout();
  return inverse<Jet>(m, Jet::constant(layout, 0.0),
                      Jet::constant(layout, 1.0));
}

// Cholesky of a symmetric matrix; returns false if not positive definite.
inline bool cholesky(const Grid2<double>& m, Grid2<double>* lower = nullptr) {
  const int n = m.n;
  Grid2<double> l(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m.at(i, j);
      for (int k = 0; k < j; ++k) s -= l.at(i, k) * l.at(j, k);
      if (i == j) {
        if (s <= 0.0) return false;
        l.at(i, i) = std::sqrt(s);
      } else {
        l.at(i, j) = s / l.at(j, j);
      }
    }
  }
  if (lower) *lower = l;
  return true;
}

// Eigenvalues (ascending) and eigenvectors (columns) of a symmetric matrix
// by cyclic Jacobi rotations.
inline void sym_eigen(const Grid2<double>& m, std::vector<double>& eval,
                      Grid2<double>* evec = nullptr) {
  const int n = m.n;
  Grid2<double> a = m;
  Grid2<double> v(n, 0.0);
  for (int i = 0; i < n; ++i) v.at(i, i) = 1.0;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a.at(i, j) * a.at(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a.at(p, q)) < 1e-300) continue;
        double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * a.at(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a.at(k, p), akq = a.at(k, q);
          a.at(k, p) = c * akp - s * akq;
          a.at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a.at(p, k), aqk = a.at(q, k);
          a.at(p, k) = c * apk - s * aqk;
          a.at(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v.at(k, p), vkq = v.at(k, q);
          v.at(k, p) = c * vkp - s * vkq;
          v.at(k, q) = s * vkp + c * vkq;
        }
      }
  }
  eval.resize(n);
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](int x, int y) { return a.at(x, x) < a.at(y, y); });
  for (int i = 0; i < n; ++i) eval[i] = a.at(idx[i], idx[i]);
  if (evec) {
    *evec = Grid2<double>(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) evec->at(k, i) = v.at(k, idx[i]);
  }
}

// Eigenvalues of a symmetric (0,2) tensor t relative to the metric g
// (ascending): solves t v = mu g v via the Cholesky factor of g.
inline std::vector<double> g_eigenvalues(const Grid2<double>& g,
                                         const Grid2<double>& t) {
  const int n = g.n;
  Grid2<double> l(n, 0.0);
  if (!cholesky(g, &l))
    throw std::runtime_error("g_eigenvalues: metric not positive definite");
  // m = L^-1 t L^-T by two triangular solves
  Grid2<double> a = t;
  for (int col = 0; col < n; ++col)
    for (int i = 0; i < n; ++i) {
      double s = a.at(i, col);
      for (int k = 0; k < i; ++k) s -= l.at(i, k) * a.at(k, col);
      a.at(i, col) = s / l.at(i, i);
    }
  for (int row = 0; row < n; ++row)
    for (int j = 0; j < n; ++j) {
      double s = a.at(row, j);
      for (int k = 0; k < j; ++k) s -= l.at(j, k) * a.at(row, k);
      a.at(row, j) = s / l.at(j, j);
    }
  std::vector<double> ev;
  sym_eigen(a, ev);
  return ev;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double g_dot(const Grid2<double>& g, const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) s += g.at(i, j) * a[i] * b[j];
  return s;
}

inline double g_norm(const Grid2<double>& g, const Vec& a) {
  return std::sqrt(std::max(0.0, g_dot(g, a, a)));
}

// |T|_g for a (0,1) tensor: sqrt(g^{ij} T_i T_j).
inline double norm_01(const Grid2<double>& ginv, const Vec& t) {
  return std::sqrt(std::max(0.0, g_dot(ginv, t, t)));
}

// |T|_g for a (0,2) tensor: sqrt(g^{ik} g^{jl} T_ij T_kl).
inline double norm_02(const Grid2<double>& ginv, const Grid2<double>& t) {
  const int n = t.n;
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          s += ginv.at(i, k) * ginv.at(j, l) * t.at(i, j) * t.at(k, l);
  return std::sqrt(std::max(0.0, s));
}

// g-inner product of two (0,2) tensors.
inline double inner_02(const Grid2<double>& ginv, const Grid2<double>& a,
                       const Grid2<double>& b) {
  const int n = a.n;
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          s += ginv.at(i, k) * ginv.at(j, l) * a.at(i, j) * b.at(k, l);
  return s;
}

}  // namespace qsoliton

#endif  // QSOLITON_LINALG_HPP
