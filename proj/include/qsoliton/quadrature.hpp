// 1-D quadrature rules: composite Simpson with doubling refinement and
// Gauss-Legendre nodes (used by the sphere quadratures).

#ifndef QSOLITON_QUADRATURE_HPP
#define QSOLITON_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace qsoliton {

inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int panels) {
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Refines by doubling until two successive values differ by less than tol.
inline double simpson_adaptive(const std::function<double(double)>& f,
                               double a, double b, double tol = 1e-8,
                               int initial_panels = 1000) {
  double prev = simpson(f, a, b, initial_panels);
  for (int panels = 2 * initial_panels; panels <= 64 * initial_panels;
       panels *= 2) {
    double cur = simpson(f, a, b, panels);
    if (std::abs(cur - prev) < tol) return cur;
    prev = cur;
  }
  return prev;
}

struct GaussRule {
  std::vector<double> nodes, weights;  // on (-1, 1)
};

inline GaussRule gauss_legendre(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        break;
      }
    }
  }
  return r;
}

}  // namespace qsoliton

#endif  // QSOLITON_QUADRATURE_HPP
