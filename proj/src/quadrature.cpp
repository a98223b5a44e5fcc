#include "pilotwave/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pw {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));

  const double xm = 0.5 * (b + a);
  const double xl = 0.5 * (b - a);
  const int m = (n + 1) / 2;

  for (int i = 0; i < m; ++i) {
    // Chebyshev-point starting guess for the i-th positive root.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= 1e-15) break;
    }
    const double w = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    rule.nodes[static_cast<std::size_t>(i)] = xm - xl * z;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = xm + xl * z;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("simpson: need an odd sample count >= 3");
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i + 1 < n; i += 2) odd += f[i];
  for (std::size_t i = 2; i + 1 < n; i += 2) even += f[i];
  return h / 3.0 * (f[0] + f[n - 1] + 4.0 * odd + 2.0 * even);
}

double simpson_tail(std::span<const double> f, double h, std::size_t tail_points) {
  const std::size_t n = f.size();
  if (tail_points > n) tail_points = n;
  if (tail_points % 2 == 0) ++tail_points;  // keep interval count even
  if (tail_points < 3 || tail_points > n) throw std::invalid_argument("simpson_tail: bad window");
  return simpson(f.subspan(n - tail_points), h);
}

}  // namespace pw
