#pragma once

#include <span>
#include <vector>

namespace pw {

/// Nodes and weights of a quadrature rule on [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;
  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule with n nodes on [a, b]; Newton iteration on the
/// Legendre recurrence, symmetric pairs filled together.
QuadratureRule gauss_legendre(int n, double a, double b);

/// Composite Simpson integral of samples on a uniform grid with spacing h.
/// Requires an odd sample count (even interval count) of at least 3.
double simpson(std::span<const double> f, double h);

/// Simpson integral of the last `tail_points` samples (odd count); used for
/// tail-convergence diagnostics.
double simpson_tail(std::span<const double> f, double h, std::size_t tail_points);

}  // namespace pw
