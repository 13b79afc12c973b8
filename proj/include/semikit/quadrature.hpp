#pragma once

#include <vector>

namespace semikit {

struct QuadratureRule
{
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// M-point Gauss rule for the standard normal density exp(-s^2/2)/sqrt(2 pi).
/// Exact for polynomials of degree <= 2M-1; weights are positive and sum to 1.
QuadratureRule gauss_hermite_normal(int order);

/// M-point Gauss-Legendre rule on [lo, hi].
QuadratureRule gauss_legendre(int order, double lo = -1.0, double hi = 1.0);

/// Composite Gauss-Legendre on [0, t_max]; nodes are returned in ascending order.
QuadratureRule composite_gauss_legendre(double t_max, int panels, int nodes_per_panel);

}  // namespace semikit
