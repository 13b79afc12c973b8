#pragma once

#include "semikit/chernoff.hpp"

#include <optional>

namespace semikit {

/// Composite Gauss-Legendre parameters for the Laplace integral on [0, t_max].
struct LaplaceQuadrature
{
  /// Unset means ln(1e10) / (Re(lambda) - w).
  std::optional<double> t_max;
  int panels = 16;
  int nodes_per_panel = 8;
};

/// (lambda - L) f = g, with f recovered from the Laplace transform of the
/// Chernoff-approximated semigroup.
struct ResolventRequest
{
  Complex lambda;
  GridFunction g;
  int n = 64;  // Chernoff steps per time sample
  LaplaceQuadrature quadrature;
};

inline constexpr double kLaplaceTruncationTol = 1e-10;

double default_t_max(Complex lambda, double growth_bound);

/// exp(-(Re(lambda) - w) t_max): bound on the neglected tail relative to the
/// scale of the integrand.
double truncation_estimate(Complex lambda, double growth_bound, double t_max);

/// f = sum_q omega_q exp(-lambda t_q) C(t_q/n)^n g, summed in ascending t_q.
/// Throws when Re(lambda) <= w of the scheme or when t_max leaves a tail
/// estimate above 1e-10.
GridFunction resolvent_solve(const ChernoffScheme& scheme, const ResolventRequest& req);

/// ||lambda f - L f - g||_2 / ||g||_2, or the absolute residual when g = 0.
double elliptic_residual(const OperatorCoefficients& coeffs, Complex lambda,
                         const GridFunction& f, const GridFunction& g);

}  // namespace semikit
