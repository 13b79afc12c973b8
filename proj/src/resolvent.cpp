#include "semikit/resolvent.hpp"

#include "semikit/quadrature.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace semikit {

double default_t_max(Complex lambda, double growth_bound)
{
  const double margin = lambda.real() - growth_bound;
  if (!(margin > 0.0))
    throw std::invalid_argument("resolvent: Re(lambda) must exceed the growth bound");
  return std::log(1.0 / kLaplaceTruncationTol) / margin;
}

double truncation_estimate(Complex lambda, double growth_bound, double t_max)
{
  return std::exp(-(lambda.real() - growth_bound) * t_max);
}

GridFunction resolvent_solve(const ChernoffScheme& scheme, const ResolventRequest& req)
{
  const double w = scheme.growth_bound_hint;
  if (!(req.lambda.real() > w))
    throw std::invalid_argument(fmt::format(
        "resolvent: Re(lambda) = {} does not exceed growth bound w = {}; the Laplace "
        "integral diverges",
        req.lambda.real(), w));
  if (req.n < 1)
    throw std::invalid_argument("resolvent: n must be at least 1");
  const double t_max = req.quadrature.t_max.value_or(default_t_max(req.lambda, w));
  if (!(t_max > 0.0))
    throw std::invalid_argument("resolvent: t_max must be positive");
  const double tail = truncation_estimate(req.lambda, w, t_max);
  if (tail > kLaplaceTruncationTol)
    throw std::invalid_argument(fmt::format(
        "resolvent: t_max = {} leaves truncation estimate {:.3e} above {:.0e}", t_max, tail,
        kLaplaceTruncationTol));

  const auto rule =
      composite_gauss_legendre(t_max, req.quadrature.panels, req.quadrature.nodes_per_panel);
  GridFunction f(req.g.grid());
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double t = rule.nodes[q];
    const Complex weight = rule.weights[q] * std::exp(-req.lambda * t);
    f += weight * chernoff_iterate(scheme, t, req.n, req.g);
  }
  return f;
}

double elliptic_residual(const OperatorCoefficients& coeffs, Complex lambda,
                         const GridFunction& f, const GridFunction& g)
{
  require_same_grid(f.grid(), g.grid(), "elliptic_residual");
  auto r = lambda * f;
  r -= apply_L(coeffs, f);
  r -= g;
  const double gn = l2_norm(g);
  return gn > 0.0 ? l2_norm(r) / gn : l2_norm(r);
}

}  // namespace semikit
