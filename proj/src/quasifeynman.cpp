#include "semikit/quasifeynman.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semikit {

GridFunction SymmetricScheme::apply_hamiltonian(const GridFunction& f) const
{
  return Complex(-1.0) * apply_L(minus_h_coefficients(), f);
}

OperatorCoefficients SymmetricScheme::minus_h_coefficients() const
{
  const auto& grid = potential.grid();
  GridFunction a(grid), b(grid), c(grid);
  for (int j = 0; j < grid.size(); ++j) {
    a[j] = 1.0;
    c[j] = -potential[j].real();
  }
  return {std::move(a), std::move(b), std::move(c)};
}

SymmetricScheme strang_heat_potential_scheme(const GridFunction& potential)
{
  potential.check_finite();
  double min_v = potential[0].real();
  for (int j = 0; j < potential.size(); ++j) {
    const auto v = potential[j];
    if (v.imag() != 0.0)
      throw std::invalid_argument(fmt::format("potential must be real (node {})", j));
    min_v = std::min(min_v, v.real());
  }

  ChernoffScheme scheme;
  scheme.growth_bound_hint = std::max(0.0, -min_v);
  scheme.is_symmetric = true;
  scheme.label = "strang-heat-potential";
  scheme.step = [potential](double t, const GridFunction& f) {
    require_same_grid(potential.grid(), f.grid(), "strang_heat_potential_scheme");
    const auto& grid = f.grid();
    GridFunction half(grid);
    std::vector<double> damp(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
      damp[j] = std::exp(-0.5 * t * potential[j].real());
      half[j] = damp[j] * f[j];
    }
    auto out = apply_fourier_multiplier(
        half, [&](int k) { return Complex(std::exp(t * grid.second_derivative_symbol(k))); });
    for (int j = 0; j < grid.size(); ++j)
      out[j] *= damp[j];
    return out;
  };
  return {std::move(scheme), potential, TangentSign::minus_h};
}

GridFunction remizov_exponential(const SymmetricScheme& s, double t, double a,
                                 const GridFunction& f, double tol, int max_terms)
{
  if (a == 0.0 || !std::isfinite(a))
    throw std::invalid_argument("remizov_exponential: a must be a nonzero real");
  if (!(tol > 0.0))
    throw std::invalid_argument("remizov_exponential: tol must be positive");
  const double f_norm = l2_norm(f);
  if (f_norm == 0.0)
    return f;

  // term_k = (i a / k) (S(t) - I) term_{k-1}
  const Complex ia(0.0, a);
  GridFunction sum = f;
  GridFunction term = f;
  for (int k = 1; k <= max_terms; ++k) {
    auto next = s.scheme.apply(t, term);
    next -= term;
    next *= ia / static_cast<double>(k);
    if (l2_norm(next) < tol * f_norm)
      return sum;
    sum += next;
    term = std::move(next);
  }
  throw SeriesNotConverged(fmt::format(
      "remizov_exponential: series not converged after {} terms (t={}, a={})", max_terms, t, a));
}

GridFunction quasi_feynman_propagate(const SymmetricScheme& s, double a, double t, int n,
                                     const GridFunction& u0, double tol, int max_terms)
{
  if (n < 1)
    throw std::invalid_argument("quasi_feynman_propagate: n must be at least 1");
  if (!(t >= 0.0))
    throw std::invalid_argument("quasi_feynman_propagate: t must be nonnegative");
  const double step = t / n;
  GridFunction u = u0;
  for (int k = 0; k < n; ++k)
    u = remizov_exponential(s, step, a, u, tol, max_terms);
  return u;
}

}  // namespace semikit
