#pragma once

#include "semikit/grid.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace semikit::testing {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline SpatialGrid periodic_grid(int n) { return make_grid(0.0, kTwoPi, n); }

/// Random trigonometric polynomial with geometrically decaying modes up to
/// max_mode; real-valued unless complex_values is set.
inline GridFunction random_smooth(const SpatialGrid& grid, std::mt19937_64& rng,
                                  int max_mode = 6, bool complex_values = false)
{
  std::normal_distribution<double> normal;
  std::vector<Complex> amp_cos(max_mode + 1), amp_sin(max_mode + 1);
  for (int k = 0; k <= max_mode; ++k) {
    const double decay = std::exp(-0.5 * k);
    amp_cos[k] = decay * Complex(normal(rng), complex_values ? normal(rng) : 0.0);
    amp_sin[k] = decay * Complex(normal(rng), complex_values ? normal(rng) : 0.0);
  }
  const double scale = kTwoPi / grid.period();
  return sample(grid, [&](double x) {
    Complex v;
    for (int k = 0; k <= max_mode; ++k)
      v += amp_cos[k] * std::cos(k * scale * x) + amp_sin[k] * std::sin(k * scale * x);
    return v;
  });
}

inline GridFunction random_samples(const SpatialGrid& grid, std::mt19937_64& rng)
{
  std::normal_distribution<double> normal;
  GridFunction f(grid);
  for (int j = 0; j < grid.size(); ++j)
    f[j] = Complex(normal(rng), normal(rng));
  return f;
}

inline double max_abs_diff(const GridFunction& a, const GridFunction& b)
{
  return sup_norm(a - b);
}

inline double relative_l2(const GridFunction& a, const GridFunction& b)
{
  return l2_norm(a - b) / l2_norm(b);
}

}  // namespace semikit::testing
