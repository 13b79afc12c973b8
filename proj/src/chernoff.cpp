#include "semikit/chernoff.hpp"

#include "semikit/fit.hpp"
#include "semikit/quadrature.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semikit {

namespace {

void require_parabolic(const OperatorCoefficients& coeffs, const char* who)
{
  for (int j = 0; j < coeffs.a.size(); ++j) {
    if (coeffs.a[j].real() < 0.0)
      throw std::invalid_argument(
          fmt::format("{}: coefficient a is negative at node {}", who, j));
  }
}

bool is_constant_real(const GridFunction& f)
{
  return std::all_of(f.samples().begin(), f.samples().end(),
                     [&](const Complex& v) { return v == f[0]; });
}

bool is_zero(const GridFunction& f)
{
  return std::all_of(f.samples().begin(), f.samples().end(),
                     [](const Complex& v) { return v == Complex{}; });
}

bool symmetric_by_construction(const OperatorCoefficients& coeffs)
{
  return is_zero(coeffs.b) && is_constant_real(coeffs.a) && is_constant_real(coeffs.c);
}

// Shared driver for the shift and Gaussian-averaging schemes: node j is
// mapped to exp(t c_j) * sum_m w_m f~(x_j + t b_j + sqrt(2 t a_j) s_m).
// With a zero total offset the sample itself is used, so C(0) = I exactly.
GridFunction average_of_shifts(const OperatorCoefficients& coeffs,
                               const std::vector<double>& offsets,
                               const std::vector<double>& weights, double t,
                               const GridFunction& f)
{
  require_same_grid(coeffs.grid(), f.grid(), "chernoff scheme");
  const TrigInterpolant interp(f);
  const auto& grid = f.grid();
  const int n = grid.size();
  const int m = static_cast<int>(offsets.size());
  GridFunction out(grid);

#pragma omp parallel for schedule(static) if (n >= 256)
  for (int j = 0; j < n; ++j) {
    const double drift = t * coeffs.b[j].real();
    const double spread = std::sqrt(2.0 * t * coeffs.a[j].real());
    const double x = grid.node(j);
    Complex value;
    if (spread == 0.0) {
      value = drift == 0.0 ? f[j] : interp(x + drift);
    } else {
      for (int q = 0; q < m; ++q)
        value += weights[q] * interp(x + drift + spread * offsets[q]);
    }
    out[j] = std::exp(t * coeffs.c[j].real()) * value;
  }
  return out;
}

ChernoffScheme averaging_scheme(const OperatorCoefficients& coeffs, std::vector<double> offsets,
                                std::vector<double> weights, std::string label)
{
  ChernoffScheme scheme;
  scheme.growth_bound_hint = std::max(0.0, coeffs.max_c());
  scheme.is_symmetric = symmetric_by_construction(coeffs);
  scheme.label = std::move(label);
  scheme.step = [coeffs, offsets = std::move(offsets), weights = std::move(weights)](
                    double t, const GridFunction& f) {
    return average_of_shifts(coeffs, offsets, weights, t, f);
  };
  return scheme;
}

}  // namespace

GridFunction ChernoffScheme::apply(double t, const GridFunction& f) const
{
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument(fmt::format("{}: t must be finite and nonnegative", label));
  return step(t, f);
}

ChernoffScheme shift_scheme(const OperatorCoefficients& coeffs)
{
  require_parabolic(coeffs, "shift_scheme");
  return averaging_scheme(coeffs, {1.0, -1.0}, {0.5, 0.5}, "shift");
}

ChernoffScheme integral_scheme(const OperatorCoefficients& coeffs, int hermite_order)
{
  require_parabolic(coeffs, "integral_scheme");
  if (hermite_order < 2)
    throw std::invalid_argument("integral_scheme: hermite_order must be at least 2");
  auto rule = gauss_hermite_normal(hermite_order);
  return averaging_scheme(coeffs, std::move(rule.nodes), std::move(rule.weights),
                          fmt::format("integral(M={})", hermite_order));
}

ChernoffScheme exact_scheme(const ConstantSymbols& sym)
{
  ChernoffScheme scheme;
  scheme.growth_bound_hint = std::max(0.0, sym.c0.real());
  scheme.is_symmetric =
      sym.b0 == Complex{} && sym.a0.imag() == 0.0 && sym.c0.imag() == 0.0;
  scheme.label = "exact";
  scheme.step = [sym](double t, const GridFunction& f) {
    return multiplier_semigroup(sym, t, f);
  };
  return scheme;
}

GridFunction chernoff_iterate(const ChernoffScheme& scheme, double t, int n,
                              const GridFunction& u0)
{
  if (n < 1)
    throw std::invalid_argument("chernoff_iterate: n must be at least 1");
  if (!(t >= 0.0))
    throw std::invalid_argument("chernoff_iterate: t must be nonnegative");
  const double step = t / n;
  GridFunction u = u0;
  for (int k = 0; k < n; ++k)
    u = scheme.apply(step, u);
  return u;
}

TangencyReport verify_tangency(const ChernoffScheme& scheme, const OperatorCoefficients& coeffs,
                               const GridFunction& f, const std::vector<double>& t_values)
{
  if (t_values.size() < 4)
    throw std::invalid_argument("verify_tangency: need at least 4 t values");
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    if (!(t_values[i] > 0.0))
      throw std::invalid_argument("verify_tangency: t values must be positive");
    if (i > 0 && !(t_values[i] < t_values[i - 1]))
      throw std::invalid_argument("verify_tangency: t values must be strictly decreasing");
  }
  if (t_values.front() / t_values.back() < 100.0 * (1.0 - 1e-12))
    throw std::invalid_argument("verify_tangency: t values must span at least two decades");

  const auto lf = apply_L(coeffs, f);
  TangencyReport report;
  report.t_values = t_values;
  std::vector<double> logt, logr;
  for (double t : t_values) {
    auto r = scheme.apply(t, f);
    r -= f;
    r -= Complex(t) * lf;
    const double res = sup_norm(r);
    report.residuals.push_back(res);
    if (res > 0.0) {
      logt.push_back(std::log(t));
      logr.push_back(std::log(res));
    }
  }

  const double scale = std::max(1.0, sup_norm(f));
  const double largest = *std::max_element(report.residuals.begin(), report.residuals.end());
  if (logt.size() < 2 || largest <= 1e-13 * scale) {
    report.degenerate = true;
    return report;
  }
  const auto fit = fit_line(logt, logr);
  report.order = fit.slope;
  report.fit_quality = fit.r_squared;
  return report;
}

double verify_growth_bound(const ChernoffScheme& scheme, const std::vector<GridFunction>& trials,
                           const std::vector<double>& t_values)
{
  if (trials.empty())
    throw std::invalid_argument("verify_growth_bound: no trial functions");
  if (t_values.empty())
    throw std::invalid_argument("verify_growth_bound: no t values");
  double w = 0.0;
  for (const auto& f : trials) {
    const double base = sup_norm(f);
    if (base == 0.0)
      throw std::invalid_argument("verify_growth_bound: trial function has zero norm");
    for (double t : t_values) {
      if (!(t > 0.0))
        throw std::invalid_argument("verify_growth_bound: t values must be positive");
      const double ratio = sup_norm(scheme.apply(t, f)) / base;
      w = std::max(w, std::log(ratio) / t);
    }
  }
  return w;
}

double scalar_chernoff(double l, double t, long long n)
{
  if (n < 1)
    throw std::invalid_argument("scalar_chernoff: n must be at least 1");
  const double x = t * l / static_cast<double>(n);
  if (x > -1.0)
    return std::exp(static_cast<double>(n) * std::log1p(x));
  return std::pow(1.0 + x, static_cast<double>(n));
}

}  // namespace semikit
