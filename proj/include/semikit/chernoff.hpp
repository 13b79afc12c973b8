#pragma once

#include "semikit/grid.hpp"
#include "semikit/operators.hpp"

#include <functional>
#include <string>
#include <vector>

namespace semikit {

/// Operator family t -> C(t) used in the product formula C(t/n)^n.
struct ChernoffScheme
{
  using ApplyFn = std::function<GridFunction(double, const GridFunction&)>;

  ApplyFn step;
  /// Declared w with ||C(t)|| <= exp(t w) in the discrete sup norm.
  double growth_bound_hint = 0.0;
  /// C(t) self-adjoint in the discrete L2 inner product.
  bool is_symmetric = false;
  std::string label;

  /// C(t) f; throws for negative t.
  GridFunction apply(double t, const GridFunction& f) const;
};

inline constexpr int kDefaultHermiteOrder = 20;

/// (C(t)f)(x) = exp(t c(x)) * [f(x + t b(x) + sqrt(2 t a(x))) + f(x + t b(x) - sqrt(2 t a(x)))] / 2
/// with f evaluated through its trigonometric interpolant.
ChernoffScheme shift_scheme(const OperatorCoefficients& coeffs);

/// (C(t)f)(x) = exp(t c(x)) * sum_m w_m f(x + t b(x) + sqrt(2 t a(x)) s_m),
/// a Gaussian average over the M-point normal-weight Gauss rule (s_m, w_m).
ChernoffScheme integral_scheme(const OperatorCoefficients& coeffs,
                               int hermite_order = kDefaultHermiteOrder);

/// The constant-coefficient semigroup used as its own Chernoff function.
ChernoffScheme exact_scheme(const ConstantSymbols& sym);

/// C(t/n)^n u0.
GridFunction chernoff_iterate(const ChernoffScheme& scheme, double t, int n,
                              const GridFunction& u0);

struct TangencyReport
{
  double order = 0.0;  // least-squares slope of log r(t) against log t
  double fit_quality = 0.0;
  bool degenerate = false;  // residuals at roundoff level; no meaningful slope
  std::vector<double> t_values;
  std::vector<double> residuals;  // ||C(t)f - f - t L f||_sup
};

TangencyReport verify_tangency(const ChernoffScheme& scheme, const OperatorCoefficients& coeffs,
                               const GridFunction& f, const std::vector<double>& t_values);

/// max over trials and t of log(||C(t)f|| / ||f||) / t in the sup norm,
/// clamped below at zero.
double verify_growth_bound(const ChernoffScheme& scheme, const std::vector<GridFunction>& trials,
                           const std::vector<double>& t_values);

/// (1 + t l / n)^n.
double scalar_chernoff(double l, double t, long long n);

}  // namespace semikit
