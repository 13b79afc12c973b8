#pragma once

#include "semikit/chernoff.hpp"
#include "semikit/grid.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace semikit {

/// Reference evolution u0 -> e^{tL} u0.
using EvolutionFn = std::function<GridFunction(double, const GridFunction&)>;

inline constexpr double kRelativeAccuracyFloor = 1e-11;

/// Errors ||e^{tL}u0 - C(t/n)^n u0|| over a ladder of n.
struct ErrorCurve
{
  double t = 0.0;
  std::vector<int> ns;
  std::vector<double> errors;
  NormKind norm_kind = NormKind::sup;
  /// Errors at or below this level are treated as interpolation/roundoff noise.
  double floor = kRelativeAccuracyFloor;

  void validate() const;
};

enum class RateClass { standard, fast, superfast_candidate, floor_limited, slow };

std::string to_string(RateClass c);

struct RateReport
{
  ErrorCurve curve;
  double fitted_order = 0.0;
  double fit_quality = 0.0;  // coefficient of determination of the log-log fit
  int usable_points = 0;     // points strictly above the floor
  bool reached_floor = false;
  RateClass classification = RateClass::floor_limited;
};

/// Default ladder 8, 16, ..., 1024.
std::vector<int> default_ladder();

ErrorCurve error_curve(const ChernoffScheme& scheme, const EvolutionFn& reference, double t,
                       const std::vector<int>& ns, const GridFunction& u0, NormKind norm_kind);

/// Synthetic curve, mostly for tests: errors[i] = f(ns[i]).
ErrorCurve synthetic_curve(const std::vector<int>& ns, const std::function<double(int)>& f,
                           double floor = kRelativeAccuracyFloor);

/// Least-squares order over the above-floor points, then classify_rate.
RateReport fit_order(const ErrorCurve& curve);

/// floor-limited: fewer than 4 usable points;
/// superfast-candidate: order > 3 and the ladder reaches the floor;
/// fast: order > 1.15; standard: order in [0.5, 1.15]; slow: order < 0.5.
RateClass classify_rate(const RateReport& report);

struct SubspaceVerdict
{
  std::vector<double> ratios;  // E_n / a_n
  bool consistent = false;
  /// Always set; a finite ladder cannot prove o(a_n).
  std::string note = "empirical trend only, not a proof of membership";
};

/// Trend of E_n / a_n: consistent when the last usable ratio is below half of
/// the first and the last three usable ratios are nonincreasing.
SubspaceVerdict subspace_test(const ErrorCurve& curve, const std::vector<double>& comparison);

/// `n,error` rows with a header.
void write_rate_csv(std::ostream& os, const ErrorCurve& curve);

}  // namespace semikit
