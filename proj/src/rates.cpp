#include "semikit/rates.hpp"

#include "semikit/fit.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace semikit {

void ErrorCurve::validate() const
{
  if (ns.empty())
    throw std::invalid_argument("error curve: empty ladder");
  if (ns.size() != errors.size())
    throw std::invalid_argument("error curve: ns and errors differ in length");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1)
      throw std::invalid_argument("error curve: n must be positive");
    if (i > 0 && ns[i] <= ns[i - 1])
      throw std::invalid_argument("error curve: ns must be strictly increasing");
    if (!std::isfinite(errors[i]) || errors[i] < 0.0)
      throw std::invalid_argument("error curve: errors must be finite and nonnegative");
  }
}

std::string to_string(RateClass c)
{
  switch (c) {
    case RateClass::standard: return "standard";
    case RateClass::fast: return "fast";
    case RateClass::superfast_candidate: return "superfast-candidate";
    case RateClass::floor_limited: return "floor-limited";
    case RateClass::slow: return "slow";
  }
  return "unknown";
}

std::vector<int> default_ladder()
{
  std::vector<int> ns;
  for (int n = 8; n <= 1024; n *= 2)
    ns.push_back(n);
  return ns;
}

ErrorCurve error_curve(const ChernoffScheme& scheme, const EvolutionFn& reference, double t,
                       const std::vector<int>& ns, const GridFunction& u0, NormKind norm_kind)
{
  ErrorCurve curve;
  curve.t = t;
  curve.ns = ns;
  curve.norm_kind = norm_kind;
  curve.floor = kRelativeAccuracyFloor * norm(u0, norm_kind);
  const auto exact = reference(t, u0);
  for (int n : ns)
    curve.errors.push_back(norm(exact - chernoff_iterate(scheme, t, n, u0), norm_kind));
  curve.validate();
  return curve;
}

ErrorCurve synthetic_curve(const std::vector<int>& ns, const std::function<double(int)>& f,
                           double floor)
{
  ErrorCurve curve;
  curve.ns = ns;
  curve.floor = floor;
  for (int n : ns)
    curve.errors.push_back(f(n));
  curve.validate();
  return curve;
}

RateReport fit_order(const ErrorCurve& curve)
{
  curve.validate();
  RateReport report;
  report.curve = curve;
  std::vector<double> logn, loge;
  for (std::size_t i = 0; i < curve.ns.size(); ++i) {
    if (curve.errors[i] > curve.floor) {
      logn.push_back(std::log(static_cast<double>(curve.ns[i])));
      loge.push_back(std::log(curve.errors[i]));
    } else {
      report.reached_floor = true;
    }
  }
  report.usable_points = static_cast<int>(logn.size());
  if (logn.size() >= 2) {
    const auto fit = fit_line(logn, loge);
    report.fitted_order = -fit.slope;
    report.fit_quality = fit.r_squared;
  }
  report.classification = classify_rate(report);
  return report;
}

RateClass classify_rate(const RateReport& report)
{
  if (report.usable_points < 4)
    return RateClass::floor_limited;
  const double order = report.fitted_order;
  if (order > 3.0 && report.reached_floor)
    return RateClass::superfast_candidate;
  if (order > 1.15)
    return RateClass::fast;
  if (order >= 0.5)
    return RateClass::standard;
  return RateClass::slow;
}

SubspaceVerdict subspace_test(const ErrorCurve& curve, const std::vector<double>& comparison)
{
  curve.validate();
  if (comparison.size() != curve.ns.size())
    throw std::invalid_argument(fmt::format("subspace_test: comparison has {} entries, ladder {}",
                                            comparison.size(), curve.ns.size()));
  SubspaceVerdict verdict;
  std::vector<double> usable;
  for (std::size_t i = 0; i < comparison.size(); ++i) {
    if (!(comparison[i] > 0.0))
      throw std::invalid_argument("subspace_test: comparison sequence must be positive");
    const double rho = curve.errors[i] / comparison[i];
    verdict.ratios.push_back(rho);
    if (curve.errors[i] > curve.floor)
      usable.push_back(rho);
  }
  if (usable.size() < 3)
    return verdict;
  const auto m = usable.size();
  const bool shrinks = usable.back() < 0.5 * usable.front();
  const bool tail_nonincreasing = usable[m - 2] <= usable[m - 3] && usable[m - 1] <= usable[m - 2];
  verdict.consistent = shrinks && tail_nonincreasing;
  return verdict;
}

void write_rate_csv(std::ostream& os, const ErrorCurve& curve)
{
  os << "n,error\n";
  for (std::size_t i = 0; i < curve.ns.size(); ++i)
    os << fmt::format("{},{:.17g}\n", curve.ns[i], curve.errors[i]);
}

}  // namespace semikit
