#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

namespace semikit {

struct LineFit
{
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;  // 1 when y has no spread
};

/// Ordinary least squares y ~ slope * x + intercept.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need at least two paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0)
    throw std::invalid_argument("fit_line: abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (fit.slope * x[i] + fit.intercept);
      ss_res += r * r;
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

}  // namespace semikit
