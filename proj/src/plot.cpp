#include "semikit/plot.hpp"

#include "semikit/fit.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semikit {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;

struct Axis
{
  double lo;  // log10 range, padded to whole decades
  double hi;
  double px_lo;
  double px_hi;

  double map(double value) const
  {
    const double u = (std::log10(value) - lo) / (hi - lo);
    return px_lo + u * (px_hi - px_lo);
  }
};

Axis make_axis(double min_value, double max_value, double px_lo, double px_hi)
{
  double lo = std::floor(std::log10(min_value));
  double hi = std::ceil(std::log10(max_value));
  if (hi <= lo)
    hi = lo + 1.0;
  return {lo, hi, px_lo, px_hi};
}

std::string escape(const std::string& s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

LogLogPlot emit_plot(const ErrorCurve& curve, const std::string& title)
{
  if (curve.ns.empty() || curve.errors.size() != curve.ns.size())
    throw std::invalid_argument("emit_plot: empty curve");

  // Zero errors cannot sit on a log axis; they are drawn on the floor band.
  const double display_floor = curve.floor > 0.0 ? curve.floor : 1e-16;
  std::vector<double> shown;
  for (double e : curve.errors)
    shown.push_back(std::max(e, 0.1 * display_floor));

  const auto [nmin, nmax] = std::minmax_element(curve.ns.begin(), curve.ns.end());
  const auto [emin, emax] = std::minmax_element(shown.begin(), shown.end());
  const Axis xa = make_axis(*nmin, *nmax, kLeft, kWidth - kRight);
  const Axis ya = make_axis(*emin, *emax, kHeight - kBottom, kTop);

  LogLogPlot plot;
  std::string s;
  s += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\">\n",
      kWidth, kHeight, kWidth, kHeight);
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += fmt::format("<text x=\"{:.1f}\" y=\"30\" text-anchor=\"middle\" font-size=\"18\">{}</text>\n",
                   kWidth / 2, escape(title));

  const bool any_at_floor = std::any_of(curve.errors.begin(), curve.errors.end(),
                                        [&](double e) { return e <= curve.floor; });
  if (any_at_floor) {
    const double floor_y = std::clamp(ya.map(display_floor), kTop, kHeight - kBottom);
    s += fmt::format(
        "<rect class=\"floor\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
        "fill=\"#dddddd\" opacity=\"0.6\"/>\n",
        kLeft, floor_y, kWidth - kRight - kLeft, kHeight - kBottom - floor_y);
    plot.floor_shaded = true;
  }

  // axes, decade ticks
  s += fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
      "stroke=\"black\"/>\n",
      kLeft, kTop, kWidth - kRight - kLeft, kHeight - kBottom - kTop);
  for (double d = xa.lo; d <= xa.hi + 1e-9; d += 1.0) {
    const double x = xa.map(std::pow(10.0, d));
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"12\">1e{:.0f}</text>\n",
                     x, kHeight - kBottom + 18, d);
  }
  for (double d = ya.lo; d <= ya.hi + 1e-9; d += 1.0) {
    const double y = ya.map(std::pow(10.0, d));
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" font-size=\"12\">1e{:.0f}</text>\n",
                     kLeft - 8, y + 4, d);
  }
  s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-size=\"14\">n</text>\n",
                   kWidth / 2, kHeight - 20);
  s += fmt::format(
      "<text x=\"20\" y=\"{:.1f}\" text-anchor=\"middle\" font-size=\"14\" "
      "transform=\"rotate(-90 20 {:.1f})\">error ({})</text>\n",
      kHeight / 2, kHeight / 2, to_string(curve.norm_kind));

  std::vector<double> logn, loge, usable_n;
  for (std::size_t i = 0; i < curve.ns.size(); ++i) {
    if (curve.errors[i] > curve.floor) {
      logn.push_back(std::log10(static_cast<double>(curve.ns[i])));
      loge.push_back(std::log10(curve.errors[i]));
      usable_n.push_back(curve.ns[i]);
    }
  }
  if (logn.size() >= 2) {
    const auto line = fit_line(logn, loge);
    const double n0 = usable_n.front(), n1 = usable_n.back();
    const double e0 = std::pow(10.0, line.intercept + line.slope * std::log10(n0));
    const double e1 = std::pow(10.0, line.intercept + line.slope * std::log10(n1));
    plot.fit = LogLogPlot::Segment{n0, e0, n1, e1};
    s += fmt::format(
        "<line class=\"fit\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
        "stroke=\"#c0392b\" stroke-width=\"2\"/>\n",
        xa.map(n0), ya.map(e0), xa.map(n1), ya.map(e1));
    s += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" font-size=\"13\" "
        "fill=\"#c0392b\">slope {:.3f}</text>\n",
        kWidth - kRight - 10, kTop + 20, line.slope);
  }

  for (std::size_t i = 0; i < curve.ns.size(); ++i) {
    s += fmt::format("<circle class=\"point\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"#2c3e50\"/>\n",
                     xa.map(curve.ns[i]), ya.map(shown[i]));
  }
  s += "</svg>\n";
  plot.svg = std::move(s);
  return plot;
}

}  // namespace semikit
