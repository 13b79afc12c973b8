#pragma once

#include "semikit/rates.hpp"

#include <optional>
#include <string>

namespace semikit {

/// Log-log plot of an error curve on a fixed 800x600 canvas.
struct LogLogPlot
{
  std::string svg;
  /// Fitted line in data coordinates (n, error) at both ends of the usable
  /// range; absent with fewer than two above-floor points.
  struct Segment
  {
    double n0, e0, n1, e1;
  };
  std::optional<Segment> fit;
  bool floor_shaded = false;
};

/// Points for every entry, a least-squares line over the above-floor points
/// and a shaded band below the floor when any point reaches it.
/// Throws std::invalid_argument for an empty curve.
LogLogPlot emit_plot(const ErrorCurve& curve, const std::string& title);

}  // namespace semikit
