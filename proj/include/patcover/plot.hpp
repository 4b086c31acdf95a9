#pragma once

#include <string>
#include <utility>
#include <vector>

namespace patcover {

enum class PlotKind { ExponentCurve, LogLog, PolygonVsCircle };

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool closed = false;  // draw as a closed polygon instead of markers
};

struct PlotTable {
  std::string title;
  std::string x_label, y_label;
  std::vector<PlotSeries> series;
  std::vector<std::pair<std::string, double>> reference_lines;  // horizontal y = value
};

/// Deterministic SVG. ExponentCurve and LogLog plot log10 of x (and, for LogLog, of y);
/// PolygonVsCircle draws closed series with the unit circle on equal axes.
/// Throws EmptyTable when no series has a point.
std::string emit_plot(const PlotTable& table, PlotKind kind);

}  // namespace patcover
