#include "patcover/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "patcover/error.hpp"

namespace patcover {

namespace {

constexpr double kWidth = 640, kHeight = 480, kMargin = 64;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
  double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

void pad(double& lo, double& hi) {
  if (hi - lo < 1e-9) {
    lo -= 0.5;
    hi += 0.5;
  } else {
    double m = 0.05 * (hi - lo);
    lo -= m;
    hi += m;
  }
}

}  // namespace

std::string emit_plot(const PlotTable& table, PlotKind kind) {
  std::vector<PlotSeries> series;
  bool any = false;
  for (auto s : table.series) {
    for (auto& [x, y] : s.points) {
      if (kind != PlotKind::PolygonVsCircle) {
        if (x <= 0) fail(ErrorCode::InvalidArgument, "log axis needs positive x");
        x = std::log10(x);
      }
      if (kind == PlotKind::LogLog) {
        if (y <= 0) fail(ErrorCode::InvalidArgument, "log axis needs positive y");
        y = std::log10(y);
      }
    }
    any = any || !s.points.empty();
    series.push_back(std::move(s));
  }
  if (!any) fail(ErrorCode::EmptyTable, "nothing to plot");

  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& s : series)
    for (auto [x, y] : s.points) x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
  for (const auto& [_, v] : table.reference_lines) y0 = std::min(y0, v), y1 = std::max(y1, v);
  if (kind == PlotKind::PolygonVsCircle) {
    double r = std::max({std::abs(x0), std::abs(x1), std::abs(y0), std::abs(y1), 1.0}) * 1.05;
    x0 = y0 = -r;
    x1 = y1 = r;
  } else {
    pad(x0, x1);
    pad(y0, y1);
  }
  Frame f{x0, x1, y0, y1};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + escape(table.title) + "</text>\n";
  // axes
  svg += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kHeight - kMargin) + "\" x2=\"" + num(kWidth - kMargin) + "\" y2=\"" +
         num(kHeight - kMargin) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kMargin) + "\" x2=\"" + num(kMargin) + "\" y2=\"" +
         num(kHeight - kMargin) + "\" stroke=\"black\"/>\n";
  const bool log_x = kind != PlotKind::PolygonVsCircle, log_y = kind == PlotKind::LogLog;
  for (int i = 0; i <= 4; ++i) {
    double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    std::string xt = log_x ? "10^" + num(xv) : num(xv), yt = log_y ? "10^" + num(yv) : num(yv);
    svg += "<text x=\"" + num(f.px(xv)) + "\" y=\"" + num(kHeight - kMargin + 18) + "\" text-anchor=\"middle\" font-size=\"11\">" +
           xt + "</text>\n";
    svg += "<text x=\"" + num(kMargin - 6) + "\" y=\"" + num(f.py(yv) + 4) + "\" text-anchor=\"end\" font-size=\"11\">" + yt +
           "</text>\n";
  }
  svg += "<text x=\"" + num(kWidth / 2) + "\" y=\"" + num(kHeight - 16) + "\" text-anchor=\"middle\" font-size=\"13\">" +
         escape(table.x_label) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + num(kHeight / 2) + "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " +
         num(kHeight / 2) + ")\">" + escape(table.y_label) + "</text>\n";

  if (kind == PlotKind::PolygonVsCircle) {
    svg += "<circle class=\"unit-circle\" cx=\"" + num(f.px(0)) + "\" cy=\"" + num(f.py(0)) + "\" r=\"" + num(f.px(1) - f.px(0)) +
           "\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  }
  for (const auto& [label, v] : table.reference_lines) {
    svg += "<line class=\"reference\" x1=\"" + num(kMargin) + "\" y1=\"" + num(f.py(v)) + "\" x2=\"" + num(kWidth - kMargin) +
           "\" y2=\"" + num(f.py(v)) + "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
    svg += "<text x=\"" + num(kWidth - kMargin) + "\" y=\"" + num(f.py(v) - 4) + "\" text-anchor=\"end\" font-size=\"11\">" +
           escape(label) + "</text>\n";
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kColors[i % 6];
    if (s.closed) {
      std::string pts;
      for (auto [x, y] : s.points) pts += num(f.px(x)) + "," + num(f.py(y)) + " ";
      if (!pts.empty()) pts.pop_back();
      svg += "<polygon class=\"series\" points=\"" + pts + "\" fill=\"none\" stroke=\"" + color + "\"/>\n";
    } else {
      for (auto [x, y] : s.points)
        svg += "<circle class=\"marker\" cx=\"" + num(f.px(x)) + "\" cy=\"" + num(f.py(y)) + "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
    }
    svg += "<text x=\"" + num(kWidth - kMargin + 4) + "\" y=\"" + num(kMargin + 14.0 * static_cast<double>(i)) + "\" font-size=\"11\" fill=\"" +
           color + "\">" + escape(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace patcover
