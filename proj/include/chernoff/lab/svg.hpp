#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "chernoff/analysis.hpp"
#include "chernoff/error.hpp"

// Minimal self-contained SVG line plots. Output depends only on the input
// data, so identical runs produce identical files.

namespace chernoff::lab {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct FitLine {
  double slope = 0.0;
  double intercept = 0.0;  // log10 y = intercept + slope * log10 x
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
  std::optional<FitLine> fit;
};

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

inline std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step)
    ticks.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
  return ticks;
}

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  return colors[i % 6];
}

}  // namespace detail

/// Renders the plot to an SVG document.
inline std::string render_svg(const PlotSpec& spec) {
  constexpr double width = 720.0;
  constexpr double height = 480.0;
  constexpr double left = 80.0;
  constexpr double right = 20.0;
  constexpr double top = 40.0;
  constexpr double bottom = 60.0;
  const double pw = width - left - right;
  const double ph = height - top - bottom;

  auto tx = [&](double v) { return spec.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return spec.log_y ? std::log10(v) : v; };
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!spec.log_x || x > 0.0) && (!spec.log_y || y > 0.0);
  };

  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const Series& s : spec.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, ty(s.y[i]));
      ymax = std::max(ymax, ty(s.y[i]));
    }
  }
  if (!std::isfinite(xmin)) throw DomainError("plot: no drawable data");
  if (xmax == xmin) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax == ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto px = [&](double v) { return left + (v - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double v) { return top + (ymax - v) / (ymax - ymin) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" viewBox=\"0 0 720 480\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
  out += "<text x=\"360\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" + detail::escape(spec.title) +
         "</text>\n";

  // Axes box and ticks.
  out += "<rect x=\"" + detail::num(left) + "\" y=\"" + detail::num(top) + "\" width=\"" + detail::num(pw) +
         "\" height=\"" + detail::num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  auto axis_ticks = [](double lo, double hi, bool log) {
    if (!log) return detail::linear_ticks(lo, hi);
    std::vector<double> t;
    for (double d = std::ceil(lo); d <= std::floor(hi); d += 1.0) t.push_back(d);
    if (t.size() < 2) t = detail::linear_ticks(lo, hi);
    return t;
  };
  auto label_for = [](double v, bool log) { return detail::tick_label(log ? std::pow(10.0, v) : v); };
  out += "<g class=\"x-ticks\">\n";
  for (double v : axis_ticks(xmin, xmax, spec.log_x)) {
    const std::string x = detail::num(px(v));
    out += "<line x1=\"" + x + "\" y1=\"" + detail::num(top + ph) + "\" x2=\"" + x + "\" y2=\"" +
           detail::num(top + ph + 5) + "\" stroke=\"black\"/>";
    out += "<text x=\"" + x + "\" y=\"" + detail::num(top + ph + 18) + "\" text-anchor=\"middle\">" +
           label_for(v, spec.log_x) + "</text>\n";
  }
  out += "</g>\n<g class=\"y-ticks\">\n";
  for (double v : axis_ticks(ymin, ymax, spec.log_y)) {
    const std::string y = detail::num(py(v));
    out += "<line x1=\"" + detail::num(left - 5) + "\" y1=\"" + y + "\" x2=\"" + detail::num(left) + "\" y2=\"" + y +
           "\" stroke=\"black\"/>";
    out += "<text x=\"" + detail::num(left - 8) + "\" y=\"" + y + "\" text-anchor=\"end\" dy=\"4\">" +
           label_for(v, spec.log_y) + "</text>\n";
  }
  out += "</g>\n";
  out += "<text x=\"" + detail::num(left + pw / 2) + "\" y=\"" + detail::num(height - 15) +
         "\" text-anchor=\"middle\">" + detail::escape(spec.x_label) + "</text>\n";
  out += "<text x=\"18\" y=\"" + detail::num(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         detail::num(top + ph / 2) + ")\">" + detail::escape(spec.y_label) + "</text>\n";

  // Data.
  for (std::size_t k = 0; k < spec.series.size(); ++k) {
    const Series& s = spec.series[k];
    std::string pts;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      if (!pts.empty()) pts += ' ';
      pts += detail::num(px(tx(s.x[i]))) + "," + detail::num(py(ty(s.y[i])));
    }
    out += "<polyline class=\"series\" data-name=\"" + detail::escape(s.name) + "\" fill=\"none\" stroke=\"" +
           detail::palette(k) + "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
  }

  if (spec.fit) {
    const double y0 = spec.fit->intercept + spec.fit->slope * xmin;
    const double y1 = spec.fit->intercept + spec.fit->slope * xmax;
    out += "<line class=\"fit\" x1=\"" + detail::num(px(xmin)) + "\" y1=\"" + detail::num(py(y0)) + "\" x2=\"" +
           detail::num(px(xmax)) + "\" y2=\"" + detail::num(py(y1)) +
           "\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n";
    char buf[64];
    const double slope = spec.fit->slope;
    std::snprintf(buf, sizeof buf, "slope ≈ %s%.2f", slope < 0 ? "−" : "", std::abs(slope));
    out += "<text class=\"slope\" x=\"" + detail::num(left + pw - 10) + "\" y=\"" + detail::num(top + ph - 10) +
           "\" text-anchor=\"end\">" + buf + "</text>\n";
  }

  // Legend.
  const double lx = left + pw - 200.0;
  double ly = top + 12.0;
  out += "<g class=\"legend\">\n";
  for (std::size_t k = 0; k < spec.series.size(); ++k) {
    out += "<line x1=\"" + detail::num(lx) + "\" y1=\"" + detail::num(ly) + "\" x2=\"" + detail::num(lx + 24) +
           "\" y2=\"" + detail::num(ly) + "\" stroke=\"" + detail::palette(k) + "\" stroke-width=\"2\"/>";
    out += "<text x=\"" + detail::num(lx + 30) + "\" y=\"" + detail::num(ly + 4) + "\">" +
           detail::escape(spec.series[k].name) + "</text>\n";
    ly += 18.0;
  }
  if (spec.fit) {
    out += "<line x1=\"" + detail::num(lx) + "\" y1=\"" + detail::num(ly) + "\" x2=\"" + detail::num(lx + 24) +
           "\" y2=\"" + detail::num(ly) + "\" stroke=\"black\" stroke-dasharray=\"6,4\"/>";
    out += "<text x=\"" + detail::num(lx + 30) + "\" y=\"" + detail::num(ly + 4) + "\">least-squares fit</text>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

inline void emit_plot(const PlotSpec& spec, const std::string& path) {
  if (spec.series.empty()) throw DomainError("plot: no series");
  const std::string doc = render_svg(spec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << doc;
  if (!out) throw IoError("write failed for '" + path + "'");
}

/// Error against n on linear axes.
inline PlotSpec error_plot(const std::vector<ErrorRecord>& records, const std::string& title) {
  Series s{"measured sup-norm error", {}, {}};
  for (const ErrorRecord& r : records) {
    s.x.push_back(static_cast<double>(r.n));
    s.y.push_back(r.measured_error);
  }
  return PlotSpec{title, "composition degree n", "sup-norm error", false, false, {s}, std::nullopt};
}

/// Error against n on log-log axes with the fitted line.
inline PlotSpec loglog_plot(const std::vector<ErrorRecord>& records, const std::optional<RegressionFit>& fit,
                            const std::string& title) {
  PlotSpec spec = error_plot(records, title);
  spec.log_x = true;
  spec.log_y = true;
  if (fit) spec.fit = FitLine{fit->slope, fit->intercept};
  return spec;
}

}  // namespace chernoff::lab
