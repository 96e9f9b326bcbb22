#pragma once

// Minimal self-contained SVG 1.1 line/scatter charts for the experiment
// outputs. Linear axes, auto-scaled; output depends only on the input rows.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "shuffle_merge/errors.hpp"
#include "shuffle_merge/experiments.hpp"
#include "shuffle_merge/order_stats.hpp"

namespace shuffle_merge::plot {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool markers = true;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

namespace detail {

inline std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Expands [lo, hi] to a non-degenerate range.
inline std::pair<double, double> padded(double lo, double hi) {
  if (hi - lo <= 0) {
    const double pad = std::max(1.0, std::abs(lo) * 0.1);
    return {lo - pad, hi + pad};
  }
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                           "#9467bd", "#ff7f0e", "#8c564b",
                                           "#e377c2", "#7f7f7f", "#17becf",
                                           "#bcbd22"};

}  // namespace detail

inline std::string render_svg(const Chart& chart) {
  bool any = false;
  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
  for (const auto& s : chart.series) {
    for (auto [x, y] : s.points) {
      if (!any) {
        x_lo = x_hi = x;
        y_lo = y_hi = y;
        any = true;
      }
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (!any) throw UsageError("plot: no data points to draw");
  std::tie(x_lo, x_hi) = detail::padded(x_lo, x_hi);
  std::tie(y_lo, y_hi) = detail::padded(y_lo, y_hi);

  constexpr double width = 720, height = 480;
  constexpr double left = 80, right = 160, top = 40, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  auto sx = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto sy = [&](double y) { return top + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h; };
  using detail::fixed;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n"
      << "<text x=\"" << fixed(left + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << detail::escape(chart.title) << "</text>\n";

  // Axes and ticks.
  svg << "<g stroke=\"black\" fill=\"none\">\n"
      << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\""
      << fixed(plot_w) << "\" height=\"" << fixed(plot_h) << "\"/>\n"
      << "</g>\n";
  constexpr int ticks = 5;
  svg << "<g fill=\"black\">\n";
  for (int t = 0; t <= ticks; ++t) {
    const double xv = x_lo + (x_hi - x_lo) * t / ticks;
    const double yv = y_lo + (y_hi - y_lo) * t / ticks;
    svg << "<line x1=\"" << fixed(sx(xv)) << "\" y1=\"" << fixed(top + plot_h)
        << "\" x2=\"" << fixed(sx(xv)) << "\" y2=\"" << fixed(top + plot_h + 5)
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fixed(sx(xv)) << "\" y=\"" << fixed(top + plot_h + 18)
        << "\" text-anchor=\"middle\">" << detail::tick_label(xv) << "</text>\n"
        << "<line x1=\"" << fixed(left - 5) << "\" y1=\"" << fixed(sy(yv))
        << "\" x2=\"" << fixed(left) << "\" y2=\"" << fixed(sy(yv))
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(sy(yv) + 4)
        << "\" text-anchor=\"end\">" << detail::tick_label(yv) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<text class=\"x-label\" x=\"" << fixed(left + plot_w / 2) << "\" y=\""
      << fixed(height - 16) << "\" text-anchor=\"middle\">"
      << detail::escape(chart.x_label) << "</text>\n"
      << "<text class=\"y-label\" x=\"18\" y=\"" << fixed(top + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << fixed(top + plot_h / 2) << ")\">" << detail::escape(chart.y_label)
      << "</text>\n";

  // Data.
  std::size_t index = 0;
  for (const auto& s : chart.series) {
    const char* colour = detail::kPalette[index % std::size(detail::kPalette)];
    if (s.points.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << colour
          << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t q = 0; q < s.points.size(); ++q) {
        if (q) svg << ' ';
        svg << fixed(sx(s.points[q].first)) << ',' << fixed(sy(s.points[q].second));
      }
      svg << "\"/>\n";
    }
    if (s.markers) {
      for (auto [x, y] : s.points)
        svg << "<circle class=\"point\" cx=\"" << fixed(sx(x)) << "\" cy=\""
            << fixed(sy(y)) << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
    }
    const double ly = top + 10 + 18.0 * double(index);
    svg << "<line x1=\"" << fixed(width - right + 12) << "\" y1=\"" << fixed(ly)
        << "\" x2=\"" << fixed(width - right + 32) << "\" y2=\"" << fixed(ly)
        << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << fixed(width - right + 38) << "\" y=\"" << fixed(ly + 4)
        << "\">" << detail::escape(s.label) << "</text>\n";
    ++index;
  }
  svg << "</svg>\n";
  return svg.str();
}

/// Mean moves per element against N.
inline std::string plot_bench(const std::vector<BenchRow>& rows) {
  if (rows.empty()) throw UsageError("plot: bench rows are empty");
  Series s{"mean moves/N", {}, true};
  for (const auto& sum : summarize(rows))
    s.points.emplace_back(double(sum.n), sum.mean_moves_per_n);
  return render_svg({"Number of moves per element", "N", "moves per element", {s}});
}

/// Mean frequency against |P|, one line per N.
inline std::string plot_phist(const std::map<std::int64_t, PHistogram>& by_size) {
  Chart chart{"Frequency of P segments by length", "P length", "mean frequency", {}};
  for (const auto& [n, hist] : by_size) {
    if (hist.empty()) continue;
    Series s{"N=" + std::to_string(n), {}, false};
    for (auto [p, f] : hist) s.points.emplace_back(double(p), f);
    chart.series.push_back(std::move(s));
  }
  if (chart.series.empty()) throw UsageError("plot: histogram rows are empty");
  return render_svg(chart);
}

/// P(X_(n-k) > Y_(n)) against k, one line per N.
inline std::string plot_prob(const std::vector<ProbCell>& cells) {
  if (cells.empty()) throw UsageError("plot: probability rows are empty");
  std::map<std::int64_t, Series> by_size;
  for (const auto& c : cells) {
    auto& s = by_size[c.N];
    s.label = "N=" + std::to_string(c.N);
    s.points.emplace_back(double(c.k), c.value);
  }
  Chart chart{"P(X_(n-k) > Y_(n))", "k", "probability", {}};
  for (auto& [n, s] : by_size) chart.series.push_back(std::move(s));
  return render_svg(chart);
}

}  // namespace shuffle_merge::plot
