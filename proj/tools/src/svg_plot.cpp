/*
 * Copyright (c) 2026, The Seesaw Lab Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "seesaw/cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace seesaw::cli {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string tick_label(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3g", v);
  return buffer;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = 0.0;
  double hi = 1.0;

  double map(double v) const {
    const double a = log ? std::log10(v) : v;
    return (a - lo) / (hi - lo);
  }
  bool admits(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
};

Axis fit_axis(const std::vector<Series>& series, bool log, bool use_x) {
  Axis axis;
  axis.log = log;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const Series& s : series) {
    const auto& values = use_x ? s.x : s.y;
    for (double v : values) {
      if (!axis.admits(v)) continue;
      const double a = log ? std::log10(v) : v;
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
  }
  if (!std::isfinite(lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  if (log) {
    lo = std::floor(lo);
    hi = std::ceil(hi);
  }
  axis.lo = lo;
  axis.hi = hi;
  return axis;
}

std::vector<double> ticks(const Axis& axis) {
  std::vector<double> out;
  if (axis.log) {
    const int first = static_cast<int>(axis.lo);
    const int last = static_cast<int>(axis.hi);
    const int step = std::max(1, (last - first) / 8);
    for (int e = first; e <= last; e += step) out.push_back(std::pow(10.0, e));
  } else {
    for (int i = 0; i <= 5; ++i) out.push_back(axis.lo + (axis.hi - axis.lo) * i / 5.0);
  }
  return out;
}

} // namespace

std::string render_svg(const std::vector<Series>& series, const PlotSpec& spec) {
  const double left = 80, right = 170, top = 40, bottom = 60;
  const double pw = spec.width - left - right;
  const double ph = spec.height - top - bottom;
  const Axis ax = fit_axis(series, spec.log_x, true);
  const Axis ay = fit_axis(series, spec.log_y, false);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
      << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(spec.title) << "</text>\n";
  out << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw)
      << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ticks(ax)) {
    const double px = left + ax.map(t) * pw;
    out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(top + ph) << "\" x2=\"" << fmt(px)
        << "\" y2=\"" << fmt(top + ph + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(top + ph + 18)
        << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (double t : ticks(ay)) {
    const double py = top + ph - ay.map(t) * ph;
    out << "<line x1=\"" << fmt(left - 5) << "\" y1=\"" << fmt(py) << "\" x2=\"" << fmt(left)
        << "\" y2=\"" << fmt(py) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(py + 4) << "\" text-anchor=\"end\">"
        << tick_label(t) << "</text>\n";
  }
  out << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(spec.height - 15)
      << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
  out << "<text transform=\"translate(18," << fmt(top + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(spec.y_label) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << color << "\" points=\"";
    const std::size_t n = std::min(s.x.size(), s.y.size());
    // Keep files small: at most ~2000 vertices per series.
    const std::size_t stride = std::max<std::size_t>(1, n / 2000);
    bool first = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (j % stride != 0 && j + 1 != n) continue;
      if (!ax.admits(s.x[j]) || !ay.admits(s.y[j])) continue;
      const double px = left + std::clamp(ax.map(s.x[j]), 0.0, 1.0) * pw;
      const double py = top + ph - std::clamp(ay.map(s.y[j]), 0.0, 1.0) * ph;
      out << (first ? "" : " ") << fmt(px) << ',' << fmt(py);
      first = false;
    }
    out << "\"/>\n";
    const double ly = top + 14 + 18 * static_cast<double>(i);
    out << "<line x1=\"" << fmt(left + pw + 10) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
        << fmt(left + pw + 30) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(left + pw + 35) << "\" y=\"" << fmt(ly) << "\">" << escape(s.label)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

Series series_from_csv_text(const std::string& csv, const std::string& x_column,
                            const std::string& y_column, const std::string& label) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty CSV");
  }
  auto split = [](const std::string& row) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream rs(row);
    while (std::getline(rs, cell, ',')) cells.push_back(cell);
    if (!row.empty() && row.back() == ',') cells.emplace_back();
    return cells;
  };
  const auto header = split(line);
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw std::runtime_error("CSV has no column '" + name + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t xi = column(x_column);
  const std::size_t yi = column(y_column);
  Series s;
  s.label = label;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() <= std::max(xi, yi)) continue;
    s.x.push_back(std::strtod(cells[xi].c_str(), nullptr));
    s.y.push_back(std::strtod(cells[yi].c_str(), nullptr));
  }
  return s;
}

Series series_from_csv_file(const std::string& path, const std::string& x_column,
                            const std::string& y_column) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return series_from_csv_text(buffer.str(), x_column, y_column,
                              std::filesystem::path(path).stem().string());
}

} // namespace seesaw::cli
