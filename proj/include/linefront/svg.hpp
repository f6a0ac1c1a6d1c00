#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "linefront/errors.hpp"

// Minimal self-contained SVG rendering: a banded heatmap (contour bands as
// discretised cell colours) and a polyline chart. No plotting dependency.

namespace linefront::svg {

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// simple blue -> yellow ramp over [0, 1]
inline std::string band_color(double f) {
  f = std::clamp(f, 0.0, 1.0);
  const int r = static_cast<int>(20 + 235 * f);
  const int g = static_cast<int>(40 + 180 * f);
  const int b = static_cast<int>(160 * (1.0 - f) + 40);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace detail

/// Banded heatmap of a tensor-grid field (row-major values[iy * nx + ix]).
inline std::string heatmap(std::span<const double> xs,
                           std::span<const double> ys,
                           std::span<const double> values, int n_bands = 12,
                           const std::string& title = "") {
  const std::size_t nx = xs.size(), ny = ys.size();
  if (values.size() != nx * ny || nx < 2 || ny < 2)
    throw DomainError("svg::heatmap: grid/value size mismatch");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (!std::isfinite(v)) continue;  // failed points are left uncoloured
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo < hi)) {
    lo = 0.0;
    hi = 1.0;
  }

  const double W = 640, H = 480, mL = 50, mB = 40, mT = 30, mR = 20;
  const double pw = W - mL - mR, ph = H - mT - mB;
  auto px = [&](double x) {
    return mL + pw * (x - xs.front()) / (xs.back() - xs.front());
  };
  auto py = [&](double y) {
    return H - mB - ph * (y - ys.front()) / (ys.back() - ys.front());
  };

  std::string s = "<svg xmlns='http://www.w3.org/2000/svg' width='" +
                  detail::num(W) + "' height='" + detail::num(H) + "'>\n";
  s += "<text x='" + detail::num(W / 2) + "' y='18' text-anchor='middle' "
       "font-size='13'>" + title + "</text>\n";
  for (std::size_t j = 0; j + 1 < ny; ++j) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const double v = values[j * nx + i];
      if (!std::isfinite(v)) continue;
      const int band =
          std::min(n_bands - 1,
                   static_cast<int>(n_bands * (v - lo) / (hi - lo)));
      const double x0 = px(xs[i]), x1 = px(xs[i + 1]);
      const double y1 = py(ys[j]), y0 = py(ys[j + 1]);
      s += "<rect x='" + detail::num(x0) + "' y='" + detail::num(y0) +
           "' width='" + detail::num(x1 - x0 + 0.5) + "' height='" +
           detail::num(y1 - y0 + 0.5) + "' fill='" +
           detail::band_color(static_cast<double>(band) / (n_bands - 1)) +
           "'/>\n";
    }
  }
  s += "<rect x='" + detail::num(mL) + "' y='" + detail::num(mT) +
       "' width='" + detail::num(pw) + "' height='" + detail::num(ph) +
       "' fill='none' stroke='black'/>\n";
  s += "<text x='" + detail::num(mL) + "' y='" + detail::num(H - 8) +
       "' font-size='11'>x: [" + detail::num(xs.front()) + ", " +
       detail::num(xs.back()) + "]  y: [" + detail::num(ys.front()) + ", " +
       detail::num(ys.back()) + "]  u: [" + detail::num(lo) + ", " +
       detail::num(hi) + "]</text>\n";
  s += "</svg>\n";
  return s;
}

/// Polyline chart of (x, y) samples.
inline std::string line_chart(std::span<const double> xs,
                              std::span<const double> ys,
                              const std::string& title = "",
                              const std::string& x_label = "x",
                              const std::string& y_label = "u") {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw DomainError("svg::line_chart: need matching xs, ys of size >= 2");
  double ylo = std::numeric_limits<double>::infinity();
  double yhi = -std::numeric_limits<double>::infinity();
  for (double v : ys) {
    if (!std::isfinite(v)) continue;
    ylo = std::min(ylo, v);
    yhi = std::max(yhi, v);
  }
  if (!(ylo < yhi)) {
    ylo = 0.0;
    yhi = 1.0;
  }

  const double W = 640, H = 400, mL = 55, mB = 40, mT = 30, mR = 20;
  const double pw = W - mL - mR, ph = H - mT - mB;
  auto px = [&](double x) {
    return mL + pw * (x - xs.front()) / (xs.back() - xs.front());
  };
  auto py = [&](double y) { return H - mB - ph * (y - ylo) / (yhi - ylo); };

  std::string s = "<svg xmlns='http://www.w3.org/2000/svg' width='" +
                  detail::num(W) + "' height='" + detail::num(H) + "'>\n";
  s += "<text x='" + detail::num(W / 2) + "' y='18' text-anchor='middle' "
       "font-size='13'>" + title + "</text>\n";
  s += "<rect x='" + detail::num(mL) + "' y='" + detail::num(mT) +
       "' width='" + detail::num(pw) + "' height='" + detail::num(ph) +
       "' fill='none' stroke='black'/>\n";
  std::string pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(ys[i])) continue;
    pts += detail::num(px(xs[i])) + "," + detail::num(py(ys[i])) + " ";
  }
  s += "<polyline points='" + pts + "' fill='none' stroke='#1f77b4' "
       "stroke-width='1.5'/>\n";
  s += "<text x='" + detail::num(W / 2) + "' y='" + detail::num(H - 8) +
       "' text-anchor='middle' font-size='11'>" + x_label + " in [" +
       detail::num(xs.front()) + ", " + detail::num(xs.back()) + "], " +
       y_label + " in [" + detail::num(ylo) + ", " + detail::num(yhi) +
       "]</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace linefront::svg
