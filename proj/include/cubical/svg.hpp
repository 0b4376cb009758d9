#pragma once

// SVG rendering of planar models: 40 user units per coordinate unit, y axis
// pointing up, forbidden region in light gray, model cubes stroked, doomed
// region shaded red, deadlocks as filled circles. Unbounded cubes are
// clamped to the ambient rectangle.

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "area.hpp"

namespace cubical::svg {

inline constexpr double kScale = 40.0;
inline constexpr double kMargin = 20.0;

struct Scene {
  Cube ambient = Cube::full(2);
  std::optional<CubicalArea> forbidden;
  std::optional<CubicalArea> model;
  std::optional<CubicalArea> doomed;
  std::vector<std::vector<Rational>> deadlocks;
};

namespace detail {

inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kMargin + (x - x0) * kScale; }
  double py(double y) const { return kMargin + (y1 - y) * kScale; }
};

inline std::pair<double, double> clamp(const Interval& iv, double lo, double hi) {
  double a = iv.lo().is_finite() ? std::max(lo, to_double(iv.lo().value())) : lo;
  double b = iv.hi().is_finite() ? std::min(hi, to_double(iv.hi().value())) : hi;
  return {a, b};
}

inline void rects(std::ostringstream& os, const Frame& fr, const CubicalArea& a, const std::string& style) {
  for (const Cube& c : a.cubes()) {
    auto [x0, x1] = clamp(c[0], fr.x0, fr.x1);
    auto [y0, y1] = clamp(c[1], fr.y0, fr.y1);
    if (x1 < x0 || y1 < y0) continue;
    os << "  <rect x=\"" << fr.px(x0) << "\" y=\"" << fr.py(y1) << "\" width=\"" << (x1 - x0) * kScale
       << "\" height=\"" << (y1 - y0) * kScale << "\" " << style << "/>\n";
  }
}

}  // namespace detail

inline std::string render(const Scene& s) {
  if (s.ambient.dim() != 2 || !s.ambient[0].is_bounded() || !s.ambient[1].is_bounded())
    throw std::invalid_argument("svg output needs a bounded two-dimensional ambient");
  for (const auto* a : {&s.forbidden, &s.model, &s.doomed})
    if (*a && (*a)->dim() != 2) throw std::invalid_argument("svg output is only available in dimension 2");

  const detail::Frame fr{detail::to_double(s.ambient[0].lo().value()), detail::to_double(s.ambient[0].hi().value()),
                         detail::to_double(s.ambient[1].lo().value()), detail::to_double(s.ambient[1].hi().value())};
  const double w = (fr.x1 - fr.x0) * kScale + 2 * kMargin;
  const double h = (fr.y1 - fr.y0) * kScale + 2 * kMargin;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  if (s.forbidden) detail::rects(os, fr, *s.forbidden, "fill=\"lightgray\" stroke=\"none\"");
  if (s.doomed) detail::rects(os, fr, *s.doomed, "fill=\"red\" fill-opacity=\"0.35\" stroke=\"none\"");
  if (s.model) detail::rects(os, fr, *s.model, "fill=\"none\" stroke=\"black\" stroke-width=\"1\"");
  // axes through the start state
  os << "  <line x1=\"" << fr.px(fr.x0) << "\" y1=\"" << fr.py(fr.y0) << "\" x2=\"" << fr.px(fr.x1) << "\" y2=\""
     << fr.py(fr.y0) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  os << "  <line x1=\"" << fr.px(fr.x0) << "\" y1=\"" << fr.py(fr.y0) << "\" x2=\"" << fr.px(fr.x0) << "\" y2=\""
     << fr.py(fr.y1) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  for (const auto& p : s.deadlocks) {
    if (p.size() != 2) continue;
    os << "  <circle cx=\"" << fr.px(detail::to_double(p[0])) << "\" cy=\"" << fr.py(detail::to_double(p[1]))
       << "\" r=\"4\" fill=\"black\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace cubical::svg
