#pragma once

#include <string>
#include <vector>

#include "ddt/geometry.hpp"
#include "ddt/rng.hpp"

namespace ddt::test {

inline Rational R(const char* text) { return Rational::parse(text); }
inline Point P(Rational x, Rational y) { return Point{std::move(x), std::move(y)}; }

inline LatticeDirection dir(std::int64_t a, std::int64_t b) {
  std::int64_t v[2] = {a, b};
  return LatticeDirection::from_integers(v);
}

inline std::vector<LatticeDirection> coordinate_dirs() { return {dir(1, 0), dir(0, 1)}; }

/// X-rays along (1,0) ("rows", keyed by y) and (0,1) ("cols", keyed by x)
/// given as explicit line positions and counts.
inline XRayData rows(const std::vector<std::pair<std::int64_t, std::int64_t>>& y_count) {
  XRayData d;
  d.direction_index = 0;
  for (auto [y, c] : y_count) {
    if (c > 0) d.lines[P(0, y)] = c;
  }
  return d;
}

inline XRayData cols(const std::vector<std::pair<std::int64_t, std::int64_t>>& x_count) {
  XRayData d;
  d.direction_index = 1;
  for (auto [x, c] : x_count) {
    if (c > 0) d.lines[P(x, 0)] = c;
  }
  return d;
}

/// n distinct integer points in [lo, hi]^2.
inline PointSet random_set(Rng& rng, std::size_t n, std::int64_t lo, std::int64_t hi) {
  std::vector<Point> pts;
  while (PointSet(pts).size() < n) {
    pts = PointSet(pts).points();
    pts.push_back(P(rng.range(lo, hi), rng.range(lo, hi)));
  }
  return PointSet(pts);
}

}  // namespace ddt::test
