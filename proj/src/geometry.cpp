#include "ddt/geometry.hpp"

#include <algorithm>
#include <numeric>

#include "ddt/errors.hpp"

namespace ddt {

const char* to_string(Status status) {
  switch (status) {
    case Status::kOk:
      return "ok";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kBudgetExhausted:
      return "budget-exhausted";
  }
  return "unknown";
}

Point& Point::operator+=(const Point& rhs) {
  if (rhs.dim() != dim()) throw InputError("point dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

Point& Point::operator-=(const Point& rhs) {
  if (rhs.dim() != dim()) throw InputError("point dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

Point operator*(const Rational& s, Point p) {
  for (auto& c : p.coords_) c *= s;
  return p;
}

std::string Point::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) out += ",";
    out += coords_[i].to_string();
  }
  return out + ")";
}

Rational dot(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw InputError("point dimension mismatch");
  Rational s;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

LatticeDirection LatticeDirection::from_integers(std::span<const std::int64_t> v) {
  std::vector<Rational> r(v.begin(), v.end());
  return from_rationals(r);
}

LatticeDirection LatticeDirection::from_rationals(std::span<const Rational> v) {
  if (v.empty()) throw InputError("empty direction vector");
  mpz_class lcm_den = 1;
  for (const auto& c : v) {
    mpz_class d = c.denominator();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& c : v) {
    mpz_class z = c.numerator() * (lcm_den / c.denominator());
    ints.push_back(z);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
  }
  if (g == 0) throw InputError("direction vector must be nonzero");
  int lead = 0;
  for (const auto& z : ints) {
    if (z != 0) {
      lead = sgn(z);
      break;
    }
  }
  std::vector<Rational> coords;
  for (auto& z : ints) {
    mpz_class q = z / g;
    if (lead < 0) q = -q;
    coords.emplace_back(mpq_class(q));
  }
  return LatticeDirection(Point(std::move(coords)));
}

Point canonical_anchor(const LatticeDirection& direction, const Point& point) {
  if (direction.dim() != point.dim()) {
    throw InputError("direction of dimension " + std::to_string(direction.dim()) +
                     " applied to point of dimension " + std::to_string(point.dim()));
  }
  const Point& s = direction.vector();
  Rational t = dot(point, s) / dot(s, s);
  return point - t * s;
}

LineAnchor canonical_line(const LatticeDirection& direction, const Point& point,
                          std::size_t direction_index) {
  return LineAnchor{direction_index, canonical_anchor(direction, point)};
}

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool PointSet::contains(const Point& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

std::size_t PointSet::index_of(const Point& p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) return points_.size();
  return static_cast<std::size_t>(it - points_.begin());
}

std::int64_t XRayData::mass() const {
  std::int64_t m = 0;
  for (const auto& [_, c] : lines) m += c;
  return m;
}

XRayData xray(const PointSet& points, const LatticeDirection& direction,
              std::size_t direction_index) {
  XRayData data;
  data.direction_index = direction_index;
  for (const auto& p : points) ++data.lines[canonical_anchor(direction, p)];
  return data;
}

std::size_t Grid::index_of(const Point& p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) return points_.size();
  return static_cast<std::size_t>(it - points_.begin());
}

std::int64_t Grid::mass() const {
  return std::accumulate(line_counts_[0].begin(), line_counts_[0].end(), std::int64_t{0});
}

Grid grid_from_xrays(const XRayData& f1, const XRayData& f2,
                     std::span<const LatticeDirection> directions) {
  if (f1.direction_index >= directions.size() || f2.direction_index >= directions.size()) {
    throw InputError("X-ray refers to an unknown direction");
  }
  const LatticeDirection& d1 = directions[f1.direction_index];
  const LatticeDirection& d2 = directions[f2.direction_index];
  if (d1 == d2) throw InputError("grid construction needs two distinct directions");
  if (d1.dim() != d2.dim()) throw InputError("direction dimension mismatch");

  const Point& s1 = d1.vector();
  const Point& s2 = d2.vector();
  const Rational s11 = dot(s1, s1);
  const Rational s12 = dot(s1, s2);
  const Rational s22 = dot(s2, s2);
  const Rational det = s12 * s12 - s11 * s22;  // nonzero: directions are not parallel

  Grid g;
  for (const auto& [anchor, count] : f1.lines) {
    g.line_anchors_[0].push_back(anchor);
    g.line_counts_[0].push_back(count);
  }
  for (const auto& [anchor, count] : f2.lines) {
    g.line_anchors_[1].push_back(anchor);
    g.line_counts_[1].push_back(count);
  }

  struct Hit {
    Point p;
    std::size_t l1;
    std::size_t l2;
  };
  std::vector<Hit> hits;
  for (std::size_t i = 0; i < g.line_anchors_[0].size(); ++i) {
    const Point& a1 = g.line_anchors_[0][i];
    for (std::size_t j = 0; j < g.line_anchors_[1].size(); ++j) {
      const Point& a2 = g.line_anchors_[1][j];
      // lambda*s1 - mu*s2 = a2 - a1, via the 2x2 normal equations.
      Point diff = a2 - a1;
      Rational r1 = dot(s1, diff);
      Rational r2 = dot(s2, diff);
      Rational lambda = (-r1 * s22 + s12 * r2) / det;
      Point p = a1 + lambda * s1;
      if (canonical_anchor(d2, p) != a2) continue;  // skew lines (d > 2)
      hits.push_back(Hit{std::move(p), i, j});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.p < b.p; });
  hits.erase(std::unique(hits.begin(), hits.end(),
                         [](const Hit& a, const Hit& b) { return a.p == b.p; }),
             hits.end());

  for (int k = 0; k < 2; ++k) g.members_[k].assign(g.line_anchors_[k].size(), {});
  for (std::size_t idx = 0; idx < hits.size(); ++idx) {
    g.points_.push_back(hits[idx].p);
    g.line_of_[0].push_back(hits[idx].l1);
    g.line_of_[1].push_back(hits[idx].l2);
    g.members_[0][hits[idx].l1].push_back(idx);
    g.members_[1][hits[idx].l2].push_back(idx);
  }
  return g;
}

Grid restrict_grid(const Grid& grid, const std::vector<bool>& keep) {
  Grid g;
  for (int k = 0; k < 2; ++k) {
    g.line_anchors_[k] = grid.line_anchors_[k];
    g.line_counts_[k] = grid.line_counts_[k];
    g.members_[k].assign(g.line_anchors_[k].size(), {});
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!keep[i]) continue;
    std::size_t idx = g.points_.size();
    g.points_.push_back(grid.points_[i]);
    for (int k = 0; k < 2; ++k) {
      g.line_of_[k].push_back(grid.line_of_[k][i]);
      g.members_[k][grid.line_of_[k][i]].push_back(idx);
    }
  }
  return g;
}

Grid grid_from_points(const PointSet& points, std::span<const LatticeDirection> directions) {
  if (directions.size() < 2) throw InputError("need two directions");
  Grid g;
  XRayData x[2] = {xray(points, directions[0], 0), xray(points, directions[1], 1)};
  for (int k = 0; k < 2; ++k) {
    for (const auto& [anchor, count] : x[k].lines) {
      g.line_anchors_[k].push_back(anchor);
      g.line_counts_[k].push_back(count);
    }
    g.members_[k].assign(g.line_anchors_[k].size(), {});
  }
  g.points_ = points.points();
  for (std::size_t idx = 0; idx < g.points_.size(); ++idx) {
    for (int k = 0; k < 2; ++k) {
      Point a = canonical_anchor(directions[k], g.points_[idx]);
      auto it = std::lower_bound(g.line_anchors_[k].begin(), g.line_anchors_[k].end(), a);
      auto line = static_cast<std::size_t>(it - g.line_anchors_[k].begin());
      g.line_of_[k].push_back(line);
      g.members_[k][line].push_back(idx);
    }
  }
  return g;
}

bool tomographically_equivalent(const PointSet& a, const PointSet& b,
                                std::span<const LatticeDirection> directions) {
  for (const auto& d : directions) {
    if (xray(a, d).lines != xray(b, d).lines) return false;
  }
  return true;
}

bool realizes(const Grid& grid, const std::vector<bool>& chosen) {
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t line = 0; line < grid.lines(k).size(); ++line) {
      std::int64_t c = 0;
      for (std::size_t i : grid.points_on(k, line)) c += chosen[i] ? 1 : 0;
      if (c != grid.counts(k)[line]) return false;
    }
  }
  return true;
}

}  // namespace ddt
