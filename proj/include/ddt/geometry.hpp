#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ddt/rational.hpp"

namespace ddt {

/// A point of Q^d.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<Rational> coords) : coords_(coords) {}

  std::size_t dim() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  std::span<const Rational> coords() const { return coords_; }

  Point& operator+=(const Point& rhs);
  Point& operator-=(const Point& rhs);
  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(const Rational& s, Point p);

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point& a, const Point& b) { return a.coords_ <=> b.coords_; }

  std::string to_string() const;

 private:
  std::vector<Rational> coords_;
};

Rational dot(const Point& a, const Point& b);

/// Primitive integer direction vector spanning a lattice line. Entries are
/// coprime as a tuple and the first nonzero entry is positive.
class LatticeDirection {
 public:
  /// Normalizes any nonzero integer vector to its primitive canonical form.
  static LatticeDirection from_integers(std::span<const std::int64_t> v);
  /// Normalizes any nonzero rational vector (scaled to integers first).
  static LatticeDirection from_rationals(std::span<const Rational> v);

  std::size_t dim() const { return vec_.dim(); }
  const Point& vector() const { return vec_; }
  const Rational& operator[](std::size_t i) const { return vec_[i]; }

  friend bool operator==(const LatticeDirection&, const LatticeDirection&) = default;
  friend auto operator<=>(const LatticeDirection&, const LatticeDirection&) = default;

 private:
  explicit LatticeDirection(Point v) : vec_(std::move(v)) {}
  Point vec_;
};

/// Canonical representative of the line p + span(direction): the projection
/// of p onto the orthogonal complement of the direction.
Point canonical_anchor(const LatticeDirection& direction, const Point& point);

struct LineAnchor {
  std::size_t direction_index = 0;
  Point anchor;

  friend bool operator==(const LineAnchor&, const LineAnchor&) = default;
  friend auto operator<=>(const LineAnchor&, const LineAnchor&) = default;
};

/// Throws InputError on dimension mismatch.
LineAnchor canonical_line(const LatticeDirection& direction, const Point& point,
                          std::size_t direction_index = 0);

/// Finite set of points, kept sorted lexicographically without duplicates.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<Point> points);
  PointSet(std::initializer_list<Point> points) : PointSet(std::vector<Point>(points)) {}

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }
  bool contains(const Point& p) const;
  /// Index of p, or size() when absent.
  std::size_t index_of(const Point& p) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;
  friend auto operator<=>(const PointSet& a, const PointSet& b) { return a.points_ <=> b.points_; }

 private:
  std::vector<Point> points_;
};

/// X-ray data of one direction: counts per support line. Zero-count lines are
/// never stored.
struct XRayData {
  std::size_t direction_index = 0;
  std::map<Point, std::int64_t> lines;

  std::int64_t mass() const;
  friend bool operator==(const XRayData&, const XRayData&) = default;
};

XRayData xray(const PointSet& points, const LatticeDirection& direction,
              std::size_t direction_index = 0);

/// Candidate grid of a two-direction X-ray pair. Points are sorted
/// lexicographically; each point knows its line in both supports.
class Grid {
 public:
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }

  /// Support lines of direction k (0 or 1), in anchor order.
  const std::vector<Point>& lines(std::size_t k) const { return line_anchors_[k]; }
  const std::vector<std::int64_t>& counts(std::size_t k) const { return line_counts_[k]; }
  /// Indices of the grid points on line `line` of direction k.
  const std::vector<std::size_t>& points_on(std::size_t k, std::size_t line) const {
    return members_[k][line];
  }
  /// Line index (into lines(k)) of grid point i.
  std::size_t line_of(std::size_t k, std::size_t i) const { return line_of_[k][i]; }
  std::size_t index_of(const Point& p) const;
  std::int64_t mass() const;

  friend Grid grid_from_xrays(const XRayData& f1, const XRayData& f2,
                              std::span<const LatticeDirection> directions);
  friend Grid restrict_grid(const Grid& grid, const std::vector<bool>& keep);
  friend Grid grid_from_points(const PointSet& points, std::span<const LatticeDirection> directions);

 private:
  std::vector<Point> points_;
  std::vector<Point> line_anchors_[2];
  std::vector<std::int64_t> line_counts_[2];
  std::vector<std::vector<std::size_t>> members_[2];
  std::vector<std::size_t> line_of_[2];
};

/// All rational intersection points of a support line of f1 with a support
/// line of f2. Throws InputError if both use the same direction.
Grid grid_from_xrays(const XRayData& f1, const XRayData& f2,
                     std::span<const LatticeDirection> directions);

/// Same lines and counts, keeping only the flagged points (indices are
/// renumbered in order).
Grid restrict_grid(const Grid& grid, const std::vector<bool>& keep);

/// Grid consisting of exactly the given points, with the X-ray lines of the
/// first two directions (a positionally determined frame).
Grid grid_from_points(const PointSet& points, std::span<const LatticeDirection> directions);

bool tomographically_equivalent(const PointSet& a, const PointSet& b,
                                std::span<const LatticeDirection> directions);

/// Incidence vector of a subset of grid points, checked against both X-rays.
bool realizes(const Grid& grid, const std::vector<bool>& chosen);

}  // namespace ddt
