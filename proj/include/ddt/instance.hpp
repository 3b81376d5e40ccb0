#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddt/errors.hpp"
#include "ddt/geometry.hpp"
#include "ddt/lp.hpp"
#include "ddt/matching.hpp"
#include "ddt/norm.hpp"

namespace ddt {

/// x -> matrix * x + translation.
struct AffineMap {
  std::vector<std::vector<Rational>> matrix;
  Point translation;

  static AffineMap identity(std::size_t dim);
  Point apply(const Point& x) const;
  /// nullopt when the matrix is singular.
  std::optional<AffineMap> inverse() const;
  /// Image of a direction under the linear part, normalized.
  LatticeDirection apply_linear(const LatticeDirection& s) const;
};

/// Particle displacement between consecutive frames: either affine maps
/// (one shared map or one per step) or tabulated partial maps per step.
struct DisplacementField {
  std::vector<AffineMap> affine;
  std::vector<std::map<Point, Point>> table;

  bool is_affine() const { return !affine.empty(); }
  /// Map for step tau -> tau + 1 (0-based); nullopt where a table is silent.
  std::optional<Point> apply(std::size_t step, const Point& x) const;
  const AffineMap& affine_step(std::size_t step) const;
};

/// The displacement field maps neither X-ray direction onto an X-ray
/// direction (only the first two directions are considered).
bool is_proper(const AffineMap& phi, const std::vector<LatticeDirection>& directions);

struct WindowConstraint {
  std::vector<Point> points;
  Relation relation = Relation::kLe;
  std::int64_t bound = 0;
};

enum class WeightKind {
  kSquaredEuclidean,
  kEuclidean,
  kExplicit,
  kNearestPointAlpha,
  kTriangleArea,
  kPathTable,
};

const char* to_string(WeightKind k);
WeightKind parse_weight_kind(const std::string& text);

/// Track cost model.
///   kSquaredEuclidean: edge weight |p - q|^2.
///   kEuclidean:        edge weight h(||p - q||) for `norm`.
///   kExplicit:         per step a |G^tau| x |G^tau+1| table over grid indices.
///   kNearestPointAlpha: edge weight alpha(p) + alpha(q), alpha from the
///                      sample-fit weights with parameter k and `norm`.
///   kTriangleArea:     sum over consecutive triples of the triangle area.
///   kPathTable:        whole-path costs; unlisted paths are forbidden.
struct WeightModel {
  WeightKind kind = WeightKind::kSquaredEuclidean;
  NormSpec norm = NormSpec::euclid2();
  std::size_t k = 2;
  std::vector<WeightMatrix> explicit_edges;
  std::map<std::vector<Point>, Rational> path_table;

  bool is_markov() const {
    return kind != WeightKind::kTriangleArea && kind != WeightKind::kPathTable;
  }
};

struct FrameData {
  XRayData first;   // direction index 0
  XRayData second;  // direction index 1
};

struct TomographyInstance {
  std::size_t dim = 2;
  std::vector<LatticeDirection> directions;
  std::vector<FrameData> frames;
  /// Per frame; empty vector means no frame is known.
  std::vector<std::optional<PointSet>> known;
  std::optional<DisplacementField> displacement;
  /// Per frame; empty vector means no windows.
  std::vector<std::vector<WindowConstraint>> windows;
  WeightModel weights;

  std::size_t t() const { return frames.size(); }
  std::int64_t n() const { return frames.empty() ? 0 : frames[0].first.mass(); }
  bool is_known(std::size_t tau) const { return tau < known.size() && known[tau].has_value(); }
  bool positionally_determined() const;

  /// Throws InputError on mass mismatches, bad direction indices, known
  /// frames that do not realize their X-rays, or malformed tables.
  void validate() const;

  /// Candidate grid of a frame: the known points for known frames,
  /// otherwise the intersection grid of the two X-rays.
  Grid grid(std::size_t tau) const;
  std::vector<Grid> grids() const;

  /// Builds an instance whose frames are the X-rays of the given sets.
  static TomographyInstance from_frames(const std::vector<PointSet>& frames,
                                        std::vector<LatticeDirection> directions,
                                        bool mark_known);
};

struct TrackSet {
  std::vector<PointSet> frames;
  /// tracks[j][tau] indexes frames[tau].
  std::vector<std::vector<std::size_t>> tracks;
  Rational objective;

  std::size_t t() const { return frames.size(); }
  std::size_t n() const { return tracks.size(); }
  std::vector<Point> path(std::size_t j) const;
  /// Sorts tracks by their first point.
  void canonicalize();
  /// Builds from per-step permutations: perms[tau][i] is the frame tau+1
  /// index following index i of frame tau.
  static TrackSet from_couplings(std::vector<PointSet> frames,
                                 const std::vector<std::vector<std::size_t>>& perms);
};

/// Outcome of a tracking algorithm. `tracks` is meaningful when status is
/// kOk (and, for budget exhaustion, may hold the best incumbent).
struct TrackResult {
  Status status = Status::kOk;
  TrackSet tracks;
  std::string message;
  /// Frame (0-based) blamed for infeasibility, when known.
  std::optional<std::size_t> frame;
};

/// Coupling bijectivity and per-frame X-ray consistency.
bool valid_trackset(const TomographyInstance& inst, const TrackSet& tracks);

}  // namespace ddt
