#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddt/instance.hpp"

namespace ddt {

enum class MotionKind { kStatic, kStraightLine, kPolynomial, kAffineField };

const char* to_string(MotionKind m);
MotionKind parse_motion_kind(const std::string& text);

struct Scenario {
  std::size_t n = 3;
  std::size_t t = 3;
  MotionKind motion = MotionKind::kStraightLine;
  /// Every frame must stay inside [-box, box]^2.
  std::int64_t box = 100;
  /// Bound on each velocity (or polynomial coefficient) component.
  std::int64_t max_speed = 5;
  /// Polynomial degree for kPolynomial.
  unsigned degree = 2;
  /// Map applied between frames for kAffineField (default: the 45 degree
  /// rotation with sqrt(2) dilation).
  std::optional<AffineMap> field;
  /// Straight-line particles whose tracks cross near the middle frame, in
  /// pairs; the remaining particles are drawn independently.
  std::size_t crossing_pairs = 0;
  /// Minimum max-norm distance between distinct particles in every frame.
  std::int64_t min_separation = 1;
  /// Explicit straight-line data; when `starts` is set no random draws
  /// happen. offsets[j][tau] is added to particle j at frame tau.
  std::vector<Point> starts;
  std::vector<Point> velocities;
  std::vector<std::vector<Point>> offsets;
  /// 0-based frames whose positions are revealed in the instance.
  std::vector<std::size_t> known_frames;
  std::vector<LatticeDirection> directions;  // default: coordinate axes
  std::uint64_t seed = 1;
  std::size_t max_attempts = 10'000;
};

struct GeneratedScenario {
  TomographyInstance instance;
  TrackSet truth;
};

/// Deterministic per seed. Throws InputError when the box cannot hold n
/// separated particles or no draw stays inside it within max_attempts.
/// Self-checks that the instance's X-rays are those of the truth.
GeneratedScenario generate(const Scenario& scenario);

}  // namespace ddt
