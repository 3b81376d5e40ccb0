#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "ddt/instance.hpp"

namespace ddt {

/// Limits of the exhaustive solvers.
struct OracleBounds {
  std::size_t max_grid = 16;
  std::int64_t max_n = 6;
  std::size_t max_t = 4;
  /// Cap on enumerated (realization sequence, coupling) combinations for
  /// non-Markov models.
  std::uint64_t max_combinations = 20'000'000;
};

/// Exact optimum over all per-frame realizations and all couplings.
/// Markov models use dynamic programming over frames (exhaustive couplings
/// per consecutive realization pair); other models enumerate everything.
/// Ties keep the first optimum in enumeration order. Throws BoundsExceeded
/// outside the bounds.
TrackResult brute_force_tomtrac(const TomographyInstance& inst, const OracleBounds& bounds = {});

/// A frame-1 realization whose displacement images realize every later
/// frame, by enumeration of frame-1 realizations.
std::optional<PointSet> brute_force_displacement(const TomographyInstance& inst,
                                                 const OracleBounds& bounds = {});

}  // namespace ddt
