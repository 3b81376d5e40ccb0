#pragma once

#include <optional>
#include <vector>

#include "ddt/instance.hpp"

namespace ddt {

struct EvalReport {
  /// Fraction of ground-truth edges (consecutive points of one track) that
  /// some result track also contains. Track labels play no role.
  Rational edge_accuracy;
  /// Per frame, fraction of ground-truth points the result reconstructed.
  std::vector<Rational> frame_accuracy;
  /// Result objective minus the optimum, when an optimum is supplied.
  std::optional<Rational> objective_gap;
};

/// Throws InputError when the shapes (n, t) differ.
EvalReport evaluate(const TrackSet& result, const TrackSet& truth,
                    const std::optional<Rational>& optimum = std::nullopt);

}  // namespace ddt
