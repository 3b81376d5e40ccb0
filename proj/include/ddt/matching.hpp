#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ddt/rational.hpp"

namespace ddt {

/// nullopt marks a forbidden edge.
using EdgeWeight = std::optional<Rational>;
using WeightMatrix = std::vector<std::vector<EdgeWeight>>;

struct MatchingResult {
  bool feasible = false;
  /// assignment[i] = column matched to row i (0-based).
  std::vector<std::size_t> assignment;
  Rational value;
};

/// Hungarian algorithm, O(n^3) in exact arithmetic. Among all optimal
/// permutations the lexicographically smallest is returned. Infeasible iff
/// every perfect matching uses a forbidden edge.
MatchingResult min_weight_perfect_matching(const WeightMatrix& weights);
MatchingResult min_weight_perfect_matching(const std::vector<std::vector<Rational>>& weights);

}  // namespace ddt
