#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ddt/instance.hpp"

namespace ddt {

/// Markov edge weights of an instance over its per-frame grids.
class EdgeWeights {
 public:
  /// grids[tau] must be the instance's candidate grid of frame tau.
  EdgeWeights(const TomographyInstance& inst, const std::vector<Grid>& grids);

  /// Weight of the edge from grid point gi of frame tau to grid point gj of
  /// frame tau + 1; nullopt when forbidden.
  EdgeWeight operator()(std::size_t tau, std::size_t gi, std::size_t gj) const;

  /// Weights between selected grid points of consecutive frames.
  WeightMatrix matrix(std::size_t tau, const std::vector<std::size_t>& from,
                      const std::vector<std::size_t>& to) const;

  const std::vector<Grid>& grids() const { return grids_; }

 private:
  WeightModel model_;
  std::vector<Grid> grids_;
  std::vector<std::vector<Rational>> alpha_;
};

/// Twice the signed area is det(b - a, c - a); this returns the area.
Rational triangle_area(const Point& a, const Point& b, const Point& c);

/// Sum of triangle areas over consecutive triples of every track.
Rational straightness(const TrackSet& tracks);

/// Cost of one full path under a non-Markov model (or the sum of its edge
/// weights for a Markov model). nullopt when forbidden.
std::optional<Rational> path_cost(const TomographyInstance& inst, const EdgeWeights& edges,
                                  const std::vector<Point>& path);

/// Objective of a track set under the instance's weight model; nullopt if
/// some edge or path is forbidden. Throws InputError if a track point is
/// not a grid point and the model needs grid indices.
std::optional<Rational> evaluate_objective(const TomographyInstance& inst, const TrackSet& tracks);
std::optional<Rational> evaluate_objective(const TomographyInstance& inst, const EdgeWeights& edges,
                                           const TrackSet& tracks);

/// Certified comparison of sum(sqrt(a_i)) against sum(sqrt(b_i)) for
/// nonnegative rationals: -1, 0 (equal or unresolved within max_bits), 1.
int compare_sqrt_sums(const std::vector<Rational>& a, const std::vector<Rational>& b,
                      unsigned max_bits = 512);

/// Squared Euclidean length of every edge of every track.
std::vector<Rational> squared_edge_lengths(const TrackSet& tracks);

}  // namespace ddt
