#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ddt/geometry.hpp"

namespace ddt {

/// Default largest grid the enumeration oracles accept.
inline constexpr std::size_t kDefaultEnumerationBound = 24;

struct ReconstructionResult {
  bool feasible = false;
  std::optional<PointSet> solution;
  std::optional<bool> unique;
  std::optional<std::int64_t> count;
};

/// One realization of the grid's X-ray counts as an incidence vector, or
/// nullopt when none exists. Greedy fill followed by augmenting-path repair.
std::optional<std::vector<bool>> realize_on_grid(const Grid& grid);

/// Throws InputError on a mass mismatch or identical directions.
ReconstructionResult reconstruct_two(const XRayData& f1, const XRayData& f2,
                                     std::span<const LatticeDirection> directions);

/// True iff the realization is the only one on its grid. A second solution
/// exists iff the line graph (present points oriented one way, absent points
/// the other) has a directed cycle, i.e. a switching configuration.
bool is_unique_realization(const Grid& grid, const std::vector<bool>& chosen);

/// Throws InputError when the X-rays are inconsistent.
bool check_uniqueness(const XRayData& f1, const XRayData& f2,
                      std::span<const LatticeDirection> directions);

/// Calls visit for every realization in lexicographic order of the
/// incidence vectors (a point taken before it is skipped); visit returns
/// false to stop. Throws BoundsExceeded above `bound` grid points.
void enumerate_realizations(const Grid& grid,
                            const std::function<bool(const std::vector<bool>&)>& visit,
                            std::size_t bound = kDefaultEnumerationBound);

std::vector<std::vector<bool>> all_realizations(const Grid& grid,
                                                std::size_t bound = kDefaultEnumerationBound);

std::int64_t count_solutions(const XRayData& f1, const XRayData& f2,
                             std::span<const LatticeDirection> directions, std::int64_t cap,
                             std::size_t bound = kDefaultEnumerationBound);

PointSet support(const Grid& grid, const std::vector<bool>& chosen);

}  // namespace ddt
