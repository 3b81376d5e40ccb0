#pragma once

#include <optional>
#include <vector>

#include "ddt/instance.hpp"
#include "ddt/lp.hpp"
#include "ddt/norm.hpp"

namespace ddt {

/// Sorts the tracks and sets the objective from the instance's weight
/// model; a forbidden edge here is a logic error.
void finalize_tracks(const TomographyInstance& inst, TrackResult& result);

/// LP over x in [0,1]^grid with one equality row per X-ray line
/// (sum of x over the line = count) and the given objective.
LinearProgram frame_lp(const Grid& grid, const std::vector<Rational>& objective);

/// Appends window rows over variables offset + grid index. Throws
/// InputError when a window point is not a grid point.
void add_window_rows(LinearProgram& lp, const Grid& grid,
                     const std::vector<WindowConstraint>& windows, std::size_t offset = 0);

/// Every frame known: one minimum-weight matching per step.
TrackResult trac_markov(const TomographyInstance& inst);

/// The coupled program below: per-frame point variables (xi_offset[tau] +
/// grid index, fixed to 1 on known frames) followed by one variable per
/// allowed consecutive grid-point pair.
struct CoupledProgram {
  struct Edge {
    std::size_t tau, from, to, var;
  };
  IlpModel model;
  std::vector<std::size_t> xi_offset;
  std::vector<Edge> edges;
};
CoupledProgram coupled_program(const TomographyInstance& inst, const std::vector<Grid>& grids);

/// Coupled 0/1 program over all frames: tomographic variables per grid
/// point, tracking variables per consecutive grid-point pair, leaving and
/// entering rows tying them together. Windows are added as frame rows.
TrackResult tomtrac_ilp(const TomographyInstance& inst, const IlpOptions& options = {});

struct RollingOptions {
  /// Norm for the point weights and the step matchings (default: squared
  /// Euclidean).
  NormSpec point_norm = NormSpec::euclid2();
  IlpOptions ilp;
};

/// Support chosen for the next frame: LP over the grid with point weights
/// alpha_g = min over prev of h(||g - p||). nullopt when infeasible; throws
/// BudgetExhausted when a windowed step runs out of nodes.
std::optional<PointSet> rolling_step(const Grid& next, const PointSet& prev, const NormSpec& norm,
                                     const std::vector<WindowConstraint>& windows = {},
                                     const IlpOptions& ilp = {});

/// Rolling horizon from the known first frame.
TrackResult rolling_horizon(const TomographyInstance& inst, const RollingOptions& options = {});

/// Reconstruction under an affine (or tabulated) displacement field: frame-1
/// variables on the pullback of all later grids, every frame's X-rays
/// imposed on the mapped variables, zero objective.
TrackResult tomdisplacetrac(const TomographyInstance& inst, const IlpOptions& options = {});

/// Maps a frame-1 set through the displacement field; nullopt when a
/// tabulated field is silent somewhere.
std::optional<std::vector<PointSet>> push_forward(const TomographyInstance& inst, const PointSet& f1);

}  // namespace ddt
