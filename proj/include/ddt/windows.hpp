#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ddt/instance.hpp"
#include "ddt/lp.hpp"

namespace ddt {

enum class WindowClass {
  /// Pairwise disjoint windows, each inside one X-ray line: the stacked
  /// system stays totally unimodular and an LP vertex is already 0/1.
  kTuOrthogonal,
  /// Grid is a 2q x 2q block of consecutive integers (coordinate
  /// directions) and the windows are exactly its aligned 2x2 blocks, all
  /// with equality relations.
  kSuperres2x2,
  kGeneral,
};

const char* to_string(WindowClass c);

/// Purely syntactic classification. Throws InputError when a window point
/// is not a grid point or a window is empty.
WindowClass classify_windows(const Grid& grid, const std::vector<WindowConstraint>& windows);

struct WindowedFrame {
  Status status = Status::kOk;
  WindowClass window_class = WindowClass::kGeneral;
  std::optional<PointSet> support;
};

/// One frame's X-ray rows plus window rows. The TU class is solved as an LP
/// (integrality asserted), the others by branch-and-bound; superresolution
/// instances branch block by block. The objective defaults to zero.
WindowedFrame solve_windowed_frame(const Grid& grid, const std::vector<WindowConstraint>& windows,
                                   const std::vector<Rational>& objective = {},
                                   const IlpOptions& ilp = {});

/// Checks every frame of a windowed instance on its own, then runs the
/// given tracking algorithm on the full instance. A frame without a
/// windowed solution is reported as infeasible with its index.
TrackResult windowed_tracking(const TomographyInstance& inst,
                              const std::function<TrackResult(const TomographyInstance&)>& track,
                              const IlpOptions& ilp = {});

/// Whether a point set satisfies every window.
bool satisfies_windows(const PointSet& points, const std::vector<WindowConstraint>& windows);

}  // namespace ddt
