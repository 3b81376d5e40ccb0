#pragma once

#include <string>
#include <vector>

#include "ddt/instance.hpp"

namespace ddt {

/// SVG sketch of a tracking result: candidate grids as hollow markers,
/// frame points as filled dots (one colour per frame) and tracks as
/// polylines. Any of the inputs may be empty.
std::string plot_svg(const std::vector<Grid>& grids, const TrackSet& tracks);

}  // namespace ddt
