#pragma once

#include <string>
#include <vector>

#include "ddt/evaluate.hpp"
#include "ddt/instance.hpp"

namespace ddt {

// JSON documents. Rationals are written as "p/q" strings ("p" for
// integers); readers also accept plain JSON integers. Every reader throws
// InputError naming the source and the offending field (or the line and
// column for syntax errors).

std::string write_instance(const TomographyInstance& inst);
TomographyInstance read_instance(const std::string& text, const std::string& source = "instance");

/// Tracks sorted by their first point, plus status, objective and message.
std::string write_tracks(const TrackResult& result);
TrackResult read_tracks(const std::string& text, const std::string& source = "tracks");

std::string write_report(const EvalReport& report);

/// Plain point sets per frame with their viewing directions (input of the
/// `xray` command). Missing directions default to the coordinate axes.
struct PointFrames {
  std::vector<LatticeDirection> directions;
  std::vector<PointSet> frames;
};
PointFrames read_point_frames(const std::string& text, const std::string& source = "points");

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace ddt
