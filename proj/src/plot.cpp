#include "ddt/plot.hpp"

#include <algorithm>
#include <cstdio>

namespace ddt {
namespace {

constexpr double kSize = 640.0;
constexpr double kMargin = 24.0;
const char* const kColours[] = {"#1b6ca8", "#d1495b", "#2e933c", "#edae49", "#6a4c93", "#00798c"};

std::string fmt(const char* pattern, double a, double b, double c = 0) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

}  // namespace

std::string plot_svg(const std::vector<Grid>& grids, const TrackSet& tracks) {
  double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;
  bool first = true;
  auto extend = [&](const Point& p) {
    const double x = p[0].to_double(), y = p[1].to_double();
    if (first) {
      lo_x = hi_x = x;
      lo_y = hi_y = y;
      first = false;
    }
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  };
  for (const auto& g : grids) std::for_each(g.points().begin(), g.points().end(), extend);
  for (const auto& f : tracks.frames) std::for_each(f.begin(), f.end(), extend);
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double scale = (kSize - 2 * kMargin) / span;
  // SVG y grows downwards.
  auto sx = [&](const Point& p) { return kMargin + (p[0].to_double() - lo_x) * scale; };
  auto sy = [&](const Point& p) { return kSize - kMargin - (p[1].to_double() - lo_y) * scale; };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
  out += "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
  for (std::size_t tau = 0; tau < grids.size(); ++tau) {
    const char* colour = kColours[tau % std::size(kColours)];
    for (const auto& p : grids[tau].points()) {
      out += fmt("<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.1f\" fill=\"none\"", sx(p), sy(p), 6.0);
      out += std::string(" stroke=\"") + colour + "\"/>\n";
    }
  }
  for (std::size_t j = 0; j < tracks.n(); ++j) {
    out += "<polyline fill=\"none\" stroke=\"#555\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : tracks.path(j)) out += fmt("%.3f,%.3f ", sx(p), sy(p));
    out += "\"/>\n";
  }
  for (std::size_t tau = 0; tau < tracks.t(); ++tau) {
    const char* colour = kColours[tau % std::size(kColours)];
    for (const auto& p : tracks.frames[tau]) {
      out += fmt("<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.1f\"", sx(p), sy(p), 3.5);
      out += std::string(" fill=\"") + colour + "\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace ddt
