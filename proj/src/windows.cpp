#include "ddt/windows.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ddt/errors.hpp"
#include "ddt/static_tomography.hpp"
#include "ddt/tracking.hpp"

namespace ddt {
namespace {

std::vector<std::size_t> window_indices(const Grid& grid, const WindowConstraint& w) {
  if (w.points.empty()) throw InputError("empty window");
  std::vector<std::size_t> idx;
  for (const auto& p : w.points) {
    std::size_t i = grid.index_of(p);
    if (i == grid.size()) throw InputError("window point " + p.to_string() + " is not a grid point");
    idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
    throw InputError("window lists a point twice");
  }
  return idx;
}

bool within_one_line(const Grid& grid, const std::vector<std::size_t>& idx) {
  for (std::size_t k = 0; k < 2; ++k) {
    bool same = std::all_of(idx.begin(), idx.end(), [&](std::size_t i) {
      return grid.line_of(k, i) == grid.line_of(k, idx.front());
    });
    if (same) return true;
  }
  return false;
}

bool is_integer(const Rational& r) { return r.denominator() == 1; }

// Side length 2q and the lower-left corner when the grid is a full square
// block of consecutive integers whose X-ray lines are rows and columns.
std::optional<std::pair<std::int64_t, Point>> square_block(const Grid& grid) {
  if (grid.empty() || grid[0].dim() != 2) return std::nullopt;
  std::set<Rational> xs, ys;
  for (const auto& p : grid.points()) {
    if (!is_integer(p[0]) || !is_integer(p[1])) return std::nullopt;
    xs.insert(p[0]);
    ys.insert(p[1]);
  }
  const std::size_t side = xs.size();
  if (side % 2 != 0 || ys.size() != side || grid.size() != side * side) return std::nullopt;
  if (*xs.rbegin() - *xs.begin() != Rational(static_cast<std::int64_t>(side) - 1)) return std::nullopt;
  if (*ys.rbegin() - *ys.begin() != Rational(static_cast<std::int64_t>(side) - 1)) return std::nullopt;
  // Every X-ray line must be a row or a column.
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t l = 0; l < grid.lines(k).size(); ++l) {
      const auto& on = grid.points_on(k, l);
      bool row = std::all_of(on.begin(), on.end(), [&](std::size_t i) { return grid[i][1] == grid[on[0]][1]; });
      bool col = std::all_of(on.begin(), on.end(), [&](std::size_t i) { return grid[i][0] == grid[on[0]][0]; });
      if (!row && !col) return std::nullopt;
    }
  }
  return std::make_pair(static_cast<std::int64_t>(side), Point{*xs.begin(), *ys.begin()});
}

bool is_superres(const Grid& grid, const std::vector<WindowConstraint>& windows) {
  auto block = square_block(grid);
  if (!block) return false;
  const std::int64_t q = block->first / 2;
  if (windows.size() != static_cast<std::size_t>(q * q)) return false;
  std::set<std::pair<Rational, Rational>> corners;
  for (const auto& w : windows) {
    if (w.relation != Relation::kEq || w.points.size() != 4) return false;
    Rational x = w.points[0][0], y = w.points[0][1];
    for (const auto& p : w.points) {
      x = min(x, p[0]);
      y = min(y, p[1]);
    }
    // Aligned: even offset from the corner.
    Rational dx = x - block->second[0], dy = y - block->second[1];
    if (!is_integer(dx / Rational(2)) || !is_integer(dy / Rational(2))) return false;
    std::set<Point> want{Point{x, y}, Point{x + Rational(1), y}, Point{x, y + Rational(1)},
                         Point{x + Rational(1), y + Rational(1)}};
    if (std::set<Point>(w.points.begin(), w.points.end()) != want) return false;
    corners.emplace(x, y);
  }
  return corners.size() == windows.size();
}

}  // namespace

const char* to_string(WindowClass c) {
  switch (c) {
    case WindowClass::kTuOrthogonal:
      return "tu-orthogonal";
    case WindowClass::kSuperres2x2:
      return "superres-2x2";
    case WindowClass::kGeneral:
      return "general";
  }
  return "general";
}

WindowClass classify_windows(const Grid& grid, const std::vector<WindowConstraint>& windows) {
  std::vector<bool> used(grid.size(), false);
  bool tu = true;
  for (const auto& w : windows) {
    auto idx = window_indices(grid, w);
    if (!within_one_line(grid, idx)) tu = false;
    for (std::size_t i : idx) {
      if (used[i]) tu = false;
      used[i] = true;
    }
  }
  if (tu) return WindowClass::kTuOrthogonal;
  if (is_superres(grid, windows)) return WindowClass::kSuperres2x2;
  return WindowClass::kGeneral;
}

WindowedFrame solve_windowed_frame(const Grid& grid, const std::vector<WindowConstraint>& windows,
                                   const std::vector<Rational>& objective, const IlpOptions& ilp) {
  WindowedFrame r;
  r.window_class = classify_windows(grid, windows);
  LinearProgram lp = frame_lp(grid, objective);
  add_window_rows(lp, grid, windows);
  SolveOutcome out;
  if (r.window_class == WindowClass::kTuOrthogonal) {
    out = solve_lp(lp);
    if (out.status == SolveStatus::kOptimal) {
      for (std::size_t j = 0; j < grid.size(); ++j) {
        if (!out.primal[j].is_zero() && out.primal[j] != Rational(1)) {
          throw std::logic_error("window LP vertex is not integral");
        }
      }
    }
  } else {
    IlpModel model{lp, {}, {}};
    for (std::size_t j = 0; j < grid.size(); ++j) model.integral.push_back(j);
    if (r.window_class == WindowClass::kSuperres2x2) {
      for (const auto& w : windows) model.branch_groups.push_back(window_indices(grid, w));
    }
    out = solve_ilp(model, ilp);
  }
  if (out.status == SolveStatus::kBudgetExhausted) {
    r.status = Status::kBudgetExhausted;
    return r;
  }
  if (out.status != SolveStatus::kOptimal) {
    r.status = Status::kInfeasible;
    return r;
  }
  std::vector<bool> chosen(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) chosen[j] = out.primal[j] == Rational(1);
  r.support = support(grid, chosen);
  return r;
}

TrackResult windowed_tracking(const TomographyInstance& inst,
                              const std::function<TrackResult(const TomographyInstance&)>& track,
                              const IlpOptions& ilp) {
  inst.validate();
  for (std::size_t tau = 0; tau < inst.t() && !inst.windows.empty(); ++tau) {
    if (inst.windows[tau].empty()) continue;
    if (inst.is_known(tau)) {
      if (!satisfies_windows(*inst.known[tau], inst.windows[tau])) {
        TrackResult r;
        r.status = Status::kInfeasible;
        r.message = "known frame " + std::to_string(tau + 1) + " violates its windows";
        r.frame = tau;
        return r;
      }
      continue;
    }
    auto f = solve_windowed_frame(inst.grid(tau), inst.windows[tau], {}, ilp);
    if (f.status != Status::kOk) {
      TrackResult r;
      r.status = f.status;
      r.message = f.status == Status::kInfeasible
                      ? "frame " + std::to_string(tau + 1) + " has no solution within its windows"
                      : "node budget exhausted on frame " + std::to_string(tau + 1);
      r.frame = tau;
      return r;
    }
  }
  return track(inst);
}

bool satisfies_windows(const PointSet& points, const std::vector<WindowConstraint>& windows) {
  for (const auto& w : windows) {
    std::int64_t c = 0;
    for (const auto& p : w.points) c += points.contains(p) ? 1 : 0;
    switch (w.relation) {
      case Relation::kLe:
        if (c > w.bound) return false;
        break;
      case Relation::kEq:
        if (c != w.bound) return false;
        break;
      case Relation::kGe:
        if (c < w.bound) return false;
        break;
    }
  }
  return true;
}

}  // namespace ddt
