#include "ddt/static_tomography.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "ddt/errors.hpp"

namespace ddt {
namespace {

void check_pair(const XRayData& f1, const XRayData& f2) {
  if (f1.direction_index == f2.direction_index) {
    throw InputError("reconstruction needs two distinct directions");
  }
  if (f1.mass() != f2.mass()) {
    throw InputError("X-ray masses differ: " + std::to_string(f1.mass()) + " vs " +
                     std::to_string(f2.mass()));
  }
}

// Augments along residual paths rows -> cols (unused points) and cols -> rows
// (used points) until no deficit can be reduced.
void repair(const Grid& grid, std::vector<bool>& chosen, std::vector<std::int64_t>& need_row,
            std::vector<std::int64_t>& need_col) {
  const std::size_t rows = grid.lines(0).size();
  const std::size_t cols = grid.lines(1).size();
  while (true) {
    // Node ids: rows [0, rows), cols [rows, rows + cols). pred stores the
    // grid point used to reach a node.
    std::vector<std::size_t> pred(rows + cols, grid.size());
    std::vector<bool> seen(rows + cols, false);
    std::deque<std::size_t> queue;
    for (std::size_t r = 0; r < rows; ++r) {
      if (need_row[r] > 0) {
        seen[r] = true;
        queue.push_back(r);
      }
    }
    std::size_t target = rows + cols;
    while (!queue.empty() && target == rows + cols) {
      std::size_t node = queue.front();
      queue.pop_front();
      if (node < rows) {
        for (std::size_t p : grid.points_on(0, node)) {
          if (chosen[p]) continue;
          std::size_t c = rows + grid.line_of(1, p);
          if (seen[c]) continue;
          seen[c] = true;
          pred[c] = p;
          if (need_col[c - rows] > 0) {
            target = c;
            break;
          }
          queue.push_back(c);
        }
      } else {
        for (std::size_t p : grid.points_on(1, node - rows)) {
          if (!chosen[p]) continue;
          std::size_t r = grid.line_of(0, p);
          if (seen[r]) continue;
          seen[r] = true;
          pred[r] = p;
          queue.push_back(r);
        }
      }
    }
    if (target == rows + cols) return;
    --need_col[target - rows];
    std::size_t node = target;
    while (true) {
      std::size_t p = pred[node];
      if (node >= rows) {
        chosen[p] = true;
        node = grid.line_of(0, p);
        if (pred[node] == grid.size()) {
          --need_row[node];
          break;
        }
      } else {
        chosen[p] = false;
        node = rows + grid.line_of(1, p);
      }
    }
  }
}

}  // namespace

std::optional<std::vector<bool>> realize_on_grid(const Grid& grid) {
  const auto& c0 = grid.counts(0);
  const auto& c1 = grid.counts(1);
  if (std::accumulate(c0.begin(), c0.end(), std::int64_t{0}) !=
      std::accumulate(c1.begin(), c1.end(), std::int64_t{0})) {
    return std::nullopt;
  }
  std::vector<bool> chosen(grid.size(), false);
  std::vector<std::int64_t> need_row(c0.begin(), c0.end());
  std::vector<std::int64_t> need_col(c1.begin(), c1.end());

  std::vector<std::size_t> order(c0.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return c0[a] > c0[b]; });
  for (std::size_t r : order) {
    std::vector<std::size_t> cand(grid.points_on(0, r).begin(), grid.points_on(0, r).end());
    std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
      std::size_t la = grid.line_of(1, a);
      std::size_t lb = grid.line_of(1, b);
      if (need_col[la] != need_col[lb]) return need_col[la] > need_col[lb];
      return la < lb;
    });
    for (std::size_t p : cand) {
      if (need_row[r] == 0) break;
      std::size_t col = grid.line_of(1, p);
      if (need_col[col] == 0) continue;
      chosen[p] = true;
      --need_row[r];
      --need_col[col];
    }
  }
  repair(grid, chosen, need_row, need_col);
  for (auto v : need_row) {
    if (v != 0) return std::nullopt;
  }
  return chosen;
}

PointSet support(const Grid& grid, const std::vector<bool>& chosen) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (chosen[i]) pts.push_back(grid[i]);
  }
  return PointSet(std::move(pts));
}

ReconstructionResult reconstruct_two(const XRayData& f1, const XRayData& f2,
                                     std::span<const LatticeDirection> directions) {
  check_pair(f1, f2);
  Grid grid = grid_from_xrays(f1, f2, directions);
  ReconstructionResult out;
  auto chosen = realize_on_grid(grid);
  if (!chosen) return out;
  out.feasible = true;
  out.solution = support(grid, *chosen);
  return out;
}

bool is_unique_realization(const Grid& grid, const std::vector<bool>& chosen) {
  const std::size_t rows = grid.lines(0).size();
  const std::size_t nodes = rows + grid.lines(1).size();
  std::vector<std::vector<std::size_t>> adj(nodes);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    std::size_t r = grid.line_of(0, p);
    std::size_t c = rows + grid.line_of(1, p);
    if (chosen[p]) {
      adj[r].push_back(c);
    } else {
      adj[c].push_back(r);
    }
  }
  // 0 = unvisited, 1 = on stack, 2 = done.
  std::vector<int> state(nodes, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t s = 0; s < nodes; ++s) {
    if (state[s] != 0) continue;
    stack.emplace_back(s, 0);
    state[s] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == adj[v].size()) {
        state[v] = 2;
        stack.pop_back();
        continue;
      }
      std::size_t w = adj[v][next++];
      if (state[w] == 1) return false;
      if (state[w] == 0) {
        state[w] = 1;
        stack.emplace_back(w, 0);
      }
    }
  }
  return true;
}

bool check_uniqueness(const XRayData& f1, const XRayData& f2,
                      std::span<const LatticeDirection> directions) {
  check_pair(f1, f2);
  Grid grid = grid_from_xrays(f1, f2, directions);
  auto chosen = realize_on_grid(grid);
  if (!chosen) throw InputError("uniqueness check on infeasible X-rays");
  return is_unique_realization(grid, *chosen);
}

void enumerate_realizations(const Grid& grid,
                            const std::function<bool(const std::vector<bool>&)>& visit,
                            std::size_t bound) {
  if (grid.size() > bound) {
    throw BoundsExceeded("grid of " + std::to_string(grid.size()) +
                         " points exceeds the enumeration bound " + std::to_string(bound));
  }
  const std::size_t n = grid.size();
  std::vector<std::int64_t> need[2] = {grid.counts(0), grid.counts(1)};
  // remaining[k][i]: points on i's direction-k line with index > i.
  std::vector<std::int64_t> remaining[2];
  for (int k = 0; k < 2; ++k) {
    remaining[k].assign(n, 0);
    std::vector<std::int64_t> seen(grid.lines(k).size(), 0);
    for (std::size_t i = n; i-- > 0;) {
      remaining[k][i] = seen[grid.line_of(k, i)]++;
    }
  }
  for (int k = 0; k < 2; ++k) {
    for (std::size_t l = 0; l < grid.lines(k).size(); ++l) {
      if (static_cast<std::int64_t>(grid.points_on(k, l).size()) < need[k][l]) return;
    }
  }
  std::vector<bool> chosen(n, false);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == n) {
      if (!visit(chosen)) stop = true;
      return;
    }
    std::size_t r = grid.line_of(0, i);
    std::size_t c = grid.line_of(1, i);
    if (need[0][r] > 0 && need[1][c] > 0) {
      chosen[i] = true;
      --need[0][r];
      --need[1][c];
      if (need[0][r] <= remaining[0][i] && need[1][c] <= remaining[1][i]) rec(i + 1);
      ++need[0][r];
      ++need[1][c];
      chosen[i] = false;
    }
    if (need[0][r] <= remaining[0][i] && need[1][c] <= remaining[1][i]) rec(i + 1);
  };
  rec(0);
}

std::vector<std::vector<bool>> all_realizations(const Grid& grid, std::size_t bound) {
  std::vector<std::vector<bool>> out;
  enumerate_realizations(
      grid,
      [&](const std::vector<bool>& c) {
        out.push_back(c);
        return true;
      },
      bound);
  return out;
}

std::int64_t count_solutions(const XRayData& f1, const XRayData& f2,
                             std::span<const LatticeDirection> directions, std::int64_t cap,
                             std::size_t bound) {
  check_pair(f1, f2);
  Grid grid = grid_from_xrays(f1, f2, directions);
  std::int64_t count = 0;
  enumerate_realizations(
      grid,
      [&](const std::vector<bool>&) {
        ++count;
        return count < cap;
      },
      bound);
  return count;
}

}  // namespace ddt
