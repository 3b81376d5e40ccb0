#pragma once

// Shared by the window unit tests and the acceptance run: random windowed
// frames and a subset-enumeration feasibility oracle.

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <tuple>

#include "ddt/tracking.hpp"
#include "ddt/windows.hpp"
#include "test_util.hpp"

namespace ddt::test {

inline Grid grid_of(const PointSet& truth, const std::vector<LatticeDirection>& dirs) {
  return grid_from_xrays(xray(truth, dirs[0], 0), xray(truth, dirs[1], 1), dirs);
}

inline WindowConstraint window(std::vector<Point> pts, Relation rel, std::int64_t bound) {
  return WindowConstraint{std::move(pts), rel, bound};
}

// Feasibility by plain subset enumeration with bit masks.
inline bool subset_oracle(const Grid& g, const std::vector<WindowConstraint>& windows) {
  std::vector<std::pair<std::uint32_t, std::int64_t>> eq;
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t l = 0; l < g.lines(k).size(); ++l) {
      std::uint32_t m = 0;
      for (std::size_t i : g.points_on(k, l)) m |= 1u << i;
      eq.emplace_back(m, g.counts(k)[l]);
    }
  }
  std::vector<std::tuple<std::uint32_t, Relation, std::int64_t>> win;
  for (const auto& w : windows) {
    std::uint32_t m = 0;
    for (const auto& p : w.points) m |= 1u << g.index_of(p);
    win.emplace_back(m, w.relation, w.bound);
  }
  const std::uint32_t total = 1u << g.size();
  for (std::uint32_t s = 0; s < total; ++s) {
    bool ok = true;
    for (auto [m, c] : eq) {
      if (std::popcount(s & m) != c) {
        ok = false;
        break;
      }
    }
    for (std::size_t w = 0; ok && w < win.size(); ++w) {
      auto [m, rel, b] = win[w];
      std::int64_t c = std::popcount(s & m);
      ok = rel == Relation::kLe ? c <= b : rel == Relation::kEq ? c == b : c >= b;
    }
    if (ok) return true;
  }
  return false;
}

inline std::vector<std::vector<Rational>> constraint_matrix(const LinearProgram& lp) {
  std::vector<std::vector<Rational>> m;
  for (const auto& row : lp.rows) {
    std::vector<Rational> r(lp.num_vars());
    for (const auto& [j, c] : row.coeffs) r[j] = c;
    m.push_back(std::move(r));
  }
  return m;
}

inline Relation random_relation(Rng& rng) { return static_cast<Relation>(rng.below(3)); }

struct WindowCase {
  std::vector<LatticeDirection> dirs;
  PointSet truth;
  Grid grid;
  std::vector<WindowConstraint> windows;
};

/// kind 0: disjoint windows inside X-ray lines, 1: aligned 2x2 blocks with
/// equality, 2: arbitrary subsets (sometimes with a skew direction). Bounds
/// are the truth's counts two times in three, otherwise random. nullopt
/// when the grid exceeds 20 points.
inline std::optional<WindowCase> random_window_case(Rng& rng, int kind) {
  const std::vector<LatticeDirection> skew{dir(1, 0), dir(1, 1)};
  auto dirs = kind == 2 && rng.coin() ? skew : coordinate_dirs();
  PointSet truth;
  Grid g;
  if (kind == 1) {
    const std::int64_t side = rng.coin() ? 2 : 4;
    std::vector<Point> pts;
    for (std::int64_t x = 0; x < side; ++x) {
      for (std::int64_t y = 0; y < side; ++y) {
        // Keep the diagonal so every row and column is occupied.
        if (x == y || rng.coin()) pts.push_back(P(x, y));
      }
    }
    truth = PointSet(pts);
  } else {
    truth = random_set(rng, 2 + rng.below(4), 0, 4);
  }
  g = grid_of(truth, dirs);
  if (g.size() > 20) return std::nullopt;
  std::vector<WindowConstraint> windows;
  auto bound_for = [&](const std::vector<Point>& pts) {
    std::int64_t c = 0;
    for (const auto& p : pts) c += truth.contains(p) ? 1 : 0;
    return rng.below(3) == 0 ? static_cast<std::int64_t>(rng.below(pts.size() + 1)) : c;
  };
  if (kind == 0) {
    std::vector<bool> used(g.size(), false);
    for (std::size_t w = 0, count = 1 + rng.below(3); w < count; ++w) {
      std::size_t k = rng.below(2);
      std::size_t l = rng.below(g.lines(k).size());
      std::vector<Point> pts;
      for (std::size_t i : g.points_on(k, l)) {
        if (!used[i] && rng.coin()) {
          used[i] = true;
          pts.push_back(g[i]);
        }
      }
      if (pts.empty()) continue;
      Relation rel = random_relation(rng);
      windows.push_back(window(pts, rel, bound_for(pts)));
    }
  } else if (kind == 1) {
    const std::int64_t side = static_cast<std::int64_t>(std::sqrt(static_cast<double>(g.size())));
    for (std::int64_t bx = 0; bx < side; bx += 2) {
      for (std::int64_t by = 0; by < side; by += 2) {
        std::vector<Point> pts{P(bx, by), P(bx + 1, by), P(bx, by + 1), P(bx + 1, by + 1)};
        windows.push_back(window(pts, Relation::kEq, bound_for(pts)));
      }
    }
  } else {
    for (std::size_t w = 0, count = 1 + rng.below(3); w < count; ++w) {
      std::vector<Point> pts;
      for (const auto& p : g.points()) {
        if (rng.below(3) == 0) pts.push_back(p);
      }
      if (pts.empty()) pts.push_back(g[rng.below(g.size())]);
      windows.push_back(window(pts, random_relation(rng), bound_for(pts)));
    }
  }
  return WindowCase{dirs, truth, g, windows};
}

}  // namespace ddt::test
