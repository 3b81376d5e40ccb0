#include "doctest.h"
#include "ddt/errors.hpp"
#include "ddt/rng.hpp"
#include "ddt/static_tomography.hpp"
#include "test_util.hpp"

using namespace ddt;
using namespace ddt::test;

namespace {

// Independent oracle: all subsets of the grid compared through xray().
std::int64_t subset_count(const Grid& g, const XRayData& f1, const XRayData& f2,
                          std::span<const LatticeDirection> dirs) {
  std::int64_t count = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << g.size()); ++mask) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (mask >> i & 1) pts.push_back(g[i]);
    }
    PointSet f(pts);
    if (xray(f, dirs[f1.direction_index], f1.direction_index).lines == f1.lines &&
        xray(f, dirs[f2.direction_index], f2.direction_index).lines == f2.lines) {
      ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("reconstruct_two examples") {
  auto dirs = coordinate_dirs();
  auto r = reconstruct_two(rows({{0, 2}, {1, 1}}), cols({{0, 1}, {1, 1}, {2, 1}}), dirs);
  REQUIRE(r.feasible);
  CHECK(xray(*r.solution, dirs[0], 0) == rows({{0, 2}, {1, 1}}));
  CHECK(xray(*r.solution, dirs[1], 1) == cols({{0, 1}, {1, 1}, {2, 1}}));

  auto forced = reconstruct_two(rows({{0, 2}}), cols({{0, 1}, {1, 1}}), dirs);
  REQUIRE(forced.feasible);
  CHECK(*forced.solution == PointSet{P(0, 0), P(1, 0)});

  CHECK_THROWS_AS(reconstruct_two(rows({{0, 2}}), cols({{0, 1}}), dirs), InputError);
}

TEST_CASE("partial grid infeasibility") {
  auto dirs = coordinate_dirs();
  Grid full = grid_from_xrays(rows({{0, 2}}), cols({{0, 1}, {1, 1}}), dirs);
  REQUIRE(full.size() == 2);
  CHECK(realize_on_grid(full).has_value());
  // Drop (1,0): the row needs two points but only one candidate remains.
  Grid partial = restrict_grid(full, {true, false});
  CHECK(partial.size() == 1);
  CHECK_FALSE(realize_on_grid(partial).has_value());
  CHECK(all_realizations(partial).empty());
}

TEST_CASE("uniqueness and counting examples") {
  auto dirs = coordinate_dirs();
  CHECK_FALSE(check_uniqueness(rows({{0, 1}, {1, 1}}), cols({{0, 1}, {1, 1}}), dirs));
  CHECK(check_uniqueness(rows({{0, 2}}), cols({{0, 1}, {1, 1}}), dirs));
  CHECK(check_uniqueness(rows({{0, 2}, {1, 1}}), cols({{0, 2}, {1, 1}}), dirs));

  CHECK(count_solutions(rows({{0, 1}, {1, 1}}), cols({{0, 1}, {1, 1}}), dirs, 100) == 2);
  CHECK(count_solutions(rows({{0, 2}, {1, 2}}), cols({{0, 2}, {1, 2}}), dirs, 100) == 1);
  CHECK(count_solutions(rows({{0, 1}, {1, 1}}), cols({{0, 1}, {1, 1}}), dirs, 1) == 1);
}

TEST_CASE("infeasible X-rays count zero") {
  auto dirs = coordinate_dirs();
  // Rows (2,0) vs cols (2,0): one column would need two points on one row.
  auto f1 = rows({{0, 2}});
  auto f2 = cols({{0, 2}});
  CHECK(count_solutions(f1, f2, dirs, 10) == 0);
  CHECK_FALSE(reconstruct_two(f1, f2, dirs).feasible);
  CHECK_THROWS_AS(check_uniqueness(f1, f2, dirs), InputError);
}

TEST_CASE("enumeration bound is enforced") {
  auto dirs = coordinate_dirs();
  std::vector<std::pair<std::int64_t, std::int64_t>> r, c;
  for (int i = 0; i < 5; ++i) {
    r.push_back({i, 1});
    c.push_back({i, 1});
  }
  CHECK_THROWS_AS(count_solutions(rows(r), cols(c), dirs, 1000), BoundsExceeded);
  CHECK(count_solutions(rows(r), cols(c), dirs, 1000, 25) == 120);
}

TEST_CASE("random instances agree with the subset oracle") {
  Rng rng(2024);
  int feasible_seen = 0, infeasible_seen = 0, unique_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<LatticeDirection> dirs = trial % 2 == 0
                                             ? coordinate_dirs()
                                             : std::vector<LatticeDirection>{dir(1, 1), dir(1, -2)};
    std::vector<Point> pts;
    int n = static_cast<int>(rng.range(1, 5));
    for (int i = 0; i < n; ++i) pts.push_back(P(rng.range(0, 3), rng.range(0, 3)));
    PointSet f(pts);
    XRayData f1 = xray(f, dirs[0], 0);
    XRayData f2 = xray(f, dirs[1], 1);
    // Perturb some instances into (usually) infeasible ones.
    if (rng.below(2) == 0 && f1.lines.size() > 1) {
      auto it = f1.lines.begin();
      auto jt = std::next(it);
      if (jt->second > 1) {
        ++it->second;
        --jt->second;
      } else {
        ++it->second;
        f1.lines.erase(jt);
      }
    }
    Grid g = grid_from_xrays(f1, f2, dirs);
    if (g.size() > 16) continue;
    std::int64_t oracle = subset_count(g, f1, f2, dirs);
    auto r = reconstruct_two(f1, f2, dirs);
    CHECK(r.feasible == (oracle >= 1));
    CHECK(count_solutions(f1, f2, dirs, 1'000'000) == oracle);
    if (r.feasible) {
      ++feasible_seen;
      CHECK(xray(*r.solution, dirs[0], 0) == f1);
      CHECK(xray(*r.solution, dirs[1], 1) == f2);
      bool unique = check_uniqueness(f1, f2, dirs);
      CHECK(unique == (oracle == 1));
      unique_seen += unique ? 1 : 0;
      auto again = reconstruct_two(f1, f2, dirs);
      CHECK(again.solution == r.solution);
    } else {
      ++infeasible_seen;
    }
  }
  CHECK(feasible_seen > 50);
  CHECK(infeasible_seen > 10);
  CHECK(unique_seen > 10);
}
