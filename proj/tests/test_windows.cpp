#include "doctest.h"
#include "ddt/errors.hpp"
#include "ddt/tracking.hpp"
#include "ddt/tu_probe.hpp"
#include "ddt/windows.hpp"
#include "test_util.hpp"
#include "window_cases.hpp"

using namespace ddt;
using namespace ddt::test;

TEST_CASE("window classes") {
  auto dirs = coordinate_dirs();
  Grid g = grid_of(PointSet{P(1, 1), P(2, 2)}, dirs);
  CHECK(classify_windows(g, {}) == WindowClass::kTuOrthogonal);
  CHECK(classify_windows(g, {window({P(1, 1), P(2, 1)}, Relation::kLe, 1),
                             window({P(2, 2)}, Relation::kGe, 1)}) == WindowClass::kTuOrthogonal);
  CHECK(classify_windows(g, {window({P(1, 1), P(2, 1)}, Relation::kLe, 1),
                             window({P(2, 1)}, Relation::kLe, 1)}) == WindowClass::kGeneral);
  CHECK(classify_windows(g, {window({P(1, 1), P(2, 1), P(1, 2), P(2, 2)}, Relation::kEq, 2)}) ==
        WindowClass::kSuperres2x2);
  CHECK(classify_windows(g, {window({P(1, 1), P(2, 1), P(1, 2), P(2, 2)}, Relation::kLe, 2)}) ==
        WindowClass::kGeneral);
  CHECK(classify_windows(g, {window({P(1, 1), P(2, 2)}, Relation::kLe, 1)}) == WindowClass::kGeneral);
  CHECK_THROWS_AS(classify_windows(g, {window({P(5, 5)}, Relation::kLe, 1)}), InputError);
  CHECK_THROWS_AS(classify_windows(g, {window({}, Relation::kLe, 1)}), InputError);

  // Four 2x2 blocks tile a 4x4 grid.
  std::vector<Point> all;
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) all.push_back(P(x, y));
  }
  Grid big = grid_of(PointSet(all), dirs);
  std::vector<WindowConstraint> blocks;
  for (int bx = 0; bx < 4; bx += 2) {
    for (int by = 0; by < 4; by += 2) {
      blocks.push_back(window({P(bx, by), P(bx + 1, by), P(bx, by + 1), P(bx + 1, by + 1)}, Relation::kEq, 4));
    }
  }
  CHECK(classify_windows(big, blocks) == WindowClass::kSuperres2x2);
  blocks.pop_back();
  CHECK(classify_windows(big, blocks) == WindowClass::kGeneral);
}

TEST_CASE("windowed frame examples") {
  auto dirs = coordinate_dirs();
  Grid g = grid_of(PointSet{P(1, 1), P(2, 2)}, dirs);
  auto a = solve_windowed_frame(g, {window({P(1, 1)}, Relation::kLe, 0)});
  REQUIRE(a.status == Status::kOk);
  CHECK(*a.support == PointSet{P(1, 2), P(2, 1)});

  auto b = solve_windowed_frame(g, {window({P(1, 1), P(2, 1)}, Relation::kEq, 1)});
  REQUIRE(b.status == Status::kOk);
  CHECK(b.window_class == WindowClass::kTuOrthogonal);
  // Both switching solutions keep one point in row 1.
  CHECK((*b.support == PointSet{P(1, 1), P(2, 2)} || *b.support == PointSet{P(1, 2), P(2, 1)}));

  Grid full = grid_of(PointSet{P(1, 1), P(2, 1), P(1, 2), P(2, 2)}, dirs);
  auto c = solve_windowed_frame(full, {window({P(1, 1), P(2, 1), P(1, 2), P(2, 2)}, Relation::kEq, 4)});
  CHECK(c.window_class == WindowClass::kSuperres2x2);
  REQUIRE(c.status == Status::kOk);
  CHECK(c.support->size() == 4);

  auto d = solve_windowed_frame(g, {window({P(1, 1), P(2, 2)}, Relation::kEq, 1)});
  CHECK(d.status == Status::kInfeasible);
}

TEST_CASE("windowed feasibility matches subset enumeration") {
  Rng rng(2024);
  int by_class[3] = {0, 0, 0};
  int by_relation[3] = {0, 0, 0};
  int feasible = 0, infeasible = 0;
  int done = 0;
  while (done < 360) {
    auto wc = random_window_case(rng, done % 3);
    if (!wc) continue;
    const auto& [dirs, truth, g, windows] = *wc;
    auto got = solve_windowed_frame(g, windows);
    const bool want = subset_oracle(g, windows);
    CHECK((got.status == Status::kOk) == want);
    if (got.status == Status::kOk) {
      CHECK(satisfies_windows(*got.support, windows));
      CHECK(tomographically_equivalent(*got.support, truth, dirs));
      ++feasible;
    } else {
      ++infeasible;
    }
    ++by_class[static_cast<int>(got.window_class)];
    for (const auto& w : windows) ++by_relation[static_cast<int>(w.relation)];
    ++done;
  }
  for (int c : by_class) CHECK(c > 20);
  for (int r : by_relation) CHECK(r > 20);
  CHECK(feasible > 50);
  CHECK(infeasible > 20);
}

TEST_CASE("stacked window systems and total unimodularity") {
  auto dirs = coordinate_dirs();
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    PointSet truth = random_set(rng, 4, 0, 5);
    Grid g = grid_of(truth, dirs);
    std::vector<WindowConstraint> windows;
    std::vector<bool> used(g.size(), false);
    for (std::size_t k = 0; k < 2; ++k) {
      std::size_t l = rng.below(g.lines(k).size());
      std::vector<Point> pts;
      for (std::size_t i : g.points_on(k, l)) {
        if (!used[i]) {
          used[i] = true;
          pts.push_back(g[i]);
        }
      }
      if (!pts.empty()) windows.push_back(window(pts, Relation::kLe, 1));
    }
    REQUIRE(classify_windows(g, windows) == WindowClass::kTuOrthogonal);
    LinearProgram lp = frame_lp(g, {});
    add_window_rows(lp, g, windows);
    CHECK(tu_probe(constraint_matrix(lp), 1000, 5, trial + 1));
  }
  // A diagonal window closes an odd cycle with a row and a column.
  Grid g = grid_of(PointSet{P(1, 1), P(2, 2)}, dirs);
  LinearProgram lp = frame_lp(g, {});
  std::vector<WindowConstraint> diag{window({P(2, 1), P(1, 2)}, Relation::kLe, 1)};
  add_window_rows(lp, g, diag);
  CHECK_FALSE(tu_probe(constraint_matrix(lp), 1000, 5, 1));
}

TEST_CASE("windowed tracking") {
  auto dirs = coordinate_dirs();
  PointSet f1{P(0, 0), P(3, 3)};
  PointSet f2{P(1, 0), P(3, 4)};
  auto inst = TomographyInstance::from_frames({f1, f2}, dirs, false);
  auto plain = tomtrac_ilp(inst);
  REQUIRE(plain.status == Status::kOk);

  auto track = [](const TomographyInstance& i) { return tomtrac_ilp(i); };
  // Windows that the truth satisfies.
  inst.windows = {{window({P(0, 0)}, Relation::kEq, 1)}, {window({P(1, 0), P(3, 0)}, Relation::kGe, 1)}};
  auto r = windowed_tracking(inst, track);
  REQUIRE(r.status == Status::kOk);
  for (std::size_t tau = 0; tau < 2; ++tau) CHECK(satisfies_windows(r.tracks.frames[tau], inst.windows[tau]));
  CHECK(r.tracks.frames[1] == f2);

  // Void windows change nothing.
  inst.windows = {{window({P(0, 0), P(3, 0)}, Relation::kLe, 2)}, {}};
  auto v = windowed_tracking(inst, track);
  CHECK(v.tracks.objective == plain.tracks.objective);
  CHECK(v.tracks.frames == plain.tracks.frames);

  // Row y = 0 holds one point, so emptying it is impossible.
  inst.windows = {{}, {window({P(1, 0), P(3, 0)}, Relation::kLe, 0)}};
  auto bad = windowed_tracking(inst, track);
  CHECK(bad.status == Status::kInfeasible);
  REQUIRE(bad.frame);
  CHECK(*bad.frame == 1);
}
