#include "doctest.h"
#include "ddt/errors.hpp"
#include "ddt/evaluate.hpp"
#include "ddt/io.hpp"
#include "ddt/scenario.hpp"
#include "test_util.hpp"

using namespace ddt;
using namespace ddt::test;

namespace {

TrackSet two_tracks(std::vector<std::size_t> second) {
  TrackSet ts;
  ts.frames = {PointSet{P(0, 0), P(0, 5)}, PointSet{P(1, 0), P(1, 5)}};
  ts.tracks = {{0, second[0]}, {1, second[1]}};
  return ts;
}

}  // namespace

TEST_CASE("static single particle") {
  Scenario s;
  s.n = 1;
  s.t = 4;
  s.motion = MotionKind::kStatic;
  auto g = generate(s);
  REQUIRE(g.instance.t() == 4);
  for (std::size_t tau = 1; tau < 4; ++tau) {
    CHECK(g.instance.frames[tau].first == g.instance.frames[0].first);
    CHECK(g.instance.frames[tau].second == g.instance.frames[0].second);
  }
  CHECK(g.instance.frames[0].first.lines.size() == 1);
  CHECK(g.truth.objective == 0);
}

TEST_CASE("explicit straight-line data reproduces the no-history fixture") {
  Scenario s;
  s.t = 3;
  s.starts = {P(0, 0), P(0, 2)};
  s.velocities = {P(2, 1), P(2, -1)};
  s.offsets = {{P(0, 0), P(0, R("-1/10")), P(0, 0)}, {P(0, 0), P(0, R("1/10")), P(0, 0)}};
  s.known_frames = {0, 1, 2};
  auto g = generate(s);
  CHECK(write_instance(g.instance) == read_file(DDT_FIXTURE_DIR "/nohistory.json"));
  CHECK(g.truth.path(0) == std::vector<Point>{P(0, 0), P(2, R("9/10")), P(4, 2)});
}

TEST_CASE("affine field scenario") {
  Scenario s;
  s.n = 4;
  s.t = 3;
  s.motion = MotionKind::kAffineField;
  s.box = 50;
  auto g = generate(s);
  REQUIRE(g.instance.displacement.has_value());
  const AffineMap& phi = g.instance.displacement->affine_step(0);
  CHECK(phi.matrix == std::vector<std::vector<Rational>>{{1, -1}, {1, 1}});
  std::vector<Point> image;
  for (const auto& p : g.truth.frames[0]) image.push_back(phi.apply(p));
  CHECK(xray(PointSet(image), g.instance.directions[0], 0) == g.instance.frames[1].first);
  CHECK(xray(PointSet(image), g.instance.directions[1], 1) == g.instance.frames[1].second);
}

TEST_CASE("generation is deterministic and stays in the box") {
  for (auto motion : {MotionKind::kStatic, MotionKind::kStraightLine, MotionKind::kPolynomial}) {
    Scenario s;
    s.n = 6;
    s.t = 4;
    s.box = 30;
    s.motion = motion;
    s.seed = 77;
    s.min_separation = 2;
    auto a = generate(s), b = generate(s);
    CHECK(write_instance(a.instance) == write_instance(b.instance));
    for (const auto& f : a.truth.frames) {
      CHECK(f.size() == 6);
      for (const auto& p : f) {
        CHECK(p[0].abs() <= 30);
        CHECK(p[1].abs() <= 30);
      }
    }
    s.seed = 78;
    CHECK(write_instance(generate(s).instance) != write_instance(a.instance));
  }
  Scenario crowded;
  crowded.n = 10;
  crowded.box = 1;
  CHECK_THROWS_AS(generate(crowded), InputError);
}

TEST_CASE("crossing pairs meet near the middle frame") {
  Scenario s;
  s.n = 4;
  s.t = 3;
  s.crossing_pairs = 2;
  s.seed = 5;
  auto g = generate(s);
  CHECK(g.truth.n() == 4);
  for (std::size_t j = 0; j < 4; ++j) {
    auto p = g.truth.path(j);
    // Straight: equal steps.
    CHECK(p[1] - p[0] == p[2] - p[1]);
  }
}

TEST_CASE("evaluation") {
  auto truth = two_tracks({0, 1});
  auto same = evaluate(truth, truth, Rational(0));
  CHECK(same.edge_accuracy == 1);
  CHECK(same.frame_accuracy == std::vector<Rational>{1, 1});
  CHECK(*same.objective_gap == 0);

  TrackSet relabelled = truth;
  std::swap(relabelled.tracks[0], relabelled.tracks[1]);
  CHECK(evaluate(relabelled, truth).edge_accuracy == 1);

  auto wrong = evaluate(two_tracks({1, 0}), truth);
  CHECK(wrong.edge_accuracy == 0);
  CHECK(wrong.frame_accuracy == std::vector<Rational>{1, 1});
  CHECK_FALSE(wrong.objective_gap.has_value());

  TrackSet short_one = truth;
  short_one.frames.pop_back();
  for (auto& tr : short_one.tracks) tr.pop_back();
  CHECK_THROWS_AS(evaluate(short_one, truth), InputError);
}

TEST_CASE("accuracies stay in [0, 1] on random cross pairings") {
  std::vector<TrackSet> truths;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Scenario s;
    s.n = 3;
    s.t = 3;
    s.box = 3;
    s.seed = seed;
    truths.push_back(generate(s).truth);
  }
  for (const auto& a : truths) {
    for (const auto& b : truths) {
      auto r = evaluate(a, b);
      CHECK(r.edge_accuracy >= 0);
      CHECK(r.edge_accuracy <= 1);
      for (const auto& f : r.frame_accuracy) {
        CHECK(f >= 0);
        CHECK(f <= 1);
      }
    }
  }
}
