#include <string>

#include "doctest.h"
#include "ddt/errors.hpp"
#include "ddt/io.hpp"
#include "ddt/tracking.hpp"
#include "test_util.hpp"

using namespace ddt;
using namespace ddt::test;

namespace {

std::string error_of(const std::string& text) {
  try {
    read_instance(text, "doc.json");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("instance round trip") {
  PointSet f1{P(0, 0), P(R("1/2"), 3)}, f2{P(1, 1), P(2, 4)};
  auto inst = TomographyInstance::from_frames({f1, f2}, {dir(1, 0), dir(1, 1)}, false);
  inst.known = {f1, std::nullopt};
  inst.windows = {{}, {WindowConstraint{{P(1, 1), P(2, 4)}, Relation::kGe, 1}}};
  inst.weights.kind = WeightKind::kNearestPointAlpha;
  inst.weights.norm = NormSpec::max();
  inst.weights.k = 3;
  const std::string text = write_instance(inst);
  auto back = read_instance(text);
  CHECK(back.directions == inst.directions);
  CHECK(back.frames[1].second == inst.frames[1].second);
  CHECK(back.known == inst.known);
  CHECK(back.windows[1][0].relation == Relation::kGe);
  CHECK(back.weights.norm == NormSpec::max());
  CHECK(write_instance(back) == text);
}

TEST_CASE("displacement and weight tables round trip") {
  PointSet f1{P(0, 0), P(1, 0)};
  auto inst = TomographyInstance::from_frames({f1, f1, f1}, coordinate_dirs(), false);
  AffineMap shift = AffineMap::identity(2);
  inst.displacement = DisplacementField{{shift}, {}};
  CHECK(write_instance(read_instance(write_instance(inst))) == write_instance(inst));

  inst.displacement = DisplacementField{{shift, shift}, {}};
  auto steps = read_instance(write_instance(inst));
  CHECK(steps.displacement->affine.size() == 2);

  std::map<Point, Point> same{{P(0, 0), P(0, 0)}, {P(1, 0), P(1, 0)}};
  inst.displacement = DisplacementField{{}, {same, same}};
  CHECK(read_instance(write_instance(inst)).displacement->table == inst.displacement->table);

  inst.displacement.reset();
  inst.known = {f1, f1, f1};
  inst.weights.kind = WeightKind::kExplicit;
  WeightMatrix m{{Rational(1), std::nullopt}, {R("2/3"), Rational(0)}};
  inst.weights.explicit_edges = {m, m};
  auto ex = read_instance(write_instance(inst));
  CHECK(ex.weights.explicit_edges == inst.weights.explicit_edges);

  inst.weights.kind = WeightKind::kPathTable;
  inst.weights.explicit_edges.clear();
  inst.weights.path_table = {{{P(0, 0), P(0, 0), P(1, 0)}, R("5/2")}};
  CHECK(read_instance(write_instance(inst)).weights.path_table == inst.weights.path_table);
}

TEST_CASE("track round trip") {
  auto inst = TomographyInstance::from_frames({PointSet{P(0, 0), P(3, 3)}, PointSet{P(1, 0), P(3, 4)}},
                                              coordinate_dirs(), true);
  auto r = trac_markov(inst);
  const std::string text = write_tracks(r);
  auto back = read_tracks(text);
  CHECK(back.status == Status::kOk);
  CHECK(back.tracks.objective == r.tracks.objective);
  CHECK(back.tracks.path(1) == r.tracks.path(1));
  CHECK(write_tracks(back) == text);

  TrackResult bad;
  bad.status = Status::kInfeasible;
  bad.message = "frame 2 has no realization";
  bad.frame = 1;
  auto b = read_tracks(write_tracks(bad));
  CHECK(b.status == Status::kInfeasible);
  CHECK(b.message == bad.message);
}

TEST_CASE("diagnostics name the line or the field") {
  CHECK(contains(error_of("{\"frames\": [\n  [1,"), "line 2"));
  CHECK(contains(error_of("{}"), "missing field 'frames'"));
  CHECK(contains(error_of(R"({"frames": [[[{"anchor": ["0","0"]}], []]]})"), "frames[0][0][0]"));
  CHECK(contains(error_of(R"({"frames": [[[{"anchor": ["0","x"], "count": 1}], []]]})"), "frames[0][0][0].anchor[1]"));
  CHECK(contains(error_of(R"({"frames": [[[{"anchor": [0,0], "count": -1}], []]]})"), "nonnegative"));
  // Mass mismatch between the two directions.
  const std::string mismatch =
      R"({"frames": [[[{"anchor": [0,0], "count": 2}], [{"anchor": [0,0], "count": 1}]]]})";
  CHECK(contains(error_of(mismatch), "doc.json"));
  CHECK_FALSE(error_of(mismatch).empty());
  CHECK(contains(error_of(R"({"frames": [], "weights": {"kind": "cubic"}})"), "weights.kind"));
  CHECK_THROWS_AS(read_tracks(R"({"tracks": [[[0,0]], [[0,0]]]})"), InputError);
  CHECK_THROWS_AS(read_point_frames(R"({"frames": [[[0,0],[0,0]]]})"), InputError);
}

TEST_CASE("fixtures load") {
  for (const char* name : {"grid1", "nohistory", "switching", "twoway"}) {
    auto path = std::string(DDT_FIXTURE_DIR) + "/" + name + ".json";
    auto inst = read_instance(read_file(path), path);
    CHECK(inst.t() >= 2);
  }
  auto g = read_instance(read_file(DDT_FIXTURE_DIR "/grid1.json"));
  CHECK(g.grid(1).size() == 9);
}
