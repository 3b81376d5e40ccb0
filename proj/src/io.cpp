#include "ddt/io.hpp"

#include <fstream>
#include <sstream>

#include "ddt/errors.hpp"
#include "json.hpp"

namespace ddt {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// A JSON value plus its path inside the document, for error messages.
class Field {
 public:
  Field(const json& value, std::string source, std::string path)
      : v_(value), source_(std::move(source)), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(source_ + ": " + (path_.empty() ? "document" : path_) + ": " + what);
  }

  bool has(const char* key) const { return v_.is_object() && v_.contains(key) && !v_[key].is_null(); }

  Field at(const char* key) const {
    if (!v_.is_object()) fail("expected an object");
    if (!v_.contains(key)) fail(std::string("missing field '") + key + "'");
    return Field(v_[key], source_, path_.empty() ? key : path_ + "." + key);
  }

  std::size_t size() const {
    if (!v_.is_array()) fail("expected an array");
    return v_.size();
  }

  Field operator[](std::size_t i) const {
    if (!v_.is_array() || i >= v_.size()) fail("expected an array with index " + std::to_string(i));
    return Field(v_[i], source_, path_ + "[" + std::to_string(i) + "]");
  }

  bool is_null() const { return v_.is_null(); }

  std::int64_t integer() const {
    if (!v_.is_number_integer()) fail("expected an integer");
    return v_.get<std::int64_t>();
  }

  std::string string() const {
    if (!v_.is_string()) fail("expected a string");
    return v_.get<std::string>();
  }

  Rational rational() const {
    if (v_.is_number_integer()) return Rational(v_.get<std::int64_t>());
    if (!v_.is_string()) fail("expected a rational string like \"3/4\"");
    try {
      return Rational::parse(v_.get<std::string>());
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }

  Point point(std::size_t dim) const {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < size(); ++i) c.push_back((*this)[i].rational());
    if (dim != 0 && c.size() != dim) fail("expected " + std::to_string(dim) + " coordinates");
    return Point(std::move(c));
  }

  template <typename F>
  auto wrap(F&& f) const -> decltype(f()) {
    try {
      return f();
    } catch (const BoundsExceeded&) {
      throw;
    } catch (const InputError& e) {
      fail(e.what());
    }
  }

 private:
  const json& v_;
  std::string source_;
  std::string path_;
};

json parse(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

ordered_json point_json(const Point& p) {
  ordered_json a = ordered_json::array();
  for (const auto& c : p.coords()) a.push_back(c.to_string());
  return a;
}

ordered_json points_json(const PointSet& s) {
  ordered_json a = ordered_json::array();
  for (const auto& p : s) a.push_back(point_json(p));
  return a;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json affine_json(const AffineMap& m) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : m.matrix) {
    ordered_json r = ordered_json::array();
    for (const auto& x : row) r.push_back(x.to_string());
    rows.push_back(r);
  }
  ordered_json o;
  o["matrix"] = rows;
  o["translation"] = point_json(m.translation);
  return o;
}

AffineMap read_affine(const Field& f, std::size_t dim) {
  AffineMap m;
  Field rows = f.at("matrix");
  if (rows.size() != dim) rows.fail("expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  for (std::size_t i = 0; i < dim; ++i) {
    Field row = rows[i];
    if (row.size() != dim) row.fail("expected " + std::to_string(dim) + " entries");
    std::vector<Rational> r;
    for (std::size_t k = 0; k < dim; ++k) r.push_back(row[k].rational());
    m.matrix.push_back(std::move(r));
  }
  m.translation = f.has("translation") ? f.at("translation").point(dim) : Point(std::vector<Rational>(dim));
  return m;
}

LatticeDirection read_direction(const Field& f) {
  std::vector<std::int64_t> v;
  for (std::size_t i = 0; i < f.size(); ++i) v.push_back(f[i].integer());
  return f.wrap([&] { return LatticeDirection::from_integers(v); });
}

std::vector<LatticeDirection> coordinate_axes() {
  std::int64_t e0[2] = {1, 0}, e1[2] = {0, 1};
  return {LatticeDirection::from_integers(e0), LatticeDirection::from_integers(e1)};
}

const char* status_name(Status s) {
  switch (s) {
    case Status::kOk:
      return "ok";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kBudgetExhausted:
      return "budget-exhausted";
  }
  return "ok";
}

}  // namespace

std::string write_instance(const TomographyInstance& inst) {
  ordered_json j;
  j["dim"] = inst.dim;
  ordered_json dirs = ordered_json::array();
  for (const auto& d : inst.directions) {
    ordered_json v = ordered_json::array();
    for (const auto& c : d.vector().coords()) v.push_back(c.numerator().get_si());
    dirs.push_back(v);
  }
  j["directions"] = dirs;
  ordered_json frames = ordered_json::array();
  for (const auto& f : inst.frames) {
    ordered_json per = ordered_json::array();
    for (const XRayData* x : {&f.first, &f.second}) {
      ordered_json lines = ordered_json::array();
      for (const auto& [anchor, count] : x->lines) {
        ordered_json l;
        l["anchor"] = point_json(anchor);
        l["count"] = count;
        lines.push_back(l);
      }
      per.push_back(lines);
    }
    frames.push_back(per);
  }
  j["frames"] = frames;
  if (!inst.known.empty()) {
    ordered_json known = ordered_json::array();
    for (const auto& k : inst.known) known.push_back(k ? points_json(*k) : ordered_json(nullptr));
    j["known_positions"] = known;
  }
  if (inst.displacement) {
    const auto& d = *inst.displacement;
    if (d.affine.size() == 1) {
      j["displacement"] = affine_json(d.affine[0]);
    } else if (d.is_affine()) {
      ordered_json steps = ordered_json::array();
      for (const auto& m : d.affine) steps.push_back(affine_json(m));
      j["displacement"]["steps"] = steps;
    } else {
      ordered_json table = ordered_json::array();
      for (const auto& step : d.table) {
        ordered_json entries = ordered_json::array();
        for (const auto& [from, to] : step) {
          ordered_json e;
          e["from"] = point_json(from);
          e["to"] = point_json(to);
          entries.push_back(e);
        }
        table.push_back(entries);
      }
      j["displacement"]["table"] = table;
    }
  }
  if (!inst.windows.empty()) {
    ordered_json windows = ordered_json::array();
    for (const auto& per : inst.windows) {
      ordered_json ws = ordered_json::array();
      for (const auto& w : per) {
        ordered_json o;
        o["points"] = points_json(PointSet(w.points));
        o["relation"] = to_string(w.relation);
        o["bound"] = w.bound;
        ws.push_back(o);
      }
      windows.push_back(ws);
    }
    j["windows"] = windows;
  }
  const WeightModel& wm = inst.weights;
  ordered_json w;
  w["kind"] = to_string(wm.kind);
  if (wm.kind == WeightKind::kEuclidean || wm.kind == WeightKind::kNearestPointAlpha) {
    w["norm"] = wm.norm.to_string();
  }
  if (wm.kind == WeightKind::kNearestPointAlpha) w["k"] = wm.k;
  if (wm.kind == WeightKind::kExplicit) {
    ordered_json steps = ordered_json::array();
    for (const auto& m : wm.explicit_edges) {
      ordered_json rows = ordered_json::array();
      for (const auto& row : m) {
        ordered_json r = ordered_json::array();
        for (const auto& e : row) r.push_back(e ? ordered_json(e->to_string()) : ordered_json(nullptr));
        rows.push_back(r);
      }
      steps.push_back(rows);
    }
    w["edges"] = steps;
  }
  if (wm.kind == WeightKind::kPathTable) {
    ordered_json paths = ordered_json::array();
    for (const auto& [path, cost] : wm.path_table) {
      ordered_json p;
      ordered_json pts = ordered_json::array();
      for (const auto& q : path) pts.push_back(point_json(q));
      p["path"] = pts;
      p["cost"] = cost.to_string();
      paths.push_back(p);
    }
    w["paths"] = paths;
  }
  j["weights"] = w;
  return dump(j);
}

TomographyInstance read_instance(const std::string& text, const std::string& source) {
  const json doc = parse(text, source);
  Field root(doc, source, "");
  TomographyInstance inst;
  inst.dim = root.has("dim") ? static_cast<std::size_t>(root.at("dim").integer()) : 2;
  if (inst.dim < 2) root.at("dim").fail("dimension must be at least 2");
  if (root.has("directions")) {
    Field dirs = root.at("directions");
    for (std::size_t i = 0; i < dirs.size(); ++i) inst.directions.push_back(read_direction(dirs[i]));
  } else {
    inst.directions = coordinate_axes();
  }
  if (inst.directions.size() != 2) root.at("directions").fail("exactly two directions are supported");

  Field frames = root.at("frames");
  for (std::size_t tau = 0; tau < frames.size(); ++tau) {
    Field per = frames[tau];
    if (per.size() != 2) per.fail("expected one line list per direction");
    FrameData fd;
    for (std::size_t k = 0; k < 2; ++k) {
      XRayData x;
      x.direction_index = k;
      Field lines = per[k];
      for (std::size_t l = 0; l < lines.size(); ++l) {
        Field line = lines[l];
        Point anchor = line.at("anchor").point(inst.dim);
        std::int64_t count = line.at("count").integer();
        if (count < 0) line.at("count").fail("counts must be nonnegative");
        if (count == 0) continue;
        Point canon = line.wrap([&] { return canonical_anchor(inst.directions[k], anchor); });
        if (!x.lines.emplace(canon, count).second) line.fail("line listed twice");
      }
      (k == 0 ? fd.first : fd.second) = std::move(x);
    }
    inst.frames.push_back(std::move(fd));
  }

  if (root.has("known_positions")) {
    Field known = root.at("known_positions");
    for (std::size_t tau = 0; tau < known.size(); ++tau) {
      Field f = known[tau];
      if (f.is_null()) {
        inst.known.emplace_back(std::nullopt);
        continue;
      }
      std::vector<Point> pts;
      for (std::size_t i = 0; i < f.size(); ++i) pts.push_back(f[i].point(inst.dim));
      PointSet ps(pts);
      if (ps.size() != pts.size()) f.fail("duplicate point");
      inst.known.emplace_back(std::move(ps));
    }
  }

  if (root.has("displacement")) {
    Field d = root.at("displacement");
    DisplacementField field;
    if (d.has("matrix")) {
      field.affine.push_back(read_affine(d, inst.dim));
    } else if (d.has("steps")) {
      Field steps = d.at("steps");
      for (std::size_t i = 0; i < steps.size(); ++i) field.affine.push_back(read_affine(steps[i], inst.dim));
    } else if (d.has("table")) {
      Field table = d.at("table");
      for (std::size_t s = 0; s < table.size(); ++s) {
        std::map<Point, Point> step;
        Field entries = table[s];
        for (std::size_t e = 0; e < entries.size(); ++e) {
          Field entry = entries[e];
          if (!step.emplace(entry.at("from").point(inst.dim), entry.at("to").point(inst.dim)).second) {
            entry.fail("point mapped twice");
          }
        }
        field.table.push_back(std::move(step));
      }
    } else {
      d.fail("expected 'matrix', 'steps' or 'table'");
    }
    inst.displacement = std::move(field);
  }

  if (root.has("windows")) {
    Field windows = root.at("windows");
    for (std::size_t tau = 0; tau < windows.size(); ++tau) {
      std::vector<WindowConstraint> per;
      Field ws = windows[tau];
      for (std::size_t i = 0; i < ws.size(); ++i) {
        Field w = ws[i];
        WindowConstraint c;
        Field pts = w.at("points");
        for (std::size_t p = 0; p < pts.size(); ++p) c.points.push_back(pts[p].point(inst.dim));
        c.relation = w.at("relation").wrap([&] { return parse_relation(w.at("relation").string()); });
        c.bound = w.at("bound").integer();
        per.push_back(std::move(c));
      }
      inst.windows.push_back(std::move(per));
    }
  }

  if (root.has("weights")) {
    Field w = root.at("weights");
    WeightModel& wm = inst.weights;
    wm.kind = w.at("kind").wrap([&] { return parse_weight_kind(w.at("kind").string()); });
    if (w.has("norm")) wm.norm = w.at("norm").wrap([&] { return NormSpec::parse(w.at("norm").string()); });
    if (w.has("k")) wm.k = static_cast<std::size_t>(w.at("k").integer());
    if (wm.kind == WeightKind::kExplicit) {
      Field steps = w.at("edges");
      for (std::size_t s = 0; s < steps.size(); ++s) {
        WeightMatrix m;
        Field rows = steps[s];
        for (std::size_t r = 0; r < rows.size(); ++r) {
          std::vector<EdgeWeight> row;
          Field cells = rows[r];
          for (std::size_t c = 0; c < cells.size(); ++c) {
            Field cell = cells[c];
            row.push_back(cell.is_null() ? EdgeWeight{} : EdgeWeight{cell.rational()});
          }
          m.push_back(std::move(row));
        }
        wm.explicit_edges.push_back(std::move(m));
      }
    }
    if (wm.kind == WeightKind::kPathTable) {
      Field paths = w.at("paths");
      for (std::size_t i = 0; i < paths.size(); ++i) {
        Field p = paths[i];
        std::vector<Point> path;
        Field pts = p.at("path");
        for (std::size_t q = 0; q < pts.size(); ++q) path.push_back(pts[q].point(inst.dim));
        if (!wm.path_table.emplace(std::move(path), p.at("cost").rational()).second) p.fail("path listed twice");
      }
    }
  }
  try {
    inst.validate();
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
  return inst;
}

std::string write_tracks(const TrackResult& result) {
  ordered_json j;
  j["status"] = status_name(result.status);
  if (!result.message.empty()) j["message"] = result.message;
  if (result.frame) j["frame"] = *result.frame + 1;
  if (result.status == Status::kOk) {
    TrackSet ts = result.tracks;
    ts.canonicalize();
    j["objective"] = ts.objective.to_string();
    ordered_json tracks = ordered_json::array();
    for (std::size_t i = 0; i < ts.n(); ++i) {
      ordered_json path = ordered_json::array();
      for (const auto& p : ts.path(i)) path.push_back(point_json(p));
      tracks.push_back(path);
    }
    j["tracks"] = tracks;
  }
  return dump(j);
}

TrackResult read_tracks(const std::string& text, const std::string& source) {
  const json doc = parse(text, source);
  Field root(doc, source, "");
  TrackResult r;
  if (root.has("status")) {
    const std::string s = root.at("status").string();
    if (s == "ok") {
      r.status = Status::kOk;
    } else if (s == "infeasible") {
      r.status = Status::kInfeasible;
    } else if (s == "budget-exhausted") {
      r.status = Status::kBudgetExhausted;
    } else {
      root.at("status").fail("unknown status '" + s + "'");
    }
  }
  if (root.has("message")) r.message = root.at("message").string();
  if (r.status != Status::kOk) return r;
  Field tracks = root.at("tracks");
  std::vector<std::vector<Point>> paths;
  std::size_t t = 0;
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    Field path = tracks[i];
    if (i == 0) t = path.size();
    if (path.size() != t) path.fail("all tracks need the same number of frames");
    std::vector<Point> pts;
    for (std::size_t tau = 0; tau < t; ++tau) pts.push_back(path[tau].point(0));
    paths.push_back(std::move(pts));
  }
  for (std::size_t tau = 0; tau < t; ++tau) {
    std::vector<Point> pts;
    for (const auto& p : paths) pts.push_back(p[tau]);
    PointSet ps(pts);
    if (ps.size() != pts.size()) tracks.fail("two tracks share a point in frame " + std::to_string(tau + 1));
    r.tracks.frames.push_back(std::move(ps));
  }
  for (const auto& p : paths) {
    std::vector<std::size_t> idx;
    for (std::size_t tau = 0; tau < t; ++tau) idx.push_back(r.tracks.frames[tau].index_of(p[tau]));
    r.tracks.tracks.push_back(std::move(idx));
  }
  r.tracks.canonicalize();
  if (root.has("objective")) r.tracks.objective = root.at("objective").rational();
  return r;
}

std::string write_report(const EvalReport& report) {
  ordered_json j;
  j["edge_accuracy"] = report.edge_accuracy.to_string();
  ordered_json fa = ordered_json::array();
  for (const auto& a : report.frame_accuracy) fa.push_back(a.to_string());
  j["frame_accuracy"] = fa;
  j["objective_gap"] = report.objective_gap ? ordered_json(report.objective_gap->to_string()) : ordered_json(nullptr);
  return dump(j);
}

PointFrames read_point_frames(const std::string& text, const std::string& source) {
  const json doc = parse(text, source);
  Field root(doc, source, "");
  PointFrames out;
  if (root.has("directions")) {
    Field dirs = root.at("directions");
    for (std::size_t i = 0; i < dirs.size(); ++i) out.directions.push_back(read_direction(dirs[i]));
    if (out.directions.size() != 2) dirs.fail("exactly two directions are supported");
  } else {
    out.directions = coordinate_axes();
  }
  const std::size_t dim = out.directions[0].dim();
  Field frames = root.at("frames");
  for (std::size_t tau = 0; tau < frames.size(); ++tau) {
    Field f = frames[tau];
    std::vector<Point> pts;
    for (std::size_t i = 0; i < f.size(); ++i) pts.push_back(f[i].point(dim));
    PointSet ps(pts);
    if (ps.size() != pts.size()) f.fail("duplicate point");
    out.frames.push_back(std::move(ps));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

}  // namespace ddt
