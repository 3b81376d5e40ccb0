#include "ddt/instance.hpp"

#include <algorithm>

#include "ddt/errors.hpp"

namespace ddt {

AffineMap AffineMap::identity(std::size_t dim) {
  AffineMap m;
  m.matrix.assign(dim, std::vector<Rational>(dim));
  for (std::size_t i = 0; i < dim; ++i) m.matrix[i][i] = 1;
  m.translation = Point(std::vector<Rational>(dim));
  return m;
}

Point AffineMap::apply(const Point& x) const {
  if (x.dim() != matrix.size()) throw InputError("affine map dimension mismatch");
  std::vector<Rational> out(matrix.size());
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    Rational s = translation[i];
    for (std::size_t j = 0; j < x.dim(); ++j) {
      if (!matrix[i][j].is_zero()) s += matrix[i][j] * x[j];
    }
    out[i] = std::move(s);
  }
  return Point(std::move(out));
}

std::optional<AffineMap> AffineMap::inverse() const {
  const std::size_t d = matrix.size();
  std::vector<std::vector<Rational>> a = matrix;
  std::vector<std::vector<Rational>> inv = identity(d).matrix;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    while (p < d && a[p][c].is_zero()) ++p;
    if (p == d) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rational f = a[c][c].reciprocal();
    for (std::size_t k = 0; k < d; ++k) {
      a[c][k] *= f;
      inv[c][k] *= f;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Rational g = a[r][c];
      for (std::size_t k = 0; k < d; ++k) {
        a[r][k] -= g * a[c][k];
        inv[r][k] -= g * inv[c][k];
      }
    }
  }
  AffineMap out;
  out.matrix = std::move(inv);
  out.translation = Point(std::vector<Rational>(d));
  // x = M^-1 (y - b)  =>  translation -M^-1 b.
  AffineMap lin{out.matrix, Point(std::vector<Rational>(d))};
  Point mb = lin.apply(translation);
  out.translation = Point(std::vector<Rational>(d)) - mb;
  return out;
}

LatticeDirection AffineMap::apply_linear(const LatticeDirection& s) const {
  AffineMap lin{matrix, Point(std::vector<Rational>(matrix.size()))};
  Point v = lin.apply(s.vector());
  return LatticeDirection::from_rationals(v.coords());
}

const AffineMap& DisplacementField::affine_step(std::size_t step) const {
  if (affine.empty()) throw InputError("displacement field is not affine");
  return affine.size() == 1 ? affine[0] : affine.at(step);
}

std::optional<Point> DisplacementField::apply(std::size_t step, const Point& x) const {
  if (is_affine()) return affine_step(step).apply(x);
  if (step >= table.size()) return std::nullopt;
  auto it = table[step].find(x);
  if (it == table[step].end()) return std::nullopt;
  return it->second;
}

bool is_proper(const AffineMap& phi, const std::vector<LatticeDirection>& directions) {
  if (directions.size() < 2) throw InputError("properness needs two directions");
  if (!phi.inverse()) return false;
  for (std::size_t i = 0; i < 2; ++i) {
    LatticeDirection img = phi.apply_linear(directions[i]);
    if (img == directions[0] || img == directions[1]) return false;
  }
  return true;
}

const char* to_string(WeightKind k) {
  switch (k) {
    case WeightKind::kSquaredEuclidean:
      return "squared-euclidean";
    case WeightKind::kEuclidean:
      return "euclidean";
    case WeightKind::kExplicit:
      return "explicit";
    case WeightKind::kNearestPointAlpha:
      return "nearest-point-alpha";
    case WeightKind::kTriangleArea:
      return "triangle-area";
    case WeightKind::kPathTable:
      return "path-table";
  }
  return "?";
}

WeightKind parse_weight_kind(const std::string& text) {
  for (auto k : {WeightKind::kSquaredEuclidean, WeightKind::kEuclidean, WeightKind::kExplicit,
                 WeightKind::kNearestPointAlpha, WeightKind::kTriangleArea,
                 WeightKind::kPathTable}) {
    if (text == to_string(k)) return k;
  }
  throw InputError("unknown weight kind '" + text + "'");
}

bool TomographyInstance::positionally_determined() const {
  for (std::size_t tau = 0; tau < t(); ++tau) {
    if (!is_known(tau)) return false;
  }
  return true;
}

void TomographyInstance::validate() const {
  if (directions.size() != 2) throw InputError("exactly two X-ray directions are supported");
  for (const auto& d : directions) {
    if (d.dim() != dim) throw InputError("direction dimension differs from instance dimension");
  }
  if (directions[0] == directions[1]) throw InputError("X-ray directions must differ");
  if (frames.empty()) throw InputError("instance has no frames");
  const std::int64_t mass = n();
  for (std::size_t tau = 0; tau < t(); ++tau) {
    const auto& f = frames[tau];
    const std::string where = "frame " + std::to_string(tau + 1);
    if (f.first.direction_index != 0 || f.second.direction_index != 1) {
      throw InputError(where + ": X-rays must use directions 1 and 2 in order");
    }
    for (const XRayData* x : {&f.first, &f.second}) {
      for (const auto& [anchor, count] : x->lines) {
        if (count <= 0) throw InputError(where + ": X-ray counts must be positive");
        if (anchor.dim() != dim) throw InputError(where + ": anchor dimension mismatch");
        if (canonical_anchor(directions[x->direction_index], anchor) != anchor) {
          throw InputError(where + ": line anchor " + anchor.to_string() + " is not canonical");
        }
      }
    }
    if (f.first.mass() != f.second.mass()) {
      throw InputError(where + ": X-ray masses differ (" + std::to_string(f.first.mass()) +
                       " vs " + std::to_string(f.second.mass()) + ")");
    }
    if (f.first.mass() != mass) {
      throw InputError(where + ": particle count differs from frame 1");
    }
  }
  if (!known.empty() && known.size() != t()) {
    throw InputError("known_positions must list every frame (null for unknown)");
  }
  for (std::size_t tau = 0; tau < known.size(); ++tau) {
    if (!known[tau]) continue;
    if (xray(*known[tau], directions[0], 0) != frames[tau].first ||
        xray(*known[tau], directions[1], 1) != frames[tau].second) {
      throw InputError("frame " + std::to_string(tau + 1) +
                       ": known positions do not realize the X-rays");
    }
  }
  if (!windows.empty() && windows.size() != t()) {
    throw InputError("windows must list every frame");
  }
  for (const auto& per_frame : windows) {
    for (const auto& w : per_frame) {
      if (w.points.empty()) throw InputError("empty window");
      if (w.bound < 0) throw InputError("window bound must be nonnegative");
    }
  }
  if (displacement) {
    const auto& d = *displacement;
    if (d.is_affine()) {
      if (d.affine.size() != 1 && d.affine.size() + 1 != t()) {
        throw InputError("displacement needs one affine map or one per step");
      }
      for (const auto& m : d.affine) {
        if (m.matrix.size() != dim || m.translation.dim() != dim) {
          throw InputError("displacement dimension mismatch");
        }
        for (const auto& row : m.matrix) {
          if (row.size() != dim) throw InputError("displacement matrix must be square");
        }
      }
    } else if (d.table.size() + 1 != t()) {
      throw InputError("tabulated displacement needs one table per step");
    }
  }
  if (weights.kind == WeightKind::kExplicit) {
    if (weights.explicit_edges.size() + 1 != t()) {
      throw InputError("explicit weights need one table per step");
    }
    auto gs = grids();
    for (std::size_t tau = 0; tau + 1 < t(); ++tau) {
      const auto& m = weights.explicit_edges[tau];
      if (m.size() != gs[tau].size()) throw InputError("explicit weight table has wrong row count");
      for (const auto& row : m) {
        if (row.size() != gs[tau + 1].size()) {
          throw InputError("explicit weight table has wrong column count");
        }
      }
    }
  }
  weights.norm.validate();
  if (weights.kind == WeightKind::kNearestPointAlpha && weights.k < 2) {
    throw InputError("sample-fit weights need k >= 2");
  }
}

Grid TomographyInstance::grid(std::size_t tau) const {
  if (is_known(tau)) return grid_from_points(*known[tau], directions);
  return grid_from_xrays(frames[tau].first, frames[tau].second, directions);
}

std::vector<Grid> TomographyInstance::grids() const {
  std::vector<Grid> out;
  out.reserve(t());
  for (std::size_t tau = 0; tau < t(); ++tau) out.push_back(grid(tau));
  return out;
}

TomographyInstance TomographyInstance::from_frames(const std::vector<PointSet>& frames,
                                                   std::vector<LatticeDirection> directions,
                                                   bool mark_known) {
  TomographyInstance inst;
  inst.dim = directions.at(0).dim();
  inst.directions = std::move(directions);
  for (const auto& f : frames) {
    inst.frames.push_back(
        FrameData{xray(f, inst.directions[0], 0), xray(f, inst.directions[1], 1)});
    if (mark_known) inst.known.emplace_back(f);
  }
  return inst;
}

std::vector<Point> TrackSet::path(std::size_t j) const {
  std::vector<Point> out;
  for (std::size_t tau = 0; tau < frames.size(); ++tau) out.push_back(frames[tau][tracks[j][tau]]);
  return out;
}

void TrackSet::canonicalize() { std::sort(tracks.begin(), tracks.end()); }

TrackSet TrackSet::from_couplings(std::vector<PointSet> frames,
                                  const std::vector<std::vector<std::size_t>>& perms) {
  TrackSet ts;
  const std::size_t n = frames.empty() ? 0 : frames[0].size();
  ts.tracks.assign(n, {});
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t cur = j;
    ts.tracks[j].push_back(cur);
    for (const auto& perm : perms) {
      cur = perm[cur];
      ts.tracks[j].push_back(cur);
    }
  }
  ts.frames = std::move(frames);
  return ts;
}

bool valid_trackset(const TomographyInstance& inst, const TrackSet& tracks) {
  if (tracks.t() != inst.t()) return false;
  const auto n = static_cast<std::size_t>(inst.n());
  if (tracks.n() != n) return false;
  for (std::size_t tau = 0; tau < inst.t(); ++tau) {
    const PointSet& f = tracks.frames[tau];
    if (f.size() != n) return false;
    if (xray(f, inst.directions[0], 0) != inst.frames[tau].first) return false;
    if (xray(f, inst.directions[1], 1) != inst.frames[tau].second) return false;
    std::vector<bool> used(n, false);
    for (const auto& tr : tracks.tracks) {
      if (tr.size() != inst.t() || tr[tau] >= n || used[tr[tau]]) return false;
      used[tr[tau]] = true;
    }
  }
  return true;
}

}  // namespace ddt
