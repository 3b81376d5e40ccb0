#include "ddt/objective.hpp"

#include "ddt/errors.hpp"
#include "ddt/fitting.hpp"

namespace ddt {

EdgeWeights::EdgeWeights(const TomographyInstance& inst, const std::vector<Grid>& grids)
    : model_(inst.weights), grids_(grids) {
  if (model_.kind == WeightKind::kNearestPointAlpha) {
    FitOptions opts;
    opts.k = model_.k;
    opts.norm = model_.norm;
    auto alpha = alpha_weights(candidates_of(grids_), opts);
    for (const auto& frame : alpha) {
      std::vector<Rational> a;
      for (const auto& w : frame) a.push_back(w.weight);
      alpha_.push_back(std::move(a));
    }
  }
}

EdgeWeight EdgeWeights::operator()(std::size_t tau, std::size_t gi, std::size_t gj) const {
  const Point& p = grids_[tau][gi];
  const Point& q = grids_[tau + 1][gj];
  switch (model_.kind) {
    case WeightKind::kSquaredEuclidean: {
      Point d = p - q;
      return dot(d, d);
    }
    case WeightKind::kEuclidean:
      return model_.norm.h_distance(p, q);
    case WeightKind::kExplicit:
      return model_.explicit_edges.at(tau).at(gi).at(gj);
    case WeightKind::kNearestPointAlpha:
      return alpha_[tau][gi] + alpha_[tau + 1][gj];
    case WeightKind::kTriangleArea:
    case WeightKind::kPathTable:
      break;
  }
  throw InputError(std::string("weight model '") + to_string(model_.kind) +
                   "' has no edge weights");
}

WeightMatrix EdgeWeights::matrix(std::size_t tau, const std::vector<std::size_t>& from,
                                 const std::vector<std::size_t>& to) const {
  WeightMatrix m(from.size(), std::vector<EdgeWeight>(to.size()));
  for (std::size_t a = 0; a < from.size(); ++a) {
    for (std::size_t b = 0; b < to.size(); ++b) m[a][b] = (*this)(tau, from[a], to[b]);
  }
  return m;
}

Rational triangle_area(const Point& a, const Point& b, const Point& c) {
  Point u = b - a;
  Point v = c - a;
  return (u[0] * v[1] - u[1] * v[0]).abs() / Rational(2);
}

Rational straightness(const TrackSet& tracks) {
  Rational s;
  for (std::size_t j = 0; j < tracks.n(); ++j) {
    auto p = tracks.path(j);
    for (std::size_t tau = 0; tau + 2 < p.size(); ++tau) s += triangle_area(p[tau], p[tau + 1], p[tau + 2]);
  }
  return s;
}

namespace {

std::size_t grid_index(const Grid& g, const Point& p, std::size_t tau) {
  std::size_t i = g.index_of(p);
  if (i == g.size()) {
    throw InputError("track point " + p.to_string() + " is not a grid point of frame " +
                     std::to_string(tau + 1));
  }
  return i;
}

}  // namespace

std::optional<Rational> path_cost(const TomographyInstance& inst, const EdgeWeights& edges,
                                  const std::vector<Point>& path) {
  switch (inst.weights.kind) {
    case WeightKind::kTriangleArea: {
      Rational s;
      for (std::size_t tau = 0; tau + 2 < path.size(); ++tau) {
        s += triangle_area(path[tau], path[tau + 1], path[tau + 2]);
      }
      return s;
    }
    case WeightKind::kPathTable: {
      auto it = inst.weights.path_table.find(path);
      if (it == inst.weights.path_table.end()) return std::nullopt;
      return it->second;
    }
    default:
      break;
  }
  Rational s;
  for (std::size_t tau = 0; tau + 1 < path.size(); ++tau) {
    std::size_t a = grid_index(edges.grids()[tau], path[tau], tau);
    std::size_t b = grid_index(edges.grids()[tau + 1], path[tau + 1], tau + 1);
    auto w = edges(tau, a, b);
    if (!w) return std::nullopt;
    s += *w;
  }
  return s;
}

std::optional<Rational> evaluate_objective(const TomographyInstance& inst, const EdgeWeights& edges,
                                           const TrackSet& tracks) {
  Rational total;
  for (std::size_t j = 0; j < tracks.n(); ++j) {
    auto c = path_cost(inst, edges, tracks.path(j));
    if (!c) return std::nullopt;
    total += *c;
  }
  return total;
}

std::optional<Rational> evaluate_objective(const TomographyInstance& inst, const TrackSet& tracks) {
  std::vector<Grid> grids;
  if (inst.weights.is_markov()) grids = inst.grids();
  EdgeWeights edges(inst, grids);
  return evaluate_objective(inst, edges, tracks);
}

int compare_sqrt_sums(const std::vector<Rational>& a, const std::vector<Rational>& b,
                      unsigned max_bits) {
  for (unsigned bits = 32; bits <= max_bits; bits *= 2) {
    Rational alo, ahi, blo, bhi;
    for (const auto& x : a) {
      auto s = sqrt_bounds(x, bits);
      alo += s.lower;
      ahi += s.upper;
    }
    for (const auto& x : b) {
      auto s = sqrt_bounds(x, bits);
      blo += s.lower;
      bhi += s.upper;
    }
    if (ahi < blo) return -1;
    if (bhi < alo) return 1;
    if (alo == ahi && blo == bhi && alo == blo) return 0;
  }
  return 0;
}

std::vector<Rational> squared_edge_lengths(const TrackSet& tracks) {
  std::vector<Rational> out;
  for (std::size_t j = 0; j < tracks.n(); ++j) {
    auto p = tracks.path(j);
    for (std::size_t tau = 0; tau + 1 < p.size(); ++tau) {
      Point d = p[tau + 1] - p[tau];
      out.push_back(dot(d, d));
    }
  }
  return out;
}

}  // namespace ddt
