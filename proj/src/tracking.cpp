#include "ddt/tracking.hpp"

#include <stdexcept>

#include "ddt/errors.hpp"
#include "ddt/matching.hpp"
#include "ddt/objective.hpp"
#include "ddt/static_tomography.hpp"

namespace ddt {
namespace {

bool is_binary(const Rational& v) { return v.is_zero() || v == Rational(1); }

void require_integral(const SolveOutcome& out, std::size_t count, const char* what) {
  for (std::size_t j = 0; j < count; ++j) {
    if (!is_binary(out.primal[j])) {
      throw std::logic_error(std::string(what) + ": LP vertex is not integral");
    }
  }
}

TrackResult failure(Status s, std::string message, std::optional<std::size_t> frame = {}) {
  TrackResult r;
  r.status = s;
  r.message = std::move(message);
  r.frame = frame;
  return r;
}

}  // namespace

void finalize_tracks(const TomographyInstance& inst, TrackResult& r) {
  r.tracks.canonicalize();
  auto obj = evaluate_objective(inst, r.tracks);
  if (!obj) throw std::logic_error("track set uses a forbidden edge");
  r.tracks.objective = *obj;
}

LinearProgram frame_lp(const Grid& grid, const std::vector<Rational>& objective) {
  LinearProgram lp;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    lp.add_binary(i < objective.size() ? objective[i] : Rational(0));
  }
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t l = 0; l < grid.lines(k).size(); ++l) {
      std::vector<std::pair<std::size_t, Rational>> coeffs;
      for (std::size_t i : grid.points_on(k, l)) coeffs.emplace_back(i, 1);
      lp.add_row(std::move(coeffs), Relation::kEq, grid.counts(k)[l]);
    }
  }
  return lp;
}

void add_window_rows(LinearProgram& lp, const Grid& grid,
                     const std::vector<WindowConstraint>& windows, std::size_t offset) {
  for (const auto& w : windows) {
    std::vector<std::pair<std::size_t, Rational>> coeffs;
    for (const auto& p : w.points) {
      std::size_t i = grid.index_of(p);
      if (i == grid.size()) {
        throw InputError("window point " + p.to_string() + " is not a grid point");
      }
      coeffs.emplace_back(offset + i, 1);
    }
    lp.add_row(std::move(coeffs), w.relation, w.bound);
  }
}

TrackResult trac_markov(const TomographyInstance& inst) {
  inst.validate();
  if (!inst.positionally_determined()) {
    throw InputError("trac_markov needs known positions for every frame");
  }
  if (!inst.weights.is_markov()) throw InputError("trac_markov needs a Markov weight model");
  auto grids = inst.grids();
  EdgeWeights edges(inst, grids);
  std::vector<std::vector<std::size_t>> perms;
  Rational total;
  const auto n = static_cast<std::size_t>(inst.n());
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  for (std::size_t tau = 0; tau + 1 < inst.t(); ++tau) {
    auto m = min_weight_perfect_matching(edges.matrix(tau, all, all));
    if (!m.feasible) {
      return failure(Status::kInfeasible,
                     "no coupling avoids forbidden edges between frames " +
                         std::to_string(tau + 1) + " and " + std::to_string(tau + 2),
                     tau);
    }
    total += m.value;
    perms.push_back(m.assignment);
  }
  std::vector<PointSet> frames;
  for (std::size_t tau = 0; tau < inst.t(); ++tau) frames.push_back(*inst.known[tau]);
  TrackResult r;
  r.tracks = TrackSet::from_couplings(std::move(frames), perms);
  finalize_tracks(inst, r);
  if (r.tracks.objective != total) throw std::logic_error("matching value disagrees with objective");
  return r;
}

CoupledProgram coupled_program(const TomographyInstance& inst, const std::vector<Grid>& grids) {
  EdgeWeights edges(inst, grids);
  const std::size_t t = inst.t();

  CoupledProgram prog;
  LinearProgram& lp = prog.model.base;
  prog.xi_offset.resize(t);
  for (std::size_t tau = 0; tau < t; ++tau) {
    prog.xi_offset[tau] = lp.num_vars();
    for (std::size_t g = 0; g < grids[tau].size(); ++g) {
      // Known frames: the grid is the known set, every point present.
      lp.add_variable(0, inst.is_known(tau) ? Rational(1) : Rational(0), Rational(1));
    }
  }
  std::vector<std::vector<std::vector<std::pair<std::size_t, Rational>>>> leaving(t), entering(t);
  for (std::size_t tau = 0; tau < t; ++tau) {
    leaving[tau].assign(grids[tau].size(), {});
    entering[tau].assign(grids[tau].size(), {});
  }
  for (std::size_t tau = 0; tau + 1 < t; ++tau) {
    for (std::size_t a = 0; a < grids[tau].size(); ++a) {
      for (std::size_t b = 0; b < grids[tau + 1].size(); ++b) {
        auto w = edges(tau, a, b);
        if (!w) continue;
        std::size_t v = lp.add_binary(*w);
        prog.edges.push_back({tau, a, b, v});
        leaving[tau][a].emplace_back(v, 1);
        entering[tau + 1][b].emplace_back(v, 1);
      }
    }
  }
  for (std::size_t tau = 0; tau < t; ++tau) {
    LinearProgram rows = frame_lp(grids[tau], {});
    for (auto& row : rows.rows) {
      for (auto& [j, _] : row.coeffs) j += prog.xi_offset[tau];
      lp.rows.push_back(std::move(row));
    }
    if (!inst.windows.empty()) add_window_rows(lp, grids[tau], inst.windows[tau], prog.xi_offset[tau]);
    for (std::size_t g = 0; g < grids[tau].size(); ++g) {
      if (tau + 1 < t) {
        auto coeffs = leaving[tau][g];
        coeffs.emplace_back(prog.xi_offset[tau] + g, -1);
        lp.add_row(std::move(coeffs), Relation::kEq, 0);
      }
      if (tau > 0) {
        auto coeffs = entering[tau][g];
        coeffs.emplace_back(prog.xi_offset[tau] + g, -1);
        lp.add_row(std::move(coeffs), Relation::kEq, 0);
      }
    }
  }
  for (std::size_t j = 0; j < lp.num_vars(); ++j) prog.model.integral.push_back(j);
  return prog;
}

TrackResult tomtrac_ilp(const TomographyInstance& inst, const IlpOptions& options) {
  inst.validate();
  if (!inst.weights.is_markov()) throw InputError("the coupled program needs a Markov weight model");
  auto grids = inst.grids();
  const std::size_t t = inst.t();
  CoupledProgram prog = coupled_program(inst, grids);
  const IlpModel& model = prog.model;
  const auto& xi_offset = prog.xi_offset;
  const auto& edge_vars = prog.edges;

  SolveOutcome out = solve_ilp(model, options);
  if (out.status == SolveStatus::kInfeasible) {
    return failure(Status::kInfeasible, "no tomographic solution admits a coupling");
  }
  if (out.status == SolveStatus::kBudgetExhausted) {
    return failure(Status::kBudgetExhausted,
                   "branch-and-bound node budget exhausted after " + std::to_string(out.nodes) +
                       " nodes");
  }

  std::vector<PointSet> frames;
  std::vector<std::vector<std::size_t>> grid_to_frame(t);
  for (std::size_t tau = 0; tau < t; ++tau) {
    std::vector<Point> pts;
    grid_to_frame[tau].assign(grids[tau].size(), grids[tau].size());
    for (std::size_t g = 0; g < grids[tau].size(); ++g) {
      if (out.primal[xi_offset[tau] + g] == Rational(1)) {
        grid_to_frame[tau][g] = pts.size();
        pts.push_back(grids[tau][g]);
      }
    }
    frames.emplace_back(std::move(pts));
  }
  std::vector<std::vector<std::size_t>> perms(t > 0 ? t - 1 : 0);
  for (std::size_t tau = 0; tau + 1 < t; ++tau) perms[tau].assign(frames[tau].size(), 0);
  for (const auto& e : edge_vars) {
    if (out.primal[e.var] == Rational(1)) {
      perms[e.tau][grid_to_frame[e.tau][e.from]] = grid_to_frame[e.tau + 1][e.to];
    }
  }
  TrackResult r;
  r.tracks = TrackSet::from_couplings(std::move(frames), perms);
  finalize_tracks(inst, r);
  if (r.tracks.objective != out.objective) throw std::logic_error("ILP objective mismatch");
  return r;
}

std::optional<PointSet> rolling_step(const Grid& next, const PointSet& prev, const NormSpec& norm,
                                     const std::vector<WindowConstraint>& windows,
                                     const IlpOptions& ilp) {
  std::vector<Rational> alpha;
  for (const auto& g : next.points()) {
    std::optional<Rational> best;
    for (const auto& p : prev) {
      Rational d = norm.h_distance(g, p);
      if (!best || d < *best) best = std::move(d);
    }
    alpha.push_back(best.value_or(Rational(0)));
  }
  LinearProgram lp = frame_lp(next, alpha);
  SolveOutcome out;
  if (windows.empty()) {
    out = solve_lp(lp);
    if (out.status != SolveStatus::kOptimal) return std::nullopt;
    require_integral(out, next.size(), "rolling horizon");
  } else {
    add_window_rows(lp, next, windows);
    IlpModel model{lp, {}, {}};
    for (std::size_t j = 0; j < next.size(); ++j) model.integral.push_back(j);
    out = solve_ilp(model, ilp);
    if (out.status == SolveStatus::kBudgetExhausted) {
      throw BudgetExhausted("node budget exhausted in a windowed rolling step");
    }
    if (out.status != SolveStatus::kOptimal) return std::nullopt;
  }
  std::vector<bool> chosen(next.size());
  for (std::size_t j = 0; j < next.size(); ++j) chosen[j] = out.primal[j] == Rational(1);
  return support(next, chosen);
}

TrackResult rolling_horizon(const TomographyInstance& inst, const RollingOptions& options) {
  inst.validate();
  options.point_norm.validate();
  if (!inst.is_known(0)) throw InputError("rolling horizon needs the first frame's positions");
  std::vector<PointSet> frames{*inst.known[0]};
  std::vector<std::vector<std::size_t>> perms;
  for (std::size_t tau = 0; tau + 1 < inst.t(); ++tau) {
    const PointSet& prev = frames.back();
    std::optional<PointSet> next;
    if (inst.is_known(tau + 1)) {
      next = *inst.known[tau + 1];
    } else {
      const std::vector<WindowConstraint> none;
      const auto& w = inst.windows.empty() ? none : inst.windows[tau + 1];
      try {
        next = rolling_step(inst.grid(tau + 1), prev, options.point_norm, w, options.ilp);
      } catch (const BudgetExhausted& e) {
        return failure(Status::kBudgetExhausted, e.what(), tau + 1);
      }
      if (!next) {
        return failure(Status::kInfeasible,
                       "frame " + std::to_string(tau + 2) + " has no tomographic solution",
                       tau + 1);
      }
    }
    WeightMatrix w(prev.size(), std::vector<EdgeWeight>(next->size()));
    for (std::size_t a = 0; a < prev.size(); ++a) {
      for (std::size_t b = 0; b < next->size(); ++b) {
        w[a][b] = options.point_norm.h_distance(prev[a], (*next)[b]);
      }
    }
    perms.push_back(min_weight_perfect_matching(w).assignment);
    frames.push_back(std::move(*next));
  }
  TrackResult r;
  r.tracks = TrackSet::from_couplings(std::move(frames), perms);
  finalize_tracks(inst, r);
  return r;
}

std::optional<std::vector<PointSet>> push_forward(const TomographyInstance& inst,
                                                  const PointSet& f1) {
  if (!inst.displacement) throw InputError("instance has no displacement field");
  std::vector<PointSet> out{f1};
  for (std::size_t step = 0; step + 1 < inst.t(); ++step) {
    std::vector<Point> next;
    for (const auto& p : out.back()) {
      auto q = inst.displacement->apply(step, p);
      if (!q) return std::nullopt;
      next.push_back(std::move(*q));
    }
    PointSet ps(next);
    if (ps.size() != next.size()) return std::nullopt;  // two particles collide
    out.push_back(std::move(ps));
  }
  return out;
}

TrackResult tomdisplacetrac(const TomographyInstance& inst, const IlpOptions& options) {
  inst.validate();
  if (!inst.displacement) throw InputError("tomdisplacetrac needs a displacement field");
  const auto& field = *inst.displacement;
  if (field.is_affine()) {
    for (const auto& m : field.affine) {
      if (!m.inverse()) throw InputError("displacement matrix is singular");
    }
  }
  auto grids = inst.grids();
  const std::size_t t = inst.t();

  // H: frame-1 grid points whose images stay on every later grid.
  std::vector<Point> h_points;
  std::vector<std::vector<std::size_t>> image_index;  // [h][tau] -> grid index
  for (const auto& g : grids[0].points()) {
    std::vector<std::size_t> idx{grids[0].index_of(g)};
    Point cur = g;
    bool ok = true;
    for (std::size_t step = 0; step + 1 < t && ok; ++step) {
      auto q = field.apply(step, cur);
      if (!q) {
        ok = false;
        break;
      }
      std::size_t i = grids[step + 1].index_of(*q);
      if (i == grids[step + 1].size()) ok = false;
      idx.push_back(i);
      cur = std::move(*q);
    }
    if (!ok) continue;
    h_points.push_back(g);
    image_index.push_back(std::move(idx));
  }

  IlpModel model;
  LinearProgram& lp = model.base;
  for (std::size_t h = 0; h < h_points.size(); ++h) {
    lp.add_binary(0);
    model.integral.push_back(h);
  }
  for (std::size_t tau = 0; tau < t; ++tau) {
    for (std::size_t k = 0; k < 2; ++k) {
      std::vector<std::vector<std::pair<std::size_t, Rational>>> rows(grids[tau].lines(k).size());
      // Two variables mapping to one point in the same frame would double count
      // it; a point row caps that at one.
      std::vector<std::vector<std::pair<std::size_t, Rational>>> per_point(grids[tau].size());
      for (std::size_t h = 0; h < h_points.size(); ++h) {
        std::size_t g = image_index[h][tau];
        rows[grids[tau].line_of(k, g)].emplace_back(h, 1);
        if (k == 0) per_point[g].emplace_back(h, 1);
      }
      for (std::size_t l = 0; l < rows.size(); ++l) {
        lp.add_row(std::move(rows[l]), Relation::kEq, grids[tau].counts(k)[l]);
      }
      for (auto& pp : per_point) {
        if (pp.size() > 1) lp.add_row(std::move(pp), Relation::kLe, 1);
      }
    }
  }
  SolveOutcome out = solve_ilp(model, options);
  if (out.status == SolveStatus::kBudgetExhausted) {
    return failure(Status::kBudgetExhausted, "branch-and-bound node budget exhausted");
  }
  if (out.status != SolveStatus::kOptimal) {
    return failure(Status::kInfeasible,
                   h_points.empty() ? "pullback of the grids is empty"
                                    : "no displacement-compatible realization exists");
  }
  std::vector<Point> f1;
  for (std::size_t h = 0; h < h_points.size(); ++h) {
    if (out.primal[h] == Rational(1)) f1.push_back(h_points[h]);
  }
  auto frames = push_forward(inst, PointSet(f1));
  if (!frames) throw std::logic_error("displacement image left the grid");
  std::vector<std::vector<std::size_t>> perms;
  for (std::size_t step = 0; step + 1 < t; ++step) {
    std::vector<std::size_t> perm;
    for (const auto& p : (*frames)[step]) {
      perm.push_back((*frames)[step + 1].index_of(*field.apply(step, p)));
    }
    perms.push_back(std::move(perm));
  }
  TrackResult r;
  r.tracks = TrackSet::from_couplings(std::move(*frames), perms);
  finalize_tracks(inst, r);
  return r;
}

}  // namespace ddt
