#include <set>
#include <variant>
#include <stdexcept>

#include "ddt/errors.hpp"
#include "ddt/fitting.hpp"
#include "ddt/matching.hpp"
#include "ddt/objective.hpp"
#include "ddt/static_tomography.hpp"
#include "ddt/tracking.hpp"
#include "ddt/windows.hpp"

namespace ddt {
namespace {

TrackResult failure(Status s, std::string message, std::optional<std::size_t> frame = {}) {
  TrackResult r;
  r.status = s;
  r.message = std::move(message);
  r.frame = frame;
  return r;
}

const std::vector<WindowConstraint>& windows_of(const TomographyInstance& inst, std::size_t tau) {
  static const std::vector<WindowConstraint> none;
  return inst.windows.empty() ? none : inst.windows[tau];
}

// Support of the cheapest realization of a frame under point weights. The
// plain frame system is TU, so the LP vertex must be 0/1; windows go
// through the window solver.
std::variant<PointSet, TrackResult> weighted_frame(const TomographyInstance& inst, std::size_t tau,
                                                   const Grid& grid,
                                                   const std::vector<Rational>& weights,
                                                   const IlpOptions& ilp) {
  const auto& windows = windows_of(inst, tau);
  if (!windows.empty()) {
    auto f = solve_windowed_frame(grid, windows, weights, ilp);
    if (f.status == Status::kOk) return *f.support;
    return failure(f.status,
                   f.status == Status::kInfeasible
                       ? "frame " + std::to_string(tau + 1) + " has no solution within its windows"
                       : "node budget exhausted on frame " + std::to_string(tau + 1),
                   tau);
  }
  auto out = solve_lp(frame_lp(grid, weights));
  if (out.status != SolveStatus::kOptimal) {
    return failure(Status::kInfeasible, "frame " + std::to_string(tau + 1) + " has no tomographic solution",
                   tau);
  }
  std::vector<bool> chosen(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!out.primal[j].is_zero() && out.primal[j] != Rational(1)) {
      throw std::logic_error("fitting LP vertex is not integral");
    }
    chosen[j] = out.primal[j] == Rational(1);
  }
  return support(grid, chosen);
}

// Squared distance from g to the line through p and q (to p itself when
// p == q).
Rational squared_line_distance(const Point& g, const Point& p, const Point& q) {
  Point d = q - p;
  Point v = g - p;
  Rational dd = dot(d, d);
  if (dd.is_zero()) return dot(v, v);
  Rational s = dot(v, d) / dd;
  Point w = v - s * d;
  return dot(w, w);
}

std::vector<std::size_t> distance_matching(const PointSet& a, const PointSet& b, const NormSpec& norm) {
  std::vector<std::vector<Rational>> w(a.size(), std::vector<Rational>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) w[i][j] = norm.h_distance(a[i], b[j]);
  }
  return min_weight_perfect_matching(w).assignment;
}

}  // namespace

TrackResult path_fitting(const TomographyInstance& inst, const FitOptions& opts,
                         std::optional<std::size_t> tau1_opt, std::optional<std::size_t> tauk_opt) {
  inst.validate();
  const std::size_t t = inst.t();
  for (std::size_t tau = 0; tau < t; ++tau) {
    if (!inst.is_known(tau)) throw InputError("path fitting needs known positions for every frame");
  }
  const std::size_t tau1 = tau1_opt.value_or(0);
  const std::size_t tauk = tauk_opt.value_or(t == 0 ? 0 : t - 1);
  FrameCandidates cands;
  for (std::size_t tau = 0; tau < t; ++tau) cands.push_back(inst.known[tau]->points());
  const std::size_t n = cands.empty() ? 0 : cands[0].size();

  std::vector<std::vector<Rational>> gamma(n, std::vector<Rational>(n));
  std::vector<std::vector<Witness>> witness(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      witness[i].push_back(fit_weight_pair(cands, tau1, tauk, i, j, opts));
      gamma[i][j] = witness[i].back().weight;
    }
  }
  auto m = min_weight_perfect_matching(gamma);

  TrackSet ts;
  for (std::size_t tau = 0; tau < t; ++tau) ts.frames.push_back(*inst.known[tau]);
  ts.tracks.assign(n, std::vector<std::size_t>(t, 0));
  for (std::size_t i = 0; i < n; ++i) {
    ts.tracks[i][tau1] = i;
    ts.tracks[i][tauk] = m.assignment[i];
  }
  for (std::size_t tau = 0; tau < t; ++tau) {
    if (tau == tau1 || tau == tauk) continue;
    std::vector<bool> taken(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      Point r = evaluate_fit(cands, witness[i][m.assignment[i]].sample, tau);
      std::optional<Rational> best;
      std::size_t pick = n;
      for (std::size_t g = 0; g < n; ++g) {
        if (taken[g]) continue;
        Rational d = opts.norm.h_distance(r, cands[tau][g]);
        if (!best || d < *best) {
          best = std::move(d);
          pick = g;
        }
      }
      taken[pick] = true;
      ts.tracks[i][tau] = pick;
    }
  }
  TrackResult r;
  r.tracks = std::move(ts);
  finalize_tracks(inst, r);
  return r;
}

TrackResult tomographic_fitting(const TomographyInstance& inst, const FitOptions& opts,
                                const IlpOptions& ilp) {
  inst.validate();
  auto grids = inst.grids();
  auto alpha = alpha_weights(candidates_of(grids), opts);
  std::vector<std::vector<Rational>> weights(grids.size());
  for (std::size_t tau = 0; tau < grids.size(); ++tau) {
    for (const auto& w : alpha[tau]) weights[tau].push_back(w.weight);
  }

  std::vector<PointSet> frames;
  for (std::size_t tau = 0; tau < inst.t(); ++tau) {
    if (inst.is_known(tau)) {
      frames.push_back(*inst.known[tau]);
      continue;
    }
    auto f = weighted_frame(inst, tau, grids[tau], weights[tau], ilp);
    if (auto* fail = std::get_if<TrackResult>(&f)) return std::move(*fail);
    frames.push_back(std::get<PointSet>(std::move(f)));
  }

  std::vector<std::vector<std::size_t>> perms;
  for (std::size_t tau = 0; tau + 1 < inst.t(); ++tau) {
    std::vector<std::vector<Rational>> w(frames[tau].size(), std::vector<Rational>(frames[tau + 1].size()));
    for (std::size_t a = 0; a < frames[tau].size(); ++a) {
      const Rational& wa = weights[tau][grids[tau].index_of(frames[tau][a])];
      for (std::size_t b = 0; b < frames[tau + 1].size(); ++b) {
        w[a][b] = wa + weights[tau + 1][grids[tau + 1].index_of(frames[tau + 1][b])];
      }
    }
    perms.push_back(min_weight_perfect_matching(w).assignment);
  }
  TrackResult r;
  r.tracks = TrackSet::from_couplings(std::move(frames), perms);
  finalize_tracks(inst, r);
  return r;
}

TrackResult tomographic_path_fitting(const TomographyInstance& inst, const FitOptions& opts,
                                     const IlpOptions& ilp) {
  TrackResult frames = tomographic_fitting(inst, opts, ilp);
  if (frames.status != Status::kOk) return frames;
  TomographyInstance fixed = inst;
  fixed.known.clear();
  for (const auto& f : frames.tracks.frames) fixed.known.emplace_back(f);
  // Weights that index the original grids cannot be evaluated on the
  // known-frame grids; the final objective is recomputed below anyway.
  fixed.weights = WeightModel{};
  fixed.windows.clear();
  TrackResult r = path_fitting(fixed, opts);
  finalize_tracks(inst, r);
  return r;
}

TwoWayResult two_way_fitting(const TomographyInstance& inst, const TwoWayOptions& options) {
  inst.validate();
  options.norm.validate();
  if (inst.t() != 3) throw InputError("two-way fitting needs exactly three frames");
  auto grids = inst.grids();
  const NormSpec& norm = options.norm;

  TwoWayResult res;
  auto fail = [&](TrackResult r) {
    res.result = std::move(r);
    return res;
  };
  auto roll = [&](std::size_t tau, const PointSet& from) -> std::variant<PointSet, TrackResult> {
    if (inst.is_known(tau)) return *inst.known[tau];
    std::vector<Rational> w;
    for (const auto& g : grids[tau].points()) {
      std::optional<Rational> best;
      for (const auto& p : from) {
        Rational d = norm.h_distance(g, p);
        if (!best || d < *best) best = std::move(d);
      }
      w.push_back(*best);
    }
    return weighted_frame(inst, tau, grids[tau], w, options.ilp);
  };

  // Initial F1 and F2: any realization of frame 1, then one rolling step.
  PointSet f1;
  if (inst.is_known(0)) {
    f1 = *inst.known[0];
  } else {
    auto first = weighted_frame(inst, 0, grids[0], {}, options.ilp);
    if (auto* e = std::get_if<TrackResult>(&first)) return fail(std::move(*e));
    f1 = std::get<PointSet>(std::move(first));
  }
  auto second = roll(1, f1);
  if (auto* e = std::get_if<TrackResult>(&second)) return fail(std::move(*e));
  PointSet f2 = std::get<PointSet>(std::move(second));

  FitOptions line_fit;
  line_fit.k = 2;
  line_fit.norm = norm;

  std::set<std::vector<PointSet>> seen;
  std::optional<TrackResult> best;
  Rational best_area;
  while (res.rounds < options.max_rounds) {
    ++res.rounds;
    // Forward: lines through matched (F1, F2) pairs predict frame 3.
    auto m12 = distance_matching(f1, f2, norm);
    PointSet f3;
    if (inst.is_known(2)) {
      f3 = *inst.known[2];
    } else {
      std::vector<Rational> w;
      for (const auto& g : grids[2].points()) {
        std::optional<Rational> b;
        for (std::size_t i = 0; i < f1.size(); ++i) {
          Rational d = squared_line_distance(g, f1[i], f2[m12[i]]);
          if (!b || d < *b) b = std::move(d);
        }
        w.push_back(*b);
      }
      auto third = weighted_frame(inst, 2, grids[2], w, options.ilp);
      if (auto* e = std::get_if<TrackResult>(&third)) return fail(std::move(*e));
      f3 = std::get<PointSet>(std::move(third));
    }

    std::vector<PointSet> triple{f1, f2, f3};
    TomographyInstance fixed = TomographyInstance::from_frames(triple, inst.directions, true);
    TrackResult tr = path_fitting(fixed, line_fit);
    Rational area = straightness(tr.tracks);
    res.trace.push_back(area);
    if (!best || area < best_area) {
      best = std::move(tr);
      best_area = area;
    }
    if (!seen.insert(triple).second) {
      res.converged = true;
      break;
    }

    // Backward: frame 2 from the midpoints of (F1, F3) pairs, then frame 1
    // by a rolling step from the new frame 2.
    if (!inst.is_known(1)) {
      std::vector<Rational> w;
      for (const auto& g : grids[1].points()) {
        std::optional<Rational> b;
        for (const auto& a : f1) {
          for (const auto& c : f3) {
            Point mid = Rational(1, 2) * (a + c);
            Rational d = norm.h_distance(g, mid);
            if (!b || d < *b) b = std::move(d);
          }
        }
        w.push_back(*b);
      }
      auto refit = weighted_frame(inst, 1, grids[1], w, options.ilp);
      if (auto* e = std::get_if<TrackResult>(&refit)) return fail(std::move(*e));
      f2 = std::get<PointSet>(std::move(refit));
    }
    auto back = roll(0, f2);
    if (auto* e = std::get_if<TrackResult>(&back)) return fail(std::move(*e));
    f1 = std::get<PointSet>(std::move(back));
  }

  res.result = std::move(*best);
  if (!res.converged) res.result.message = "round cap reached before a triple repeated";
  // Report the instance's own objective alongside the straightness trace.
  finalize_tracks(inst, res.result);
  return res;
}

}  // namespace ddt
