#include "ddt/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ddt/errors.hpp"
#include "ddt/objective.hpp"
#include "ddt/static_tomography.hpp"

namespace ddt {
namespace {

using Realization = std::vector<std::size_t>;  // sorted grid indices

std::vector<Realization> frame_realizations(const TomographyInstance& inst, const Grid& grid,
                                            std::size_t tau, const OracleBounds& bounds) {
  std::vector<Realization> out;
  if (inst.is_known(tau)) {
    Realization r(grid.size());
    std::iota(r.begin(), r.end(), 0);
    out.push_back(std::move(r));
    return out;
  }
  enumerate_realizations(
      grid,
      [&](const std::vector<bool>& chosen) {
        Realization r;
        for (std::size_t i = 0; i < chosen.size(); ++i) {
          if (chosen[i]) r.push_back(i);
        }
        out.push_back(std::move(r));
        return true;
      },
      bounds.max_grid);
  return out;
}

void check_bounds(const TomographyInstance& inst, const OracleBounds& bounds) {
  if (inst.n() > bounds.max_n) {
    throw BoundsExceeded("oracle supports n <= " + std::to_string(bounds.max_n));
  }
  if (inst.t() > bounds.max_t) {
    throw BoundsExceeded("oracle supports t <= " + std::to_string(bounds.max_t));
  }
}

PointSet to_set(const Grid& g, const Realization& r) {
  std::vector<Point> pts;
  for (std::size_t i : r) pts.push_back(g[i]);
  return PointSet(std::move(pts));
}

}  // namespace

TrackResult brute_force_tomtrac(const TomographyInstance& inst, const OracleBounds& bounds) {
  inst.validate();
  check_bounds(inst, bounds);
  const std::size_t t = inst.t();
  const auto n = static_cast<std::size_t>(inst.n());
  auto grids = inst.grids();
  std::vector<std::vector<Realization>> reals;
  for (std::size_t tau = 0; tau < t; ++tau) {
    if (grids[tau].size() > bounds.max_grid) {
      throw BoundsExceeded("frame " + std::to_string(tau + 1) + " grid has " +
                           std::to_string(grids[tau].size()) + " points (oracle bound " +
                           std::to_string(bounds.max_grid) + ")");
    }
    reals.push_back(frame_realizations(inst, grids[tau], tau, bounds));
    if (reals.back().empty()) {
      TrackResult r;
      r.status = Status::kInfeasible;
      r.message = "frame " + std::to_string(tau + 1) + " has no realization";
      r.frame = tau;
      return r;
    }
  }
  EdgeWeights edges(inst, inst.weights.is_markov() ? grids : std::vector<Grid>{});

  std::vector<std::size_t> ident(n);
  std::iota(ident.begin(), ident.end(), 0);

  std::vector<std::size_t> best_choice;                  // realization index per frame
  std::vector<std::vector<std::size_t>> best_perms;      // per step
  std::optional<Rational> best_value;

  if (inst.weights.is_markov()) {
    // value[tau][r]: best cost of frames 0..tau ending in realization r.
    std::vector<std::vector<std::optional<Rational>>> value(t);
    std::vector<std::vector<std::pair<std::size_t, std::vector<std::size_t>>>> back(t);
    value[0].assign(reals[0].size(), Rational(0));
    back[0].assign(reals[0].size(), {});
    for (std::size_t tau = 0; tau + 1 < t; ++tau) {
      value[tau + 1].assign(reals[tau + 1].size(), std::nullopt);
      back[tau + 1].assign(reals[tau + 1].size(), {});
      for (std::size_t b = 0; b < reals[tau + 1].size(); ++b) {
        for (std::size_t a = 0; a < reals[tau].size(); ++a) {
          if (!value[tau][a]) continue;
          WeightMatrix w = edges.matrix(tau, reals[tau][a], reals[tau + 1][b]);
          std::vector<std::size_t> perm = ident;
          do {
            Rational c = *value[tau][a];
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
              if (!w[i][perm[i]]) {
                ok = false;
              } else {
                c += *w[i][perm[i]];
              }
            }
            if (ok && (!value[tau + 1][b] || c < *value[tau + 1][b])) {
              value[tau + 1][b] = c;
              back[tau + 1][b] = {a, perm};
            }
          } while (std::next_permutation(perm.begin(), perm.end()));
        }
      }
    }
    std::size_t end = reals[t - 1].size();
    for (std::size_t r = 0; r < reals[t - 1].size(); ++r) {
      if (value[t - 1][r] && (!best_value || *value[t - 1][r] < *best_value)) {
        best_value = value[t - 1][r];
        end = r;
      }
    }
    if (best_value) {
      best_choice.assign(t, 0);
      best_perms.assign(t - 1, {});
      std::size_t cur = end;
      for (std::size_t tau = t; tau-- > 0;) {
        best_choice[tau] = cur;
        if (tau > 0) {
          best_perms[tau - 1] = back[tau][cur].second;
          cur = back[tau][cur].first;
        }
      }
    }
  } else {
    std::uint64_t per_coupling = 1;
    for (std::size_t i = 2; i <= n; ++i) per_coupling *= i;
    std::uint64_t combos = 1;
    for (std::size_t tau = 0; tau < t; ++tau) {
      combos *= reals[tau].size();
      if (tau > 0) combos *= per_coupling;
      if (combos > bounds.max_combinations) {
        throw BoundsExceeded("non-Markov enumeration exceeds the combination cap");
      }
    }
    std::vector<std::size_t> choice(t, 0);
    std::vector<std::vector<std::size_t>> perms(t > 0 ? t - 1 : 0, ident);
    while (true) {
      // Iterate all coupling tuples for this realization choice.
      for (auto& p : perms) p = ident;
      while (true) {
        Rational total;
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
          std::vector<Point> path;
          std::size_t idx = j;
          for (std::size_t tau = 0; tau < t; ++tau) {
            if (tau > 0) idx = perms[tau - 1][idx];
            path.push_back(grids[tau][reals[tau][choice[tau]][idx]]);
          }
          auto c = path_cost(inst, edges, path);
          if (!c) {
            ok = false;
          } else {
            total += *c;
          }
        }
        if (ok && (!best_value || total < *best_value)) {
          best_value = total;
          best_choice = choice;
          best_perms = perms;
        }
        std::size_t s = perms.size();
        while (s > 0) {
          --s;
          if (std::next_permutation(perms[s].begin(), perms[s].end())) break;
          if (s == 0) {
            s = perms.size() + 1;
            break;
          }
        }
        if (perms.empty() || s == perms.size() + 1) break;
      }
      std::size_t pos = t;
      bool done = true;
      while (pos > 0) {
        --pos;
        if (++choice[pos] < reals[pos].size()) {
          done = false;
          break;
        }
        choice[pos] = 0;
      }
      if (done) break;
    }
  }

  TrackResult r;
  if (!best_value) {
    r.status = Status::kInfeasible;
    r.message = "every coupling uses a forbidden edge or path";
    return r;
  }
  std::vector<PointSet> frames;
  for (std::size_t tau = 0; tau < t; ++tau) frames.push_back(to_set(grids[tau], reals[tau][best_choice[tau]]));
  r.tracks = TrackSet::from_couplings(std::move(frames), best_perms);
  r.tracks.canonicalize();
  r.tracks.objective = *best_value;
  auto check = evaluate_objective(inst, edges, r.tracks);
  if (!check || *check != *best_value) throw std::logic_error("oracle objective mismatch");
  return r;
}

std::optional<PointSet> brute_force_displacement(const TomographyInstance& inst,
                                                 const OracleBounds& bounds) {
  inst.validate();
  if (!inst.displacement) throw InputError("instance has no displacement field");
  Grid g1 = inst.grid(0);
  if (g1.size() > bounds.max_grid) throw BoundsExceeded("frame-1 grid too large for the oracle");
  std::optional<PointSet> found;
  enumerate_realizations(
      g1,
      [&](const std::vector<bool>& chosen) {
        PointSet f1 = support(g1, chosen);
        std::vector<PointSet> frames{f1};
        for (std::size_t step = 0; step + 1 < inst.t(); ++step) {
          std::vector<Point> next;
          for (const auto& p : frames.back()) {
            auto q = inst.displacement->apply(step, p);
            if (!q) return true;
            next.push_back(*q);
          }
          frames.emplace_back(next);
          if (frames.back().size() != next.size()) return true;
        }
        for (std::size_t tau = 0; tau < inst.t(); ++tau) {
          if (xray(frames[tau], inst.directions[0], 0) != inst.frames[tau].first ||
              xray(frames[tau], inst.directions[1], 1) != inst.frames[tau].second) {
            return true;
          }
        }
        found = f1;
        return false;
      },
      bounds.max_grid);
  return found;
}

}  // namespace ddt
