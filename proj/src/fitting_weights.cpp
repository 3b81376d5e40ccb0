#include <algorithm>
#include <functional>

#include "ddt/errors.hpp"
#include "ddt/fitting.hpp"

namespace ddt {
namespace {

// All strictly increasing tuples of `size` values drawn from `pool`.
std::vector<std::vector<std::size_t>> combinations(const std::vector<std::size_t>& pool,
                                                   std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == size) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// Calls visit for every index assignment of the given times (odometer order).
void for_each_assignment(const FrameCandidates& cands, const std::vector<std::size_t>& times,
                         const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> idx(times.size(), 0);
  for (std::size_t tm : times) {
    if (cands[tm].empty()) return;
  }
  while (true) {
    visit(idx);
    std::size_t pos = idx.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < cands[times[pos]].size()) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
    if (idx.empty()) return;
  }
}

void check_options(const FrameCandidates& cands, const FitOptions& opts) {
  if (opts.k < 2) throw InputError("sample fits need k >= 2");
  if (opts.k > opts.max_k) {
    throw InputError("k = " + std::to_string(opts.k) + " exceeds the configured maximum " +
                     std::to_string(opts.max_k));
  }
  if (cands.size() < opts.k) throw InputError("need at least k frames for k-samples");
  for (std::size_t tau = 0; tau < cands.size(); ++tau) {
    if (cands[tau].empty()) throw InputError("empty grid at frame " + std::to_string(tau + 1));
  }
  opts.norm.validate();
}

// Weight of a sample; with `cutoff`, stops early once the max-min value
// exceeds it (the returned value is then only a lower bound above cutoff).
Rational evaluate_sample(const FrameCandidates& cands, const std::vector<SampleEntry>& sample,
                         const FitOptions& opts, const std::optional<Rational>& cutoff) {
  std::vector<std::pair<Rational, Point>> pts;
  pts.reserve(sample.size());
  for (const auto& e : sample) pts.emplace_back(Rational(static_cast<std::int64_t>(e.time)), cands[e.time][e.index]);
  Rational total;
  std::size_t next_sample = 0;
  for (std::size_t tau = 0; tau < cands.size(); ++tau) {
    if (next_sample < sample.size() && sample[next_sample].time == tau) {
      ++next_sample;  // the curve passes through a candidate here: distance 0
      continue;
    }
    Point r = evaluate_fit(pts, Rational(static_cast<std::int64_t>(tau)));
    std::optional<Rational> best;
    for (const auto& g : cands[tau]) {
      if (opts.counter) ++*opts.counter;
      Rational d = opts.norm.h_distance(r, g);
      if (!best || d < *best) best = std::move(d);
      if (cutoff && best->is_zero()) break;
    }
    if (opts.variant == WeightVariant::kMaxMin) {
      if (*best > total) total = *best;
    } else {
      total += *best;
    }
    if (cutoff && total > *cutoff) return total;
  }
  return total;
}

}  // namespace

WeightVariant parse_weight_variant(const std::string& text) {
  if (text == "maxmin") return WeightVariant::kMaxMin;
  if (text == "sumsq") return WeightVariant::kSumSq;
  throw InputError("unknown weight variant '" + text + "' (expected maxmin or sumsq)");
}

const char* to_string(WeightVariant v) {
  return v == WeightVariant::kMaxMin ? "maxmin" : "sumsq";
}

Point evaluate_fit(const std::vector<std::pair<Rational, Point>>& sample, const Rational& time) {
  if (sample.empty()) throw InputError("empty sample");
  std::vector<Rational> acc(sample[0].second.dim());
  for (std::size_t s = 0; s < sample.size(); ++s) {
    Rational coef(1);
    for (std::size_t r = 0; r < sample.size(); ++r) {
      if (r == s) continue;
      const Rational denom = sample[s].first - sample[r].first;
      if (denom.is_zero()) throw InputError("sample times must be distinct");
      coef *= (time - sample[r].first) / denom;
    }
    if (coef.is_zero()) continue;
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += coef * sample[s].second[c];
  }
  return Point(std::move(acc));
}

Point evaluate_fit(const FrameCandidates& cands, const std::vector<SampleEntry>& sample,
                   std::size_t time) {
  std::vector<std::pair<Rational, Point>> pts;
  for (const auto& e : sample) pts.emplace_back(Rational(static_cast<std::int64_t>(e.time)), cands[e.time][e.index]);
  return evaluate_fit(pts, Rational(static_cast<std::int64_t>(time)));
}

Rational sample_weight(const FrameCandidates& cands, const std::vector<SampleEntry>& sample,
                       const FitOptions& opts) {
  FitOptions quiet = opts;
  quiet.counter = nullptr;
  return evaluate_sample(cands, sample, quiet, std::nullopt);
}

Witness fit_weight_pair(const FrameCandidates& cands, std::size_t tau1, std::size_t tauk,
                        std::size_t i, std::size_t j, const FitOptions& opts) {
  check_options(cands, opts);
  if (!(tau1 < tauk) || tauk >= cands.size()) throw InputError("need tau1 < tauk <= t");
  if (i >= cands[tau1].size() || j >= cands[tauk].size()) throw InputError("anchor out of range");
  std::vector<std::size_t> interior;
  for (std::size_t tau = tau1 + 1; tau < tauk; ++tau) interior.push_back(tau);
  if (interior.size() < opts.k - 2) {
    throw InputError("not enough frames between the anchors for a k-sample");
  }
  std::optional<Witness> best;
  for (const auto& times : combinations(interior, opts.k - 2)) {
    for_each_assignment(cands, times, [&](const std::vector<std::size_t>& idx) {
      std::vector<SampleEntry> sample{{tau1, i}};
      for (std::size_t s = 0; s < times.size(); ++s) sample.push_back({times[s], idx[s]});
      sample.push_back({tauk, j});
      Rational w = evaluate_sample(cands, sample, opts, std::nullopt);
      if (!best || w < best->weight || (w == best->weight && sample < best->sample)) {
        best = Witness{std::move(w), std::move(sample)};
      }
    });
  }
  return *best;
}

std::vector<std::vector<Witness>> alpha_weights(const FrameCandidates& cands,
                                                const FitOptions& opts) {
  check_options(cands, opts);
  std::vector<std::vector<Witness>> out(cands.size());
  for (std::size_t tau0 = 0; tau0 < cands.size(); ++tau0) {
    std::vector<std::size_t> others;
    for (std::size_t tau = 0; tau < cands.size(); ++tau) {
      if (tau != tau0) others.push_back(tau);
    }
    const auto time_sets = combinations(others, opts.k - 1);
    for (std::size_t g = 0; g < cands[tau0].size(); ++g) {
      std::optional<Witness> best;
      for (const auto& times : time_sets) {
        for_each_assignment(cands, times, [&](const std::vector<std::size_t>& idx) {
          std::vector<SampleEntry> sample;
          for (std::size_t s = 0; s < times.size(); ++s) sample.push_back({times[s], idx[s]});
          sample.push_back({tau0, g});
          std::sort(sample.begin(), sample.end());
          std::optional<Rational> cutoff;
          if (best) cutoff = best->weight;
          Rational w = evaluate_sample(cands, sample, opts, cutoff);
          if (!best || w < best->weight || (w == best->weight && sample < best->sample)) {
            best = Witness{std::move(w), std::move(sample)};
          }
        });
      }
      out[tau0].push_back(std::move(*best));
    }
  }
  return out;
}

FrameCandidates candidates_of(const std::vector<Grid>& grids) {
  FrameCandidates out;
  for (const auto& g : grids) out.push_back(g.points());
  return out;
}

}  // namespace ddt
