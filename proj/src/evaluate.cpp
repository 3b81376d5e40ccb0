#include "ddt/evaluate.hpp"

#include <set>
#include <tuple>

#include "ddt/errors.hpp"

namespace ddt {
namespace {

std::set<std::tuple<std::size_t, Point, Point>> edges_of(const TrackSet& ts) {
  std::set<std::tuple<std::size_t, Point, Point>> out;
  for (std::size_t j = 0; j < ts.n(); ++j) {
    auto p = ts.path(j);
    for (std::size_t tau = 0; tau + 1 < p.size(); ++tau) out.emplace(tau, p[tau], p[tau + 1]);
  }
  return out;
}

}  // namespace

EvalReport evaluate(const TrackSet& result, const TrackSet& truth, const std::optional<Rational>& optimum) {
  if (result.n() != truth.n() || result.t() != truth.t()) {
    throw InputError("result has n=" + std::to_string(result.n()) + ", t=" + std::to_string(result.t()) +
                     " but the truth has n=" + std::to_string(truth.n()) + ", t=" + std::to_string(truth.t()));
  }
  EvalReport r;
  const auto want = edges_of(truth);
  const auto got = edges_of(result);
  std::int64_t hit = 0;
  for (const auto& e : want) hit += got.count(e);
  r.edge_accuracy = want.empty() ? Rational(1) : Rational(hit, static_cast<std::int64_t>(want.size()));
  for (std::size_t tau = 0; tau < truth.t(); ++tau) {
    std::int64_t same = 0;
    for (const auto& p : truth.frames[tau]) same += result.frames[tau].contains(p) ? 1 : 0;
    const auto n = static_cast<std::int64_t>(truth.frames[tau].size());
    r.frame_accuracy.push_back(n == 0 ? Rational(1) : Rational(same, n));
  }
  if (optimum) r.objective_gap = result.objective - *optimum;
  return r;
}

}  // namespace ddt
