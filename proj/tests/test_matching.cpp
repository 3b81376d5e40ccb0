#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "ddt/errors.hpp"
#include "ddt/lp.hpp"
#include "ddt/matching.hpp"
#include "ddt/rng.hpp"

using namespace ddt;

namespace {

// Exhaustive oracle: minimum value and the lexicographically first
// permutation attaining it (next_permutation walks in lex order).
std::optional<std::pair<Rational, std::vector<std::size_t>>> brute(const WeightMatrix& w) {
  std::vector<std::size_t> perm(w.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<std::pair<Rational, std::vector<std::size_t>>> best;
  do {
    Rational s;
    bool ok = true;
    for (std::size_t i = 0; i < w.size() && ok; ++i) {
      if (!w[i][perm[i]]) ok = false;
      else s += *w[i][perm[i]];
    }
    if (ok && (!best || s < best->first)) best = {{s, perm}};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("matching examples") {
  auto a = min_weight_perfect_matching(std::vector<std::vector<Rational>>{{0, 1}, {1, 0}});
  CHECK(a.assignment == std::vector<std::size_t>{0, 1});
  CHECK(a.value == 0);
  auto b = min_weight_perfect_matching(std::vector<std::vector<Rational>>{{1, 2}, {3, 4}});
  CHECK(b.value == 5);
  CHECK(b.assignment == std::vector<std::size_t>{0, 1});
  auto c = min_weight_perfect_matching(std::vector<std::vector<Rational>>{{2, 1}, {1, 2}});
  CHECK(c.assignment == std::vector<std::size_t>{1, 0});
  CHECK(c.value == 2);
}

TEST_CASE("forbidden edges") {
  WeightMatrix w = {{std::nullopt, Rational(1)}, {std::nullopt, Rational(1)}};
  CHECK_FALSE(min_weight_perfect_matching(w).feasible);
  WeightMatrix v = {{std::nullopt, Rational(5)}, {Rational(7), Rational(0)}};
  auto r = min_weight_perfect_matching(v);
  REQUIRE(r.feasible);
  CHECK(r.assignment == std::vector<std::size_t>{1, 0});
  CHECK(r.value == 12);
  CHECK(min_weight_perfect_matching(WeightMatrix{}).feasible);
  CHECK_THROWS_AS(min_weight_perfect_matching(WeightMatrix{{Rational(1), Rational(2)}}), InputError);
}

TEST_CASE("exhaustive cross-check up to n = 7 with lexicographic tie-break") {
  Rng rng(31);
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t n = 1 + rng.below(7);
    // Small value range forces many ties.
    WeightMatrix w(n, std::vector<EdgeWeight>(n));
    for (auto& row : w) {
      for (auto& e : row) {
        if (rng.below(8) == 0) continue;
        e = Rational(rng.range(0, 3), rng.range(1, 2));
      }
    }
    auto got = min_weight_perfect_matching(w);
    auto want = brute(w);
    REQUIRE(got.feasible == want.has_value());
    if (!want) continue;
    CHECK(got.value == want->first);
    CHECK(got.assignment == want->second);
  }
}

TEST_CASE("simplex agrees with the Hungarian value") {
  Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng.below(5);
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n));
    LinearProgram lp;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        w[i][j] = Rational(rng.range(-9, 9), rng.range(1, 4));
        lp.add_binary(w[i][j]);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<std::size_t, Rational>> r, c;
      for (std::size_t j = 0; j < n; ++j) {
        r.emplace_back(i * n + j, 1);
        c.emplace_back(j * n + i, 1);
      }
      lp.add_row(r, Relation::kEq, 1);
      lp.add_row(c, Relation::kEq, 1);
    }
    auto lpo = solve_lp(lp);
    REQUIRE(lpo.status == SolveStatus::kOptimal);
    CHECK(lpo.objective == min_weight_perfect_matching(w).value);
    for (const auto& v : lpo.primal) CHECK((v == 0 || v == 1));
  }
}
