#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "ddt/errors.hpp"
#include "ddt/lp.hpp"
#include "ddt/rng.hpp"
#include "ddt/tu_probe.hpp"

using namespace ddt;

namespace {

using Dense = std::vector<std::vector<Rational>>;

// Vertex enumeration oracle for tiny LPs: every choice of n tight
// constraints (rows as equalities or variable bounds) solved exactly.
std::optional<Rational> vertex_oracle(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  struct Hyper {
    std::vector<Rational> a;
    Rational b;
  };
  std::vector<Hyper> hs;
  for (const auto& row : lp.rows) {
    Hyper h{std::vector<Rational>(n), row.rhs};
    for (const auto& [j, v] : row.coeffs) h.a[j] += v;
    hs.push_back(h);
  }
  for (std::size_t j = 0; j < n; ++j) {
    Hyper lo{std::vector<Rational>(n), lp.lower[j]};
    lo.a[j] = 1;
    hs.push_back(lo);
    if (lp.upper[j]) {
      Hyper hi{std::vector<Rational>(n), *lp.upper[j]};
      hi.a[j] = 1;
      hs.push_back(hi);
    }
  }
  std::optional<Rational> best;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      Dense m(n, std::vector<Rational>(n + 1));
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) m[r][c] = hs[pick[r]].a[c];
        m[r][n] = hs[pick[r]].b;
      }
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return;
        std::swap(m[p], m[c]);
        for (std::size_t r = 0; r < n; ++r) {
          if (r == c || m[r][c].is_zero()) continue;
          Rational f = m[r][c] / m[c][c];
          for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
        }
      }
      std::vector<Rational> x(n);
      for (std::size_t c = 0; c < n; ++c) x[c] = m[c][n] / m[c][c];
      if (!lp.satisfied_by(x)) return;
      Rational v = lp.evaluate(x);
      if (!best || v < *best) best = v;
      return;
    }
    for (std::size_t i = start; i < hs.size(); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

LinearProgram assignment_lp(const Dense& w) {
  const std::size_t n = w.size();
  LinearProgram lp;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) lp.add_binary(w[i][j]);
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
  return lp;
}

Rational permutation_min(const Dense& w) {
  std::vector<std::size_t> perm(w.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<Rational> best;
  do {
    Rational s;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i][perm[i]];
    if (!best || s < *best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

}  // namespace

TEST_CASE("single fixed variable") {
  LinearProgram lp;
  lp.add_binary(1);
  lp.add_row({{0, 1}}, Relation::kEq, 1);
  auto out = solve_lp(lp);
  REQUIRE(out.status == SolveStatus::kOptimal);
  CHECK(out.primal[0] == 1);
  CHECK(out.objective == 1);
}

TEST_CASE("assignment relaxation is integral") {
  auto out = solve_lp(assignment_lp({{0, 1}, {1, 0}}));
  REQUIRE(out.status == SolveStatus::kOptimal);
  CHECK(out.objective == 0);
  CHECK(out.primal == std::vector<Rational>{1, 0, 0, 1});
}

TEST_CASE("3x3 transportation value") {
  Dense w = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  auto out = solve_lp(assignment_lp(w));
  REQUIRE(out.status == SolveStatus::kOptimal);
  CHECK(out.objective == permutation_min(w));
  CHECK(out.objective == 15);
  for (const auto& v : out.primal) CHECK((v == 0 || v == 1));
}

TEST_CASE("infeasible and unbounded") {
  LinearProgram lp;
  lp.add_binary(0);
  lp.add_row({{0, 1}}, Relation::kGe, 2);
  CHECK(solve_lp(lp).status == SolveStatus::kInfeasible);

  LinearProgram u;
  u.add_variable(-1, 0, std::nullopt);
  u.add_variable(0, 0, std::nullopt);
  u.add_row({{0, 1}, {1, -1}}, Relation::kLe, 3);
  CHECK(solve_lp(u).status == SolveStatus::kUnbounded);

  LinearProgram bad;
  bad.add_variable(0, 2, Rational(1));
  CHECK_THROWS_AS(solve_lp(bad), InputError);
}

TEST_CASE("random small LPs match vertex enumeration") {
  Rng rng(99);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LinearProgram lp;
    std::size_t n = 1 + rng.below(3);
    for (std::size_t j = 0; j < n; ++j) {
      Rational lo(rng.range(-3, 1));
      lp.add_variable(Rational(rng.range(-5, 5), rng.range(1, 3)), lo,
                      Rational(lo + Rational(rng.range(0, 4))));
    }
    std::size_t m = rng.below(4);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::pair<std::size_t, Rational>> coeffs;
      for (std::size_t j = 0; j < n; ++j) coeffs.emplace_back(j, Rational(rng.range(-3, 3), rng.range(1, 2)));
      lp.add_row(coeffs, static_cast<Relation>(rng.below(3)), Rational(rng.range(-4, 4)));
    }
    auto out = solve_lp(lp);
    auto oracle = vertex_oracle(lp);
    if (!oracle) {
      CHECK(out.status == SolveStatus::kInfeasible);
      ++infeasible;
      continue;
    }
    REQUIRE(out.status == SolveStatus::kOptimal);
    CHECK(lp.satisfied_by(out.primal));
    CHECK(out.objective == *oracle);
    CHECK(out.objective == lp.evaluate(out.primal));
    CHECK(out.pivots < 200);
    ++optimal;
  }
  CHECK(optimal > 100);
  CHECK(infeasible > 10);
}

TEST_CASE("ILP: integral relaxation needs no branching") {
  IlpModel m{assignment_lp({{3, 1}, {1, 3}}), {0, 1, 2, 3}, {}};
  auto out = solve_ilp(m);
  REQUIRE(out.status == SolveStatus::kOptimal);
  CHECK(out.nodes == 1);
  CHECK(out.objective == 2);
}

TEST_CASE("ILP: fractional relaxation is branched away") {
  // Odd cycle: x0+x1 <= 1, x1+x2 <= 1, x0+x2 <= 1, maximize the sum.
  LinearProgram lp;
  for (int j = 0; j < 3; ++j) lp.add_binary(-1);
  lp.add_row({{0, 1}, {1, 1}}, Relation::kLe, 1);
  lp.add_row({{1, 1}, {2, 1}}, Relation::kLe, 1);
  lp.add_row({{0, 1}, {2, 1}}, Relation::kLe, 1);
  auto relax = solve_lp(lp);
  CHECK(relax.objective == Rational(-3, 2));
  auto out = solve_ilp(IlpModel{lp, {0, 1, 2}, {}});
  REQUIRE(out.status == SolveStatus::kOptimal);
  CHECK(out.objective == -1);
  CHECK(out.nodes > 1);

  auto starved = solve_ilp(IlpModel{lp, {0, 1, 2}, {}}, IlpOptions{1});
  CHECK(starved.status == SolveStatus::kBudgetExhausted);

  auto grouped = solve_ilp(IlpModel{lp, {0, 1, 2}, {{2}}});
  CHECK(grouped.status == SolveStatus::kOptimal);
  CHECK(grouped.objective == -1);
}

TEST_CASE("ILP rejects non-binary integral variables") {
  LinearProgram lp;
  lp.add_variable(0, 0, Rational(2));
  CHECK_THROWS_AS(solve_ilp(IlpModel{lp, {0}, {}}), InputError);
}

TEST_CASE("random 0/1 ILPs match exhaustive enumeration") {
  Rng rng(5);
  int feasible = 0;
  for (int trial = 0; trial < 250; ++trial) {
    LinearProgram lp;
    std::size_t n = 1 + rng.below(8);
    for (std::size_t j = 0; j < n; ++j) lp.add_binary(Rational(rng.range(-6, 6), rng.range(1, 3)));
    std::size_t m = 1 + rng.below(4);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::pair<std::size_t, Rational>> coeffs;
      for (std::size_t j = 0; j < n; ++j) {
        if (rng.coin()) coeffs.emplace_back(j, rng.range(-2, 3));
      }
      lp.add_row(coeffs, static_cast<Relation>(rng.below(3)), rng.range(-1, 3));
    }
    std::vector<std::size_t> ints(n);
    std::iota(ints.begin(), ints.end(), 0);
    auto out = solve_ilp(IlpModel{lp, ints, {}});
    std::optional<Rational> best;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
      std::vector<Rational> x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = (mask >> j & 1) ? 1 : 0;
      if (!lp.satisfied_by(x)) continue;
      Rational v = lp.evaluate(x);
      if (!best || v < *best) best = v;
    }
    if (!best) {
      CHECK(out.status == SolveStatus::kInfeasible);
      continue;
    }
    ++feasible;
    REQUIRE(out.status == SolveStatus::kOptimal);
    CHECK(out.objective == *best);
    CHECK(lp.satisfied_by(out.primal));
    for (const auto& v : out.primal) CHECK((v == 0 || v == 1));
  }
  CHECK(feasible > 100);
}

TEST_CASE("determinants and TU probe") {
  CHECK(determinant({{1, 1}, {-1, 1}}) == 2);
  CHECK(determinant({{0, 1}, {1, 0}}) == -1);
  CHECK(determinant({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}) == -3);
  CHECK_FALSE(tu_probe({{1, 1}, {-1, 1}}, 100, 2));
  // Node-edge incidence of the bipartite 4-cycle r0-c0-r1-c1-r0.
  Dense incidence = {{1, 0, 0, 1}, {0, 1, 1, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}};
  CHECK(tu_probe(incidence, 1000, 4));
  // Odd cycle incidence: not TU.
  Dense triangle = {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
  CHECK_FALSE(tu_probe(triangle, 1000, 3));
}
