#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ddt/rational.hpp"

namespace ddt {

enum class Relation { kLe, kEq, kGe };

const char* to_string(Relation r);
/// Accepts "<=", "=", ">=" (also "le", "eq", "ge").
Relation parse_relation(const std::string& text);

/// min c.x subject to rows and lower <= x <= upper. Lower bounds must be
/// finite; a missing upper bound means +infinity.
struct LinearProgram {
  struct Row {
    std::vector<std::pair<std::size_t, Rational>> coeffs;
    Relation relation = Relation::kEq;
    Rational rhs;
  };

  std::vector<Rational> objective;
  std::vector<Rational> lower;
  std::vector<std::optional<Rational>> upper;
  std::vector<Row> rows;

  std::size_t num_vars() const { return objective.size(); }
  std::size_t add_variable(Rational cost, Rational lo, std::optional<Rational> hi);
  std::size_t add_binary(Rational cost) { return add_variable(std::move(cost), 0, Rational(1)); }
  void add_row(std::vector<std::pair<std::size_t, Rational>> coeffs, Relation rel, Rational rhs);

  /// Throws InputError when shapes disagree or some lower > upper.
  void validate() const;
  /// Exact feasibility check of a point.
  bool satisfied_by(const std::vector<Rational>& x) const;
  Rational evaluate(const std::vector<Rational>& x) const;
};

struct IlpModel {
  LinearProgram base;
  /// Indices of variables required to be 0/1.
  std::vector<std::size_t> integral;
  /// Optional branching blocks: a fractional variable of the first block
  /// (in order) that has one is branched on before any other.
  std::vector<std::vector<std::size_t>> branch_groups;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kBudgetExhausted };

const char* to_string(SolveStatus s);

struct SolveOutcome {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<Rational> primal;
  Rational objective;
  /// Basic structural variables of the final LP (solve_lp only).
  std::vector<std::size_t> basis;
  std::int64_t pivots = 0;
  std::int64_t nodes = 0;
};

/// Bounded-variable primal simplex in exact arithmetic with Bland's rule.
/// Returns a vertex of the feasible region when optimal.
SolveOutcome solve_lp(const LinearProgram& lp);

struct IlpOptions {
  std::int64_t node_budget = 1'000'000;
};

/// Depth-first branch-and-bound over the LP relaxation. Branches on the
/// most fractional integral variable (closest to 1/2, ties by lowest index).
SolveOutcome solve_ilp(const IlpModel& model, const IlpOptions& options = {});

}  // namespace ddt
