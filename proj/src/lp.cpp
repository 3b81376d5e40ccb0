#include "ddt/lp.hpp"

#include <algorithm>

#include "ddt/errors.hpp"

namespace ddt {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::kLe:
      return "<=";
    case Relation::kEq:
      return "=";
    case Relation::kGe:
      return ">=";
  }
  return "?";
}

Relation parse_relation(const std::string& text) {
  if (text == "<=" || text == "le") return Relation::kLe;
  if (text == "=" || text == "==" || text == "eq") return Relation::kEq;
  if (text == ">=" || text == "ge") return Relation::kGe;
  throw InputError("unknown relation '" + text + "'");
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
    case SolveStatus::kBudgetExhausted:
      return "budget-exhausted";
  }
  return "?";
}

std::size_t LinearProgram::add_variable(Rational cost, Rational lo, std::optional<Rational> hi) {
  objective.push_back(std::move(cost));
  lower.push_back(std::move(lo));
  upper.push_back(std::move(hi));
  return objective.size() - 1;
}

void LinearProgram::add_row(std::vector<std::pair<std::size_t, Rational>> coeffs, Relation rel,
                            Rational rhs) {
  rows.push_back(Row{std::move(coeffs), rel, std::move(rhs)});
}

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  if (lower.size() != n || upper.size() != n) throw InputError("LP bound vectors mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    if (upper[j] && *upper[j] < lower[j]) {
      throw InputError("LP variable " + std::to_string(j) + " has lower > upper");
    }
  }
  for (const auto& row : rows) {
    for (const auto& [j, _] : row.coeffs) {
      if (j >= n) throw InputError("LP row references unknown variable");
    }
  }
}

bool LinearProgram::satisfied_by(const std::vector<Rational>& x) const {
  if (x.size() != num_vars()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < lower[j]) return false;
    if (upper[j] && x[j] > *upper[j]) return false;
  }
  for (const auto& row : rows) {
    Rational s;
    for (const auto& [j, a] : row.coeffs) s += a * x[j];
    switch (row.relation) {
      case Relation::kLe:
        if (s > row.rhs) return false;
        break;
      case Relation::kEq:
        if (s != row.rhs) return false;
        break;
      case Relation::kGe:
        if (s < row.rhs) return false;
        break;
    }
  }
  return true;
}

Rational LinearProgram::evaluate(const std::vector<Rational>& x) const {
  Rational s;
  for (std::size_t j = 0; j < objective.size(); ++j) {
    if (!objective[j].is_zero()) s += objective[j] * x[j];
  }
  return s;
}

namespace {

class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp) : lp_(lp) {}

  SolveOutcome run() {
    lp_.validate();
    build();
    SolveOutcome out;
    if (!artificials_.empty()) {
      std::vector<Rational> phase1(cols_, Rational(0));
      for (std::size_t a : artificials_) phase1[a] = 1;
      if (!optimize(phase1)) {
        out.status = SolveStatus::kUnbounded;  // cannot happen in phase 1
        return out;
      }
      for (std::size_t a : artificials_) {
        if (!value_[a].is_zero()) {
          out.status = SolveStatus::kInfeasible;
          out.pivots = pivots_;
          return out;
        }
        upper_[a] = Rational(0);
      }
    }
    std::vector<Rational> cost(cols_, Rational(0));
    for (std::size_t j = 0; j < lp_.num_vars(); ++j) cost[j] = lp_.objective[j];
    if (!optimize(cost)) {
      out.status = SolveStatus::kUnbounded;
      out.pivots = pivots_;
      return out;
    }
    out.status = SolveStatus::kOptimal;
    out.primal.assign(value_.begin(), value_.begin() + static_cast<long>(lp_.num_vars()));
    out.objective = lp_.evaluate(out.primal);
    for (std::size_t j : basis_) {
      if (j < lp_.num_vars()) out.basis.push_back(j);
    }
    std::sort(out.basis.begin(), out.basis.end());
    out.pivots = pivots_;
    return out;
  }

 private:
  void build() {
    const std::size_t n = lp_.num_vars();
    rows_ = lp_.rows.size();
    std::size_t slacks = 0;
    for (const auto& row : lp_.rows) slacks += row.relation == Relation::kEq ? 0 : 1;
    // Columns: structurals, slacks, then artificials appended as needed.
    cols_ = n + slacks;
    lower_.assign(lp_.lower.begin(), lp_.lower.end());
    upper_.assign(lp_.upper.begin(), lp_.upper.end());
    lower_.resize(cols_, Rational(0));
    upper_.resize(cols_, std::nullopt);
    value_.assign(lower_.begin(), lower_.end());

    tableau_.assign(rows_, {});
    std::vector<Rational> residual(rows_);
    std::vector<std::size_t> slack_of(rows_, cols_);
    std::size_t next_slack = n;
    for (std::size_t i = 0; i < rows_; ++i) {
      const auto& row = lp_.rows[i];
      auto& t = tableau_[i];
      t.assign(cols_, Rational(0));
      for (const auto& [j, a] : row.coeffs) t[j] += a;
      if (row.relation != Relation::kEq) {
        slack_of[i] = next_slack;
        t[next_slack++] = row.relation == Relation::kLe ? 1 : -1;
      }
      Rational r = row.rhs;
      for (std::size_t j = 0; j < n; ++j) {
        if (!t[j].is_zero() && !value_[j].is_zero()) r -= t[j] * value_[j];
      }
      residual[i] = r;
    }

    basis_.assign(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::size_t s = slack_of[i];
      if (s != cols_) {
        const Rational& coef = tableau_[i][s];
        // Slack can start basic when its implied value is nonnegative.
        if ((coef.sign() > 0 && residual[i].sign() >= 0) ||
            (coef.sign() < 0 && residual[i].sign() <= 0)) {
          if (coef.sign() < 0) negate_row(i);
          basis_[i] = s;
          value_[s] = residual[i].abs();
          continue;
        }
      }
      std::size_t a = cols_++;
      for (auto& t : tableau_) t.emplace_back(0);
      lower_.emplace_back(0);
      upper_.emplace_back(std::nullopt);
      value_.push_back(residual[i].abs());
      if (residual[i].sign() < 0) negate_row(i);
      tableau_[i][a] = 1;
      basis_[i] = a;
      artificials_.push_back(a);
    }
    in_basis_.assign(cols_, false);
    for (std::size_t b : basis_) in_basis_[b] = true;
    at_upper_.assign(cols_, false);
  }

  void negate_row(std::size_t i) {
    for (auto& v : tableau_[i]) {
      if (!v.is_zero()) v = -v;
    }
  }

  bool fixed(std::size_t j) const { return upper_[j] && *upper_[j] == lower_[j]; }

  // Returns false when unbounded.
  bool optimize(const std::vector<Rational>& cost) {
    std::vector<Rational> d(cost);
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!tableau_[i][j].is_zero()) d[j] -= cb * tableau_[i][j];
      }
    }
    while (true) {
      std::size_t q = cols_;
      int dir = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (in_basis_[j] || fixed(j)) continue;
        int s = d[j].sign();
        if (s < 0 && !at_upper_[j]) {
          q = j;
          dir = 1;
          break;
        }
        if (s > 0 && at_upper_[j]) {
          q = j;
          dir = -1;
          break;
        }
      }
      if (q == cols_) return true;

      std::optional<Rational> best;
      std::size_t leave_row = rows_;
      bool leave_to_upper = false;
      for (std::size_t i = 0; i < rows_; ++i) {
        const Rational& a = tableau_[i][q];
        if (a.is_zero()) continue;
        std::size_t b = basis_[i];
        // x_b changes by -dir * a per unit step of the entering variable.
        int change = -dir * a.sign();
        std::optional<Rational> limit;
        if (change < 0) {
          limit = (value_[b] - lower_[b]) / a.abs();
        } else if (upper_[b]) {
          limit = (*upper_[b] - value_[b]) / a.abs();
        }
        if (!limit) continue;
        if (!best || *limit < *best || (*limit == *best && b < basis_[leave_row])) {
          best = *limit;
          leave_row = i;
          leave_to_upper = change > 0;
        }
      }
      bool flip = false;
      if (upper_[q]) {
        Rational span = *upper_[q] - lower_[q];
        if (!best || span <= *best) {
          best = span;
          flip = true;
        }
      }
      if (!best) return false;

      const Rational theta = *best;
      if (!theta.is_zero()) {
        Rational step = dir > 0 ? theta : -theta;
        value_[q] += step;
        for (std::size_t i = 0; i < rows_; ++i) {
          const Rational& a = tableau_[i][q];
          if (!a.is_zero()) value_[basis_[i]] -= a * step;
        }
      }
      if (flip) {
        at_upper_[q] = !at_upper_[q];
        value_[q] = at_upper_[q] ? *upper_[q] : lower_[q];
        continue;
      }
      std::size_t leaving = basis_[leave_row];
      value_[leaving] = leave_to_upper ? *upper_[leaving] : lower_[leaving];
      at_upper_[leaving] = leave_to_upper;
      pivot(leave_row, q, d);
      in_basis_[leaving] = false;
      in_basis_[q] = true;
      at_upper_[q] = false;
      basis_[leave_row] = q;
    }
  }

  void pivot(std::size_t r, std::size_t q, std::vector<Rational>& d) {
    ++pivots_;
    auto& prow = tableau_[r];
    Rational inv = prow[q].reciprocal();
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (prow[j].is_zero()) continue;
      if (j != q) prow[j] *= inv;
      nz.push_back(j);
    }
    prow[q] = 1;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || tableau_[i][q].is_zero()) continue;
      Rational f = tableau_[i][q];
      auto& row = tableau_[i];
      for (std::size_t j : nz) row[j] -= f * prow[j];
    }
    if (!d[q].is_zero()) {
      Rational f = d[q];
      for (std::size_t j : nz) d[j] -= f * prow[j];
    }
  }

  const LinearProgram& lp_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Rational>> tableau_;
  std::vector<Rational> lower_;
  std::vector<std::optional<Rational>> upper_;
  std::vector<Rational> value_;
  std::vector<std::size_t> basis_;
  std::vector<bool> in_basis_;
  std::vector<bool> at_upper_;
  std::vector<std::size_t> artificials_;
  std::int64_t pivots_ = 0;
};

// Distance of a value in [0,1] from 1/2, doubled: |2x - 1|.
Rational centrality(const Rational& x) { return (Rational(2) * x - 1).abs(); }

}  // namespace

SolveOutcome solve_lp(const LinearProgram& lp) { return Simplex(lp).run(); }

SolveOutcome solve_ilp(const IlpModel& model, const IlpOptions& options) {
  model.base.validate();
  for (std::size_t j : model.integral) {
    if (j >= model.base.num_vars()) throw InputError("integral index out of range");
    if (model.base.lower[j] < Rational(0) || !model.base.upper[j] ||
        *model.base.upper[j] > Rational(1)) {
      throw InputError("integral variable " + std::to_string(j) + " is not binary-bounded");
    }
  }

  struct Node {
    std::vector<std::pair<std::size_t, int>> fixes;
  };
  std::vector<Node> stack{Node{}};
  SolveOutcome best;
  best.status = SolveStatus::kInfeasible;
  bool have_incumbent = false;
  std::int64_t nodes = 0;
  std::int64_t pivots = 0;
  LinearProgram lp = model.base;

  while (!stack.empty()) {
    if (nodes >= options.node_budget) {
      best.status = SolveStatus::kBudgetExhausted;
      best.nodes = nodes;
      best.pivots = pivots;
      return best;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    ++nodes;
    lp.lower = model.base.lower;
    lp.upper = model.base.upper;
    bool empty_box = false;
    for (const auto& [j, v] : node.fixes) {
      if (Rational(v) < model.base.lower[j] || Rational(v) > *model.base.upper[j]) {
        empty_box = true;
      }
      lp.lower[j] = v;
      lp.upper[j] = Rational(v);
    }
    if (empty_box) continue;
    SolveOutcome relax = solve_lp(lp);
    pivots += relax.pivots;
    if (relax.status == SolveStatus::kInfeasible) continue;
    if (relax.status == SolveStatus::kUnbounded) {
      relax.nodes = nodes;
      relax.pivots = pivots;
      return relax;
    }
    if (have_incumbent && relax.objective >= best.objective) continue;

    auto pick = [&](const std::vector<std::size_t>& vars) {
      std::size_t chosen = model.base.num_vars();
      Rational chosen_c;
      for (std::size_t j : vars) {
        if (relax.primal[j].is_integer()) continue;
        Rational c = centrality(relax.primal[j]);
        if (chosen == model.base.num_vars() || c < chosen_c || (c == chosen_c && j < chosen)) {
          chosen = j;
          chosen_c = c;
        }
      }
      return chosen;
    };
    std::size_t var = model.base.num_vars();
    for (const auto& group : model.branch_groups) {
      var = pick(group);
      if (var != model.base.num_vars()) break;
    }
    if (var == model.base.num_vars()) var = pick(model.integral);
    if (var == model.base.num_vars()) {
      best = std::move(relax);
      have_incumbent = true;
      continue;
    }
    int first = relax.primal[var] >= Rational(1, 2) ? 1 : 0;
    Node second_child{node.fixes};
    second_child.fixes.emplace_back(var, 1 - first);
    Node first_child{std::move(node.fixes)};
    first_child.fixes.emplace_back(var, first);
    stack.push_back(std::move(second_child));
    stack.push_back(std::move(first_child));
  }
  best.nodes = nodes;
  best.pivots = pivots;
  if (!have_incumbent) best.status = SolveStatus::kInfeasible;
  best.basis.clear();
  return best;
}

}  // namespace ddt
