#include "ddt/matching.hpp"

#include <functional>

#include "ddt/errors.hpp"

namespace ddt {

MatchingResult min_weight_perfect_matching(const WeightMatrix& w) {
  const std::size_t n = w.size();
  for (const auto& row : w) {
    if (row.size() != n) throw InputError("matching weights must be square");
  }
  MatchingResult out;
  if (n == 0) {
    out.feasible = true;
    return out;
  }

  // 1-based Hungarian with row potentials u, column potentials v; p[j] is
  // the row matched to column j.
  std::vector<Rational> u(n + 1), v(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<std::optional<Rational>> minv(n + 1);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      std::size_t i0 = p[j0];
      std::optional<Rational> delta;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        if (w[i0 - 1][j - 1]) {
          Rational cur = *w[i0 - 1][j - 1] - u[i0] - v[j];
          if (!minv[j] || cur < *minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        if (minv[j] && (!delta || *minv[j] < *delta)) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (!delta) return out;  // no augmenting path avoids forbidden edges
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += *delta;
          v[j] -= *delta;
        } else if (minv[j]) {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  // Every optimal matching uses only tight edges (complementary slackness
  // against the final potentials). Fix rows in order to their smallest
  // column that still admits a tight perfect matching of the rest.
  std::vector<std::vector<bool>> tight(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      tight[i][j] = w[i][j] && (*w[i][j] - u[i + 1] - v[j + 1]).is_zero();
    }
  }
  std::vector<std::size_t> row_of(n), col_of(n);
  for (std::size_t j = 1; j <= n; ++j) {
    row_of[j - 1] = p[j] - 1;
    col_of[p[j] - 1] = j - 1;
  }
  std::vector<bool> locked(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < col_of[i]; ++j) {
      if (!tight[i][j] || locked[row_of[j]]) continue;
      // Free column col_of[i] for someone else: find an alternating path
      // from row_of[j] to column col_of[i] avoiding locked rows and row i.
      const std::size_t target = col_of[i];
      std::vector<bool> visited(n, false);
      std::vector<std::size_t> path_cols;
      std::function<bool(std::size_t)> dfs = [&](std::size_t r) -> bool {
        for (std::size_t c = 0; c < n; ++c) {
          if (!tight[r][c] || visited[c] || c == j) continue;
          std::size_t owner = row_of[c];
          if (c != target && (locked[owner] || owner == i)) continue;
          visited[c] = true;
          if (c == target || dfs(owner)) {
            path_cols.push_back(c);
            return true;
          }
        }
        return false;
      };
      std::size_t start = row_of[j];
      if (!dfs(start)) continue;
      // path_cols is in reverse order: last pushed is the column taken by
      // `start`. Re-match along the path, then give column j to row i.
      std::size_t r = start;
      for (auto it = path_cols.rbegin(); it != path_cols.rend(); ++it) {
        std::size_t c = *it;
        std::size_t next = row_of[c];
        row_of[c] = r;
        col_of[r] = c;
        r = next;
      }
      row_of[j] = i;
      col_of[i] = j;
      break;
    }
    locked[i] = true;
  }

  out.feasible = true;
  out.assignment = col_of;
  for (std::size_t i = 0; i < n; ++i) out.value += *w[i][col_of[i]];
  return out;
}

MatchingResult min_weight_perfect_matching(const std::vector<std::vector<Rational>>& weights) {
  WeightMatrix w(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    w[i].assign(weights[i].begin(), weights[i].end());
  }
  return min_weight_perfect_matching(w);
}

}  // namespace ddt
