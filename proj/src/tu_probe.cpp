#include "ddt/tu_probe.hpp"

#include <algorithm>

#include "ddt/rng.hpp"

namespace ddt {

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Rational inv = m[c][c].reciprocal();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      Rational f = m[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

namespace {

std::vector<std::size_t> sample(Rng& rng, std::vector<std::size_t> pool, std::size_t k) {
  rng.shuffle(pool);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

bool tu_probe(const std::vector<std::vector<Rational>>& matrix, int trials, int max_order,
              std::uint64_t seed) {
  const std::size_t rows = matrix.size();
  if (rows == 0) return true;
  const std::size_t cols = matrix[0].size();
  for (const auto& row : matrix) {
    for (const auto& v : row) {
      if (v.abs() > Rational(1)) return false;
    }
  }
  const std::size_t top = std::min({static_cast<std::size_t>(std::max(max_order, 1)), rows, cols});
  Rng rng(seed);
  std::vector<std::size_t> all_rows(rows), all_cols(cols);
  for (std::size_t i = 0; i < rows; ++i) all_rows[i] = i;
  for (std::size_t j = 0; j < cols; ++j) all_cols[j] = j;
  for (int t = 0; t < trials; ++t) {
    std::size_t k = 1 + rng.below(top);
    auto rs = sample(rng, all_rows, k);
    // Prefer columns the chosen rows actually touch; random columns mostly
    // give zero determinants.
    std::vector<std::size_t> touched;
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t r : rs) {
        if (!matrix[r][j].is_zero()) {
          touched.push_back(j);
          break;
        }
      }
    }
    auto cs = touched.size() >= k ? sample(rng, touched, k) : sample(rng, all_cols, k);
    std::vector<std::vector<Rational>> sub(k, std::vector<Rational>(k));
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) sub[a][b] = matrix[rs[a]][cs[b]];
    }
    if (determinant(std::move(sub)).abs() > Rational(1)) return false;
  }
  return true;
}

}  // namespace ddt
