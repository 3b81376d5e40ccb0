#pragma once

#include <cstdint>
#include <vector>

#include "ddt/rational.hpp"

namespace ddt {

/// Exact determinant by Gaussian elimination over Q.
Rational determinant(std::vector<std::vector<Rational>> m);

/// Samples random square submatrices of order 1..max_order and checks each
/// determinant lies in {-1, 0, 1}. Returns false on the first violation.
/// A testing aid, not a decision procedure.
bool tu_probe(const std::vector<std::vector<Rational>>& matrix, int trials, int max_order,
              std::uint64_t seed = 1);

}  // namespace ddt
