#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gwprod/rational.hpp"

namespace gwprod::linalg {

class InconsistentSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Matrix = std::vector<std::vector<Rational>>;

/// Column (unknown) and row (equation) visiting orders for elimination.
/// Empty means natural order; otherwise each must be a permutation.
struct EliminationOrder {
  std::vector<std::size_t> unknowns;
  std::vector<std::size_t> equations;
};

/// Some exact solution of a x = b, found by fraction-free (Bareiss) row
/// reduction with first-nonzero pivoting in the given order; free unknowns
/// are set to zero. Throws InconsistentSystemError if no solution exists.
std::vector<Rational> solve(const Matrix& a, const std::vector<Rational>& b, const EliminationOrder& order = {});

std::size_t rank(const Matrix& a);

Matrix transpose(const Matrix& a);

}  // namespace gwprod::linalg
