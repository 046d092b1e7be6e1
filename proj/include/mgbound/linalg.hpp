#pragma once

#include <vector>

#include "mgbound/rational.hpp"

namespace mgbound {

using RationalMatrix = std::vector<RationalVector>;

// Rank by fraction-exact Gaussian elimination.
std::size_t rank(RationalMatrix rows);

enum class SolutionKind { kUnique, kNone, kMany };

struct LinearSolution {
  SolutionKind kind = SolutionKind::kNone;
  RationalVector x;  // unique solution, or one particular solution for kMany
  std::size_t rank = 0;
};

// Solves A x = b for A with `unknowns` columns.
LinearSolution solve_linear(RationalMatrix a, RationalVector b, std::size_t unknowns);

}  // namespace mgbound
