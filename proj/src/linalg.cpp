#include "mgbound/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace mgbound {
namespace {

// Reduces rows in place to reduced row echelon form over the first `cols`
// columns; returns pivot columns.
std::vector<std::size_t> eliminate(RationalMatrix& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = c; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(RationalMatrix rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw std::invalid_argument("ragged matrix");
  return eliminate(rows, cols).size();
}

LinearSolution solve_linear(RationalMatrix a, RationalVector b, std::size_t unknowns) {
  if (a.size() != b.size()) throw std::invalid_argument("row count mismatch in solve_linear");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != unknowns) throw std::invalid_argument("column count mismatch in solve_linear");
    a[i].push_back(b[i]);
  }
  auto pivots = eliminate(a, unknowns);
  LinearSolution out;
  out.rank = pivots.size();
  for (std::size_t i = pivots.size(); i < a.size(); ++i)
    if (a[i][unknowns] != 0) return out;
  out.x.assign(unknowns, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) out.x[pivots[i]] = a[i][unknowns];
  out.kind = pivots.size() == unknowns ? SolutionKind::kUnique : SolutionKind::kMany;
  return out;
}

}  // namespace mgbound
