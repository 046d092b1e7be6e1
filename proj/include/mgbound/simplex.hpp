#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace mgbound {

enum class SimplexStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

template <class T>
struct StandardFormLp {
  // minimize cost . x  subject to  matrix x = rhs,  x >= 0
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::size_t, T>>> rows;  // sparse rows
  std::vector<T> rhs;
  std::vector<T> cost;
};

template <class T>
struct SimplexResult {
  SimplexStatus status = SimplexStatus::kInfeasible;
  std::vector<T> x;
  T objective{};
  std::size_t iterations = 0;
};

// Two-phase primal simplex on a dense tableau with Bland's rule. `eps` is 0
// for exact scalars; for floating point it is the pivot tolerance.
template <class T>
class DenseSimplex {
 public:
  explicit DenseSimplex(T eps = T(0), std::size_t max_iterations = 1000000)
      : eps_(std::move(eps)), max_iterations_(max_iterations) {}

  SimplexResult<T> solve(const StandardFormLp<T>& lp) {
    SimplexResult<T> result;
    load(lp);
    // Phase one: minimize the sum of artificial columns.
    std::vector<T> phase_one(total_cols_, T(0));
    for (std::size_t j = lp.cols; j < total_cols_; ++j) phase_one[j] = T(1);
    set_objective(phase_one);
    auto status = iterate(result.iterations, /*allow_artificial=*/false);
    if (status == SimplexStatus::kIterationLimit) {
      result.status = status;
      return result;
    }
    if (is_pos(-obj_value_)) {  // obj_value_ holds -objective
      result.status = SimplexStatus::kInfeasible;
      return result;
    }
    drive_out_artificials(lp.cols);
    std::vector<T> phase_two(total_cols_, T(0));
    for (std::size_t j = 0; j < lp.cols; ++j) phase_two[j] = lp.cost[j];
    set_objective(phase_two);
    status = iterate(result.iterations, false);
    result.status = status;
    if (status != SimplexStatus::kOptimal) return result;
    result.x.assign(lp.cols, T(0));
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] < lp.cols) result.x[basis_[i]] = tab_[i][total_cols_];
    result.objective = T(0);
    for (std::size_t j = 0; j < lp.cols; ++j)
      if (!is_zero(lp.cost[j]) && !is_zero(result.x[j])) result.objective += lp.cost[j] * result.x[j];
    return result;
  }

 private:
  bool is_pos(const T& v) const { return v > eps_; }
  bool is_neg(const T& v) const { return v < -eps_; }
  bool is_zero(const T& v) const { return !is_pos(v) && !is_neg(v); }

  void load(const StandardFormLp<T>& lp) {
    const std::size_t m = lp.rows.size();
    structural_cols_ = lp.cols;
    total_cols_ = lp.cols + m;
    tab_.assign(m, std::vector<T>(total_cols_ + 1, T(0)));
    basis_.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      const bool flip = lp.rhs[i] < T(0);
      for (const auto& [j, v] : lp.rows[i]) tab_[i][j] += flip ? T(-v) : v;
      tab_[i][total_cols_] = flip ? T(-lp.rhs[i]) : lp.rhs[i];
      tab_[i][lp.cols + i] = T(1);
      basis_[i] = lp.cols + i;
    }
  }

  // Reduced costs d_j = c_j - c_B B^-1 A_j, stored with -objective value.
  void set_objective(const std::vector<T>& cost) {
    cost_ = cost;
    obj_.assign(total_cols_, T(0));
    for (std::size_t j = 0; j < total_cols_; ++j) obj_[j] = cost[j];
    obj_value_ = T(0);
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      const T& cb = cost[basis_[i]];
      if (is_zero(cb)) continue;
      for (std::size_t j = 0; j < total_cols_; ++j)
        if (!is_zero(tab_[i][j])) obj_[j] -= cb * tab_[i][j];
      obj_value_ -= cb * tab_[i][total_cols_];
    }
  }

  SimplexStatus iterate(std::size_t& iterations, bool allow_artificial) {
    const std::size_t limit = allow_artificial ? total_cols_ : structural_cols_;
    while (true) {
      if (iterations >= max_iterations_) return SimplexStatus::kIterationLimit;
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j)
        if (is_neg(obj_[j])) {
          enter = j;
          break;
        }
      if (enter == limit) return SimplexStatus::kOptimal;
      std::size_t leave = tab_.size();
      T best_ratio{};
      for (std::size_t i = 0; i < tab_.size(); ++i) {
        if (!is_pos(tab_[i][enter])) continue;
        T ratio = tab_[i][total_cols_] / tab_[i][enter];
        if (leave == tab_.size() || ratio < best_ratio ||
            (!(best_ratio < ratio) && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == tab_.size()) return SimplexStatus::kUnbounded;
      pivot(leave, enter);
      ++iterations;
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    auto& prow = tab_[r];
    const T inv = T(1) / prow[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= total_cols_; ++j)
      if (!is_zero(prow[j])) {
        prow[j] *= inv;
        nz.push_back(j);
      } else {
        prow[j] = T(0);
      }
    prow[c] = T(1);
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      if (i == r || is_zero(tab_[i][c])) continue;
      const T factor = tab_[i][c];
      for (std::size_t j : nz) tab_[i][j] -= factor * prow[j];
      tab_[i][c] = T(0);
    }
    if (!is_zero(obj_[c])) {
      const T factor = obj_[c];
      for (std::size_t j : nz) {
        if (j == total_cols_) obj_value_ -= factor * prow[j];
        else obj_[j] -= factor * prow[j];
      }
      obj_[c] = T(0);
    }
    basis_[r] = c;
  }

  // Pivots zero-level artificial columns out of the basis; rows where that is
  // impossible are redundant and get removed.
  void drive_out_artificials(std::size_t cols) {
    for (std::size_t i = 0; i < tab_.size();) {
      if (basis_[i] < cols) {
        ++i;
        continue;
      }
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j)
        if (!is_zero(tab_[i][j])) {
          enter = j;
          break;
        }
      if (enter < cols) {
        pivot(i, enter);
        ++i;
      } else {
        tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  T eps_;
  std::size_t max_iterations_;
  std::size_t structural_cols_ = 0;
  std::size_t total_cols_ = 0;
  std::vector<std::vector<T>> tab_;
  std::vector<std::size_t> basis_;
  std::vector<T> cost_;
  std::vector<T> obj_;
  T obj_value_{};
};

}  // namespace mgbound
