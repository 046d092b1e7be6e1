#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mgbound/bounds.hpp"
#include "mgbound/process.hpp"
#include "mgbound/support.hpp"

namespace mgbound {

enum class RowSense { kEqual, kGreaterEqual, kLessEqual };

struct LpRow {
  std::string name;
  std::vector<std::pair<std::size_t, Rational>> terms;
  RowSense sense = RowSense::kEqual;
  Rational rhs = 0;
};

// Node of the support tree behind one LP variable (its measure).
struct LpNodeInfo {
  std::size_t parent = 0;  // meaningless for the root
  std::size_t depth = 0;   // 0 for the root
  Rational x;              // increment leading into the node
  Rational s;              // partial sum at the node
  std::vector<std::size_t> children;
};

// min sum_leaves |s_n| mu(leaf) over node measures mu >= 0 with mu(root) = 1,
// flow conservation, per-node conditional-mean rows for the process kind,
// and moment rows sum_{depth i} |x| mu = a_i.
struct LpProblem {
  std::size_t steps = 0;
  ProcessKind kind = ProcessKind::kMartingale;
  std::vector<LpNodeInfo> nodes;  // variable j <-> nodes[j]; 0 is the root
  RationalVector objective;
  std::vector<LpRow> rows;

  std::size_t variable_count() const { return nodes.size(); }
};

LpProblem build_problem(const SupportTree& support, const MomentVector& a, ProcessKind kind,
                        bool mg_from_zero = false);

// CPLEX LP text format; coefficients are printed as decimals.
void write_lp_format(std::ostream& out, const LpProblem& problem);

enum class SolveMode { kExact, kFloat };

struct SolveOptions {
  SolveMode mode = SolveMode::kExact;
  double pivot_tolerance = 1e-9;
  double residual_limit = 1e-6;
};

enum class LpStatus { kOptimal, kInfeasible };

std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  SolveMode mode = SolveMode::kExact;
  Rational value;     // exact optimum, or the float optimum converted exactly
  RationalVector measures;
  std::optional<ProcessLaw> witness;
  std::size_t iterations = 0;
  double max_residual = 0;
  bool unstable = false;
};

LpSolution solve(const LpProblem& problem, const SolveOptions& options = {});

// Conditional probabilities child / parent measure; zero-measure subtrees pruned.
ProcessLaw witness_from_measures(const LpProblem& problem, const RationalVector& measures);

LpSolution min_abs_sum(const SupportTree& support, const MomentVector& a, ProcessKind kind,
                       const SolveOptions& options = {}, bool mg_from_zero = false);

struct RefineReport {
  std::vector<LpSolution> solutions;
  Rational closed_form;  // eval_f_mg / eval_f_smg at the targets
  bool nested = true;
  bool monotone = true;
  bool dominates_bound = true;
  std::optional<Rational> final_gap;  // last feasible optimum minus closed form

  bool all_infeasible() const { return !final_gap.has_value(); }
};

RefineReport refine_and_converge(const MomentVector& a, ProcessKind kind, const std::vector<SupportTree>& schedule,
                                 const SolveOptions& options = {});

}  // namespace mgbound
