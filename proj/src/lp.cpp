#include "mgbound/lp.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "mgbound/simplex.hpp"

namespace mgbound {
namespace {

void flatten(const std::vector<SupportNode>& children, std::size_t parent, LpProblem& problem) {
  for (const auto& child : children) {
    const std::size_t id = problem.nodes.size();
    const auto& p = problem.nodes[parent];
    problem.nodes.push_back({parent, p.depth + 1, child.x, p.s + child.x, {}});
    problem.nodes[parent].children.push_back(id);
    flatten(child.children, id, problem);
  }
}

template <class T>
T convert(const Rational& q);
template <>
Rational convert<Rational>(const Rational& q) { return q; }
template <>
double convert<double>(const Rational& q) { return q.get_d(); }

template <class T>
StandardFormLp<T> standard_form(const LpProblem& problem) {
  StandardFormLp<T> lp;
  std::size_t slack = problem.variable_count();
  for (const auto& row : problem.rows)
    if (row.sense != RowSense::kEqual) ++slack;
  lp.cols = slack;
  lp.cost.assign(lp.cols, T(0));
  for (std::size_t j = 0; j < problem.objective.size(); ++j) lp.cost[j] = convert<T>(problem.objective[j]);
  slack = problem.variable_count();
  for (const auto& row : problem.rows) {
    std::vector<std::pair<std::size_t, T>> terms;
    for (const auto& [j, v] : row.terms) terms.emplace_back(j, convert<T>(v));
    if (row.sense == RowSense::kGreaterEqual) terms.emplace_back(slack++, T(-1));
    if (row.sense == RowSense::kLessEqual) terms.emplace_back(slack++, T(1));
    lp.rows.push_back(std::move(terms));
    lp.rhs.push_back(convert<T>(row.rhs));
  }
  return lp;
}

double residual(const LpProblem& problem, const RationalVector& mu) {
  double worst = 0;
  for (const auto& row : problem.rows) {
    Rational lhs = 0;
    for (const auto& [j, v] : row.terms) lhs += v * mu[j];
    Rational gap = lhs - row.rhs;
    double violation = 0;
    switch (row.sense) {
      case RowSense::kEqual: violation = std::abs(gap.get_d()); break;
      case RowSense::kGreaterEqual: violation = gap < 0 ? -gap.get_d() : 0; break;
      case RowSense::kLessEqual: violation = gap > 0 ? gap.get_d() : 0; break;
    }
    worst = std::max(worst, violation);
  }
  for (const auto& v : mu) worst = std::max(worst, v < 0 ? -v.get_d() : 0.0);
  return worst;
}

std::vector<LawNode> law_nodes(const LpProblem& problem, const RationalVector& mu, std::size_t v) {
  std::vector<LawNode> out;
  for (std::size_t c : problem.nodes[v].children) {
    if (mu[c] <= 0) continue;
    out.push_back({problem.nodes[c].x, mu[c] / mu[v], law_nodes(problem, mu, c)});
  }
  return out;
}

std::string decimal(const Rational& q) {
  std::ostringstream os;
  os << std::setprecision(17) << q.get_d();
  return os.str();
}

void write_terms(std::ostream& out, const std::vector<std::pair<std::size_t, Rational>>& terms) {
  bool first = true;
  for (const auto& [j, v] : terms) {
    if (v == 0) continue;
    out << (v < 0 ? " - " : first ? " " : " + ") << decimal(abs(v)) << " m" << j;
    first = false;
  }
  if (first) out << " 0 m0";
}

}  // namespace

LpProblem build_problem(const SupportTree& support, const MomentVector& a, ProcessKind kind, bool mg_from_zero) {
  if (support.steps() != a.size())
    throw std::invalid_argument("support depth " + std::to_string(support.steps()) + " does not match " +
                                std::to_string(a.size()) + " moment targets");
  LpProblem problem;
  problem.steps = support.steps();
  problem.kind = kind;
  problem.nodes.push_back({0, 0, Rational(0), Rational(0), {}});
  flatten(support.top(), 0, problem);

  const std::size_t count = problem.nodes.size();
  problem.objective.assign(count, 0);
  problem.rows.push_back({"root", {{0, Rational(1)}}, RowSense::kEqual, 1});
  for (std::size_t v = 0; v < count; ++v) {
    const auto& node = problem.nodes[v];
    if (node.depth == problem.steps) {
      problem.objective[v] = abs(node.s);
      continue;
    }
    LpRow flow{"flow_" + std::to_string(v), {{v, Rational(1)}}, RowSense::kEqual, 0};
    for (std::size_t c : node.children) flow.terms.emplace_back(c, Rational(-1));
    problem.rows.push_back(std::move(flow));

    const std::size_t step = node.depth + 1;
    std::optional<RowSense> sense;
    switch (kind) {
      case ProcessKind::kMartingale:
        if (step >= 2 || mg_from_zero) sense = RowSense::kEqual;
        break;
      case ProcessKind::kSubmartingale: sense = RowSense::kGreaterEqual; break;
      case ProcessKind::kSupermartingale: sense = RowSense::kLessEqual; break;
      case ProcessKind::kUnconstrained: break;
    }
    if (!sense) continue;
    LpRow mean{"mean_" + std::to_string(v), {}, *sense, 0};
    for (std::size_t c : node.children)
      if (problem.nodes[c].x != 0) mean.terms.emplace_back(c, problem.nodes[c].x);
    if (!mean.terms.empty()) problem.rows.push_back(std::move(mean));
  }
  for (std::size_t i = 1; i <= problem.steps; ++i) {
    LpRow moment{"moment_" + std::to_string(i), {}, RowSense::kEqual, a[i - 1]};
    for (std::size_t v = 0; v < count; ++v)
      if (problem.nodes[v].depth == i && problem.nodes[v].x != 0)
        moment.terms.emplace_back(v, abs(problem.nodes[v].x));
    problem.rows.push_back(std::move(moment));
  }
  return problem;
}

void write_lp_format(std::ostream& out, const LpProblem& problem) {
  std::vector<std::pair<std::size_t, Rational>> obj;
  for (std::size_t j = 0; j < problem.objective.size(); ++j)
    if (problem.objective[j] != 0) obj.emplace_back(j, problem.objective[j]);
  out << "\\ min E|S_n| over adapted laws on a fixed support, kind " << to_string(problem.kind) << "\n";
  out << "Minimize\n obj:";
  write_terms(out, obj);
  out << "\nSubject To\n";
  for (const auto& row : problem.rows) {
    out << " " << row.name << ":";
    write_terms(out, row.terms);
    const char* op = row.sense == RowSense::kEqual ? " = " : row.sense == RowSense::kGreaterEqual ? " >= " : " <= ";
    out << op << decimal(row.rhs) << "\n";
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < problem.variable_count(); ++j) out << " m" << j << " >= 0\n";
  out << "End\n";
}

std::string to_string(LpStatus status) { return status == LpStatus::kOptimal ? "optimal" : "infeasible"; }

LpSolution solve(const LpProblem& problem, const SolveOptions& options) {
  LpSolution solution;
  solution.mode = options.mode;
  const std::size_t count = problem.variable_count();
  if (options.mode == SolveMode::kExact) {
    DenseSimplex<Rational> simplex;
    auto result = simplex.solve(standard_form<Rational>(problem));
    solution.iterations = result.iterations;
    if (result.status != SimplexStatus::kOptimal) return solution;
    solution.measures.assign(result.x.begin(), result.x.begin() + static_cast<std::ptrdiff_t>(count));
  } else {
    DenseSimplex<double> simplex(options.pivot_tolerance);
    auto result = simplex.solve(standard_form<double>(problem));
    solution.iterations = result.iterations;
    if (result.status != SimplexStatus::kOptimal) return solution;
    solution.measures.reserve(count);
    for (std::size_t j = 0; j < count; ++j) solution.measures.emplace_back(std::max(result.x[j], 0.0));
  }
  solution.status = LpStatus::kOptimal;
  solution.value = 0;
  for (std::size_t j = 0; j < count; ++j)
    if (problem.objective[j] != 0) solution.value += problem.objective[j] * solution.measures[j];
  solution.max_residual = residual(problem, solution.measures);
  solution.unstable = solution.max_residual > options.residual_limit;
  if (solution.measures[0] > 0) solution.witness = witness_from_measures(problem, solution.measures);
  return solution;
}

ProcessLaw witness_from_measures(const LpProblem& problem, const RationalVector& measures) {
  if (measures.size() != problem.variable_count() || measures[0] <= 0)
    throw std::invalid_argument("measures do not describe a law on this problem's support");
  return ProcessLaw(problem.steps, law_nodes(problem, measures, 0));
}

LpSolution min_abs_sum(const SupportTree& support, const MomentVector& a, ProcessKind kind,
                       const SolveOptions& options, bool mg_from_zero) {
  return solve(build_problem(support, a, kind, mg_from_zero), options);
}

RefineReport refine_and_converge(const MomentVector& a, ProcessKind kind, const std::vector<SupportTree>& schedule,
                                 const SolveOptions& options) {
  RefineReport report;
  switch (kind) {
    case ProcessKind::kMartingale: report.closed_form = eval_f_mg(a).value; break;
    case ProcessKind::kSubmartingale:
    case ProcessKind::kSupermartingale: report.closed_form = eval_f_smg(a).value; break;
    case ProcessKind::kUnconstrained: report.closed_form = *eval_f_none(1, a).exact; break;
  }
  std::optional<Rational> previous;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (k > 0 && !schedule[k].contains(schedule[k - 1])) report.nested = false;
    auto solution = min_abs_sum(schedule[k], a, kind, options);
    if (solution.status == LpStatus::kOptimal) {
      // Float optima are only trusted up to the residual limit.
      Rational tol = options.mode == SolveMode::kFloat ? Rational(options.residual_limit) : Rational(0);
      if (previous && solution.value > *previous + tol) report.monotone = false;
      if (solution.value < report.closed_form - tol) report.dominates_bound = false;
      previous = solution.value;
      report.final_gap = solution.value - report.closed_form;
    } else if (previous) {
      report.monotone = false;  // a superset support cannot lose feasibility
    }
    report.solutions.push_back(std::move(solution));
  }
  return report;
}

}  // namespace mgbound
