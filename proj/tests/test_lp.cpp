#include <doctest.h>

#include <random>
#include <sstream>

#include "mgbound/lp.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace mgbound;
using namespace testing;

namespace {

// Every node gets the same children values.
std::vector<SupportNode> uniform_nodes(std::size_t depth, const RationalVector& values) {
  std::vector<SupportNode> out;
  if (depth == 0) return out;
  for (const auto& v : values) out.push_back({v, uniform_nodes(depth - 1, values)});
  return out;
}

SupportTree uniform(std::size_t n, const RationalVector& values) { return SupportTree(n, uniform_nodes(n, values)); }

void check_witness(const LpSolution& s, const MomentVector& a, ProcessKind kind, bool from_zero = false) {
  REQUIRE(s.status == LpStatus::kOptimal);
  REQUIRE(s.witness.has_value());
  CHECK(validate(*s.witness, kind, from_zero).ok());
  auto m = moments(*s.witness);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(m.ex_abs_x[i] == a[i]);
  CHECK(m.objective == s.value);
}

Rational closed_form(const MomentVector& a, ProcessKind kind) {
  return kind == ProcessKind::kMartingale ? eval_f_mg(a).value : eval_f_smg(a).value;
}

const std::vector<Rational> kPs{q("1/4"), q("1/16"), q("1/64")};

}  // namespace

TEST_CASE("build_problem: single fair step") {
  auto problem = build_problem(uniform(1, {q("-1"), q("1")}), mv({"1"}), ProcessKind::kMartingale, true);
  CHECK(problem.variable_count() == 3);
  auto s = solve(problem);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.value == 1);
  check_witness(s, mv({"1"}), ProcessKind::kMartingale, true);
}

TEST_CASE("build_problem: row layout") {
  auto problem = build_problem(uniform(2, {q("-1"), q("1")}), mv({"1", "1"}), ProcessKind::kMartingale);
  CHECK(problem.variable_count() == 7);
  std::size_t flow = 0, mean = 0, moment = 0;
  for (const auto& row : problem.rows) {
    if (row.name.rfind("flow_", 0) == 0) ++flow;
    if (row.name.rfind("mean_", 0) == 0) ++mean;
    if (row.name.rfind("moment_", 0) == 0) ++moment;
  }
  CHECK(flow == 3);
  CHECK(mean == 2);  // only the two depth-1 nodes carry a martingale row
  CHECK(moment == 2);
  auto sub = build_problem(uniform(2, {q("-1"), q("1")}), mv({"1", "1"}), ProcessKind::kSubmartingale);
  std::size_t sub_mean = 0;
  for (const auto& row : sub.rows)
    if (row.name.rfind("mean_", 0) == 0) {
      ++sub_mean;
      CHECK(row.sense == RowSense::kGreaterEqual);
    }
  CHECK(sub_mean == 3);
  auto none = build_problem(uniform(2, {q("-1"), q("1")}), mv({"1", "1"}), ProcessKind::kUnconstrained);
  for (const auto& row : none.rows) CHECK(row.name.rfind("mean_", 0) != 0);
  CHECK_THROWS_AS(build_problem(uniform(2, {q("1")}), mv({"1"}), ProcessKind::kMartingale), std::invalid_argument);
}

TEST_CASE("two-step martingale regression fixture") {
  auto support = uniform(2, {q("-2"), q("-1"), q("1"), q("2")});
  auto a = mv({"1", "1"});
  auto s = min_abs_sum(support, a, ProcessKind::kMartingale);
  auto brute = oracle::vertex_enumeration_optimum(support, {q("1"), q("1")}, ProcessKind::kMartingale);
  REQUIRE(brute.has_value());
  CHECK(s.value == *brute);
  CHECK(s.value == eval_f_mg(a).value);
  check_witness(s, a, ProcessKind::kMartingale);
}

TEST_CASE("construction support gives the upper sandwich") {
  for (std::size_t n : {2, 3, 4}) {
    for (const auto& p : kPs) {
      RationalVector target(n, 2 - 2 * p);
      target[0] = 1;
      MomentVector a(target);
      auto support = construction_informed_support(n, p, Construction::kMartingale);
      auto s = min_abs_sum(support, a, ProcessKind::kMartingale);
      check_witness(s, a, ProcessKind::kMartingale);
      CHECK(s.value <= 1);
      CHECK(s.value >= eval_f_mg(a).value);
      // The piece a_1 dominates here, so the sandwich closes at 1.
      CHECK(eval_f_mg(a).value == 1);
      CHECK(s.value == 1);
    }
  }
}

TEST_CASE("submartingale sandwich on the pospart support") {
  for (std::size_t n : {2, 3, 4}) {
    for (const auto& p : kPs) {
      RationalVector target(n, 2 - 2 * p);
      target[0] = 1;
      target.back() = q("1/2");
      MomentVector a(target);
      auto s = min_abs_sum(construction_informed_support(n, p, Construction::kSmgPosPart), a,
                           ProcessKind::kSubmartingale);
      check_witness(s, a, ProcessKind::kSubmartingale);
      CHECK(s.value <= q("1/2"));
      CHECK(s.value >= eval_f_smg(a).value);
    }
  }
}

TEST_CASE("infeasible targets are reported") {
  // On {-1, 1} no step can have E|X| = 2.
  auto s = min_abs_sum(uniform(2, {q("-1"), q("1")}), mv({"1", "2"}), ProcessKind::kMartingale);
  CHECK(s.status == LpStatus::kInfeasible);
  CHECK_FALSE(s.witness.has_value());
  // A zero-mean step on {-2, 1} has E|X| = 4/3 exactly; E|X| = 1 is out of reach.
  auto t = min_abs_sum(SupportTree(1, uniform_nodes(1, {q("-2"), q("1")})), mv({"1"}), ProcessKind::kMartingale,
                       {}, true);
  CHECK(t.status == LpStatus::kInfeasible);
  CHECK(oracle::vertex_enumeration_optimum(uniform(2, {q("-1"), q("1")}), {q("1"), q("2")},
                                           ProcessKind::kMartingale) == std::nullopt);
}

TEST_CASE("unconstrained optimum on sign-pattern and rich supports") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + rng() % 3;
    auto a = random_moments(rng, n, 6);
    // Atoms +-a_i only admit the deterministic sign patterns.
    RationalVector atoms{0};
    for (const auto& v : a.values())
      if (v != 0) {
        atoms.push_back(v);
        atoms.push_back(-v);
      }
    auto s = min_abs_sum(uniform(n, atoms), a, ProcessKind::kUnconstrained);
    REQUIRE(s.status == LpStatus::kOptimal);
    CHECK(s.value >= *eval_f_none(1, a).exact);
    CHECK(s.value <= oracle::sign_pattern_extremes({a.values().begin(), a.values().end()}).first);
    check_witness(s, a, ProcessKind::kUnconstrained);
  }
  // An integer grid is rich enough to reach the closed form for integer targets.
  RationalVector grid;
  for (int v = -4; v <= 4; ++v) grid.push_back(v);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t n = 2 + trial % 2;
    RationalVector target;
    for (std::size_t i = 0; i < n; ++i) target.push_back(static_cast<long>(rng() % 3));
    MomentVector a(target);
    auto s = min_abs_sum(uniform(n, grid), a, ProcessKind::kUnconstrained);
    REQUIRE(s.status == LpStatus::kOptimal);
    CHECK(s.value == *eval_f_none(1, a).exact);
  }
}

TEST_CASE("restricted optimum dominates the closed form on random supports") {
  std::mt19937_64 rng(11);
  int feasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 3;
    auto kind = trial % 2 ? ProcessKind::kSubmartingale : ProcessKind::kMartingale;
    RationalVector atoms{q("-2"), q("-1"), q("1"), q("2")};
    if (trial % 3 == 0) atoms.push_back(0);
    if (trial % 4 == 0) atoms.push_back(q("1/2"));
    auto a = random_moments(rng, n, 3);
    auto s = min_abs_sum(uniform(n, atoms), a, kind);
    if (s.status != LpStatus::kOptimal) continue;
    ++feasible;
    CHECK(s.value >= closed_form(a, kind));
    check_witness(s, a, kind);
  }
  CHECK(feasible > 10);
}

TEST_CASE("grid enlargement never increases the optimum") {
  for (const auto& p : {q("1/4"), q("1/2")}) {
    auto a = mv({"1", "3/2", "3/2"});
    auto base = construction_informed_support(3, p, Construction::kMartingale);
    auto grid = construction_informed_support(3, p, Construction::kMartingale, GridSpec{1, 4, false});
    CHECK(grid.contains(base));
    auto s0 = min_abs_sum(base, a, ProcessKind::kMartingale);
    auto s1 = min_abs_sum(grid, a, ProcessKind::kMartingale);
    if (s0.status == LpStatus::kOptimal) {
      REQUIRE(s1.status == LpStatus::kOptimal);
      CHECK(s1.value <= s0.value);
    }
    if (s1.status == LpStatus::kOptimal) CHECK(s1.value >= eval_f_mg(a).value);
  }
}

TEST_CASE("float mode agrees with exact mode") {
  for (const auto& p : kPs) {
    RationalVector target{1, 2 - 2 * p, 2 - 2 * p};
    auto support = construction_informed_support(3, p, Construction::kMartingale);
    auto exact = min_abs_sum(support, MomentVector(target), ProcessKind::kMartingale);
    auto approx = min_abs_sum(support, MomentVector(target), ProcessKind::kMartingale, {SolveMode::kFloat});
    REQUIRE(approx.status == LpStatus::kOptimal);
    CHECK(approx.mode == SolveMode::kFloat);
    CHECK_FALSE(approx.unstable);
    CHECK(approx.max_residual < 1e-9);
    CHECK(approx.value.get_d() == doctest::Approx(exact.value.get_d()).epsilon(1e-9));
    REQUIRE(approx.witness.has_value());
    auto m = moments(*approx.witness);
    for (std::size_t i = 0; i < 3; ++i) CHECK(m.ex_abs_x[i].get_d() == doctest::Approx(target[i].get_d()));
  }
}

TEST_CASE("LP export") {
  auto problem = build_problem(uniform(2, {q("-1"), q("1")}), mv({"1", "1/3"}), ProcessKind::kSubmartingale);
  std::ostringstream out;
  write_lp_format(out, problem);
  const std::string text = out.str();
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("moment_2: ") != std::string::npos);
  CHECK(text.find("0.33333333333333331") != std::string::npos);
  CHECK(text.find(" >= 0\n") != std::string::npos);
  CHECK(text.rfind("End\n") == text.size() - 4);
}

TEST_CASE("refinement schedule on the martingale ray") {
  auto a = MomentVector({q("1/5"), q("2/5"), q("2/5")});
  std::vector<SupportTree> schedule;
  for (const auto& p : kPs) {
    auto next = scale(construction_informed_support(3, p, Construction::kMartingale), 2 * a[0]);
    next = support_union(next, spike_support(3, 4 * sum(a.values())));
    schedule.push_back(schedule.empty() ? next : support_union(schedule.back(), next));
  }
  auto report = refine_and_converge(a, ProcessKind::kMartingale, schedule);
  CHECK(report.nested);
  CHECK(report.monotone);
  CHECK(report.dominates_bound);
  CHECK(report.closed_form == q("1/5"));
  REQUIRE(report.final_gap.has_value());
  CHECK(*report.final_gap <= q("1/64"));
  CHECK(*report.final_gap == q("4/5") * q("1/64"));
  for (const auto& s : report.solutions) {
    REQUIRE(s.status == LpStatus::kOptimal);
    check_witness(s, a, ProcessKind::kMartingale);
  }
  // Gaps shrink along the schedule.
  for (std::size_t k = 1; k < report.solutions.size(); ++k)
    CHECK(report.solutions[k].value <= report.solutions[k - 1].value);

  auto empty = refine_and_converge(mv({"1", "5"}), ProcessKind::kMartingale, {uniform(2, {q("-1"), q("1")})});
  CHECK(empty.all_infeasible());
}

TEST_CASE("homogeneity and midpoint convexity") {
  std::mt19937_64 rng(3);
  auto support = uniform(2, {q("-2"), q("-1"), q("0"), q("1"), q("2")});
  int pairs = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto kind = trial % 2 ? ProcessKind::kSubmartingale : ProcessKind::kMartingale;
    auto a = random_moments(rng, 2, 3);
    auto b = random_moments(rng, 2, 3);
    auto sa = min_abs_sum(support, a, kind);
    if (sa.status == LpStatus::kOptimal) {
      const Rational lambda = q("3/2");
      auto scaled = min_abs_sum(scale(support, lambda), a.scaled(lambda), kind);
      REQUIRE(scaled.status == LpStatus::kOptimal);
      CHECK(scaled.value == lambda * sa.value);
    }
    RationalVector mid;
    for (std::size_t i = 0; i < 2; ++i) mid.push_back((a[i] + b[i]) / 2);
    auto sb = min_abs_sum(support, b, kind);
    auto sm = min_abs_sum(support, MomentVector(mid), kind);
    if (sa.status != LpStatus::kOptimal || sb.status != LpStatus::kOptimal) continue;
    REQUIRE(sm.status == LpStatus::kOptimal);  // the feasible set is convex
    CHECK(sm.value <= (sa.value + sb.value) / 2);
    ++pairs;
  }
  CHECK(pairs > 5);
}

TEST_CASE("brute-force vertex enumeration agrees") {
  std::mt19937_64 rng(5);
  int compared = 0;
  for (int trial = 0; trial < 40; ++trial) {
    RandomLawOptions opt;
    opt.steps = 1 + rng() % 3;
    opt.kind = trial % 2 ? ProcessKind::kSubmartingale : ProcessKind::kMartingale;
    opt.max_branching = 2;
    // A law on the support with these moments exists, so both must be feasible.
    auto law = random_law(opt, rng());
    auto support = support_of(law);
    if (support.leaf_count() > 12) continue;
    auto a = moments(law).ex_abs_x;
    for (auto kind : {opt.kind, ProcessKind::kUnconstrained}) {
      auto s = min_abs_sum(support, MomentVector(a), kind);
      auto brute = oracle::vertex_enumeration_optimum(support, a, kind);
      REQUIRE(s.status == LpStatus::kOptimal);
      REQUIRE(brute.has_value());
      CHECK(*brute == s.value);
      ++compared;
    }
  }
  CHECK(compared >= 30);
}
