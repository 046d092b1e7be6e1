#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mgbound/bounds.hpp"
#include "mgbound/rational.hpp"

namespace mgbound {

// One atom of the conditional law of X_i given the path leading to its
// parent: increment value x with conditional probability q.
struct LawNode {
  Rational x;
  Rational q;
  std::vector<LawNode> children;
};

// Finite-support adapted process (X_1, ..., X_n) as a probability tree. The
// root is implicit; top() are the atoms of X_1. Trees built by the library
// are structurally valid; trees read from files may not be, which is what
// validate() reports.
class ProcessLaw {
 public:
  ProcessLaw(std::size_t n, std::vector<LawNode> top);

  std::size_t steps() const { return n_; }
  const std::vector<LawNode>& top() const { return top_; }

  // Merge sibling atoms with equal increments and drop zero-probability atoms.
  ProcessLaw normalized() const;
  ProcessLaw negated() const;

  std::size_t leaf_count() const;

  friend bool operator==(const ProcessLaw& a, const ProcessLaw& b);

 private:
  std::size_t n_;
  std::vector<LawNode> top_;
};

enum class ProcessKind { kMartingale, kSubmartingale, kSupermartingale, kUnconstrained };

std::string to_string(ProcessKind kind);
ProcessKind parse_kind(const std::string& text);

using NodePath = std::vector<std::size_t>;

struct StructuralError {
  NodePath path;
  std::string message;
};

// Conditional mean E[X_step | path] violating the kind's sign constraint.
struct KindViolation {
  NodePath path;
  std::size_t step = 0;
  Rational conditional_mean;
};

struct ValidationReport {
  std::vector<StructuralError> structural;
  std::vector<KindViolation> violations;

  bool structurally_valid() const { return structural.empty(); }
  bool ok() const { return structural.empty() && violations.empty(); }
};

// MG constrains steps 2..n (also step 1 with mg_from_zero); SubMG and
// SuperMG constrain every step since S_0 = 0.
ValidationReport validate(const ProcessLaw& law, ProcessKind kind, bool mg_from_zero = false);

struct MomentSummary {
  RationalVector ex_abs_x;  // E|X_i|
  RationalVector ex_abs_s;  // E|S_k|
  RationalVector ex_s;      // E S_k
  Rational objective;       // E|S_n|

  MomentVector increments() const { return MomentVector(ex_abs_x); }
};

MomentSummary moments(const ProcessLaw& law);

// S_k = Y_1 ... Y_k with Y_1 = +-1 fair and Y_i in {0, 1/p} w.p. {1-p, p}.
ProcessLaw build_mg_extremal(std::size_t n, const Rational& p);
// First n-1 steps as above, then S_n = (S_{n-1} Y_n)_+.
ProcessLaw build_smg_extremal_pos_product(std::size_t n, const Rational& p);
// First n-1 steps as above, then S_n = (S_{n-1})_+.
ProcessLaw build_smg_extremal_pospart(std::size_t n, const Rational& p);
// Independent X_i ~ (1-p) delta_0 + p/2 (delta_{-a_i/p} + delta_{a_i/p}).
ProcessLaw build_ic_spread(const MomentVector& a, const Rational& p);

ProcessLaw scale(const ProcessLaw& law, const Rational& lambda);
// Inserts a deterministic zero increment so that it becomes step j (1-based).
ProcessLaw embed_zero(const ProcessLaw& law, std::size_t j);
// The mixture lambda * P + (1 - lambda) * Q of two laws of equal depth.
ProcessLaw mix(const ProcessLaw& first, const ProcessLaw& second, const Rational& lambda);

struct RandomLawOptions {
  std::size_t steps = 3;
  ProcessKind kind = ProcessKind::kMartingale;
  std::size_t max_branching = 3;
  long value_bound = 4;
  bool mg_from_zero = false;
};

// Deterministic given the seed; the result validates for the requested kind.
ProcessLaw random_law(const RandomLawOptions& options, std::uint64_t seed);

// JSON form: {"n": n, "nodes": [{"x": [num, den], "q": [num, den], "children": [...]}, ...]}
nlohmann::json law_to_json(const ProcessLaw& law);
ProcessLaw law_from_json(const nlohmann::json& j);

}  // namespace mgbound
