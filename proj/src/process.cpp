#include "mgbound/process.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

namespace mgbound {
namespace {

struct MeasureNode {
  Rational x;
  Rational mass;
  std::vector<MeasureNode> children;
};

void merge_into(std::vector<MeasureNode>& dst, MeasureNode src) {
  auto it = std::find_if(dst.begin(), dst.end(), [&](const MeasureNode& m) { return m.x == src.x; });
  if (it == dst.end()) {
    std::vector<MeasureNode> kids = std::move(src.children);
    src.children.clear();
    dst.push_back(std::move(src));
    for (auto& k : kids) merge_into(dst.back().children, std::move(k));
    return;
  }
  it->mass += src.mass;
  for (auto& k : src.children) merge_into(it->children, std::move(k));
}

std::vector<MeasureNode> to_measure(const std::vector<LawNode>& nodes, const Rational& parent_mass,
                                    const Rational& x_scale) {
  std::vector<MeasureNode> out;
  for (const auto& node : nodes) {
    Rational mass = parent_mass * node.q;
    MeasureNode m{node.x * x_scale, mass, {}};
    m.children = to_measure(node.children, mass, x_scale);
    merge_into(out, std::move(m));
  }
  return out;
}

std::vector<LawNode> from_measure(const std::vector<MeasureNode>& nodes, const Rational& parent_mass) {
  std::vector<LawNode> out;
  for (const auto& m : nodes) {
    if (m.mass == 0) continue;
    out.push_back({m.x, m.mass / parent_mass, from_measure(m.children, m.mass)});
  }
  return out;
}

bool nodes_equal(const std::vector<LawNode>& a, const std::vector<LawNode>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].x != b[i].x || a[i].q != b[i].q || !nodes_equal(a[i].children, b[i].children)) return false;
  return true;
}

void check_p(const Rational& p) {
  if (p <= 0 || p >= 1) throw std::invalid_argument("p must lie in (0, 1), got " + to_string(p));
}

// Builds the subtree below a node with partial sum s at depth `depth`;
// `step` decides the atoms of the next increment.
using StepRule = std::function<std::vector<std::pair<Rational, Rational>>(std::size_t step, const Rational& s)>;

std::vector<LawNode> grow(std::size_t n, std::size_t depth, const Rational& s, const StepRule& rule) {
  if (depth == n) return {};
  std::vector<LawNode> out;
  for (auto& [x, q] : rule(depth + 1, s)) {
    Rational next = s + x;
    out.push_back({x, q, grow(n, depth + 1, next, rule)});
  }
  return out;
}

ProcessLaw grow_law(std::size_t n, const StepRule& rule) {
  return ProcessLaw(n, grow(n, 0, Rational(0), rule)).normalized();
}

// Atoms of X_k = S_{k-1} (Y_k - 1) for the multiplicative martingale.
std::vector<std::pair<Rational, Rational>> product_step(std::size_t step, const Rational& s, const Rational& p) {
  if (step == 1) return {{Rational(-1), Rational(1, 2)}, {Rational(1), Rational(1, 2)}};
  if (s == 0) return {{Rational(0), Rational(1)}};
  return {{-s, 1 - p}, {s * (1 / p - 1), p}};
}

void collect_moments(const std::vector<LawNode>& nodes, std::size_t depth, const Rational& prob,
                     const Rational& s, MomentSummary& out) {
  for (const auto& node : nodes) {
    Rational mass = prob * node.q;
    if (mass == 0) continue;
    Rational next = s + node.x;
    out.ex_abs_x[depth] += mass * abs(node.x);
    out.ex_abs_s[depth] += mass * abs(next);
    out.ex_s[depth] += mass * next;
    collect_moments(node.children, depth + 1, mass, next, out);
  }
}

void check_structure(const std::vector<LawNode>& nodes, std::size_t depth, std::size_t n, NodePath& path,
                     std::vector<StructuralError>& errors) {
  if (depth == n) {
    if (!nodes.empty()) errors.push_back({path, "tree deeper than n"});
    return;
  }
  if (nodes.empty()) {
    errors.push_back({path, "leaf at depth " + std::to_string(depth) + " < n"});
    return;
  }
  Rational total = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    path.push_back(i);
    if (nodes[i].q < 0) errors.push_back({path, "negative probability " + to_string(nodes[i].q)});
    total += nodes[i].q;
    check_structure(nodes[i].children, depth + 1, n, path, errors);
    path.pop_back();
  }
  if (total != 1) errors.push_back({path, "conditional probabilities sum to " + to_string(total)});
}

void check_kind(const std::vector<LawNode>& nodes, std::size_t step, ProcessKind kind, bool mg_from_zero,
                NodePath& path, std::vector<KindViolation>& out) {
  if (nodes.empty()) return;
  Rational mean = 0;
  for (const auto& node : nodes) mean += node.x * node.q;
  bool bad = false;
  switch (kind) {
    case ProcessKind::kMartingale: bad = (step >= 2 || mg_from_zero) && mean != 0; break;
    case ProcessKind::kSubmartingale: bad = mean < 0; break;
    case ProcessKind::kSupermartingale: bad = mean > 0; break;
    case ProcessKind::kUnconstrained: break;
  }
  if (bad) out.push_back({path, step, mean});
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    path.push_back(i);
    check_kind(nodes[i].children, step + 1, kind, mg_from_zero, path, out);
    path.pop_back();
  }
}

void negate_nodes(std::vector<LawNode>& nodes) {
  for (auto& node : nodes) {
    node.x = -node.x;
    negate_nodes(node.children);
  }
}

std::size_t count_leaves(const std::vector<LawNode>& nodes) {
  std::size_t total = 0;
  for (const auto& node : nodes) total += node.children.empty() ? 1 : count_leaves(node.children);
  return total;
}

std::vector<LawNode> insert_zero(const std::vector<LawNode>& nodes, std::size_t depth, std::size_t j) {
  if (depth + 1 == j) return {LawNode{Rational(0), Rational(1), nodes}};
  std::vector<LawNode> out = nodes;
  for (auto& node : out) node.children = insert_zero(node.children, depth + 1, j);
  return out;
}

nlohmann::json nodes_to_json(const std::vector<LawNode>& nodes) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& node : nodes)
    arr.push_back({{"x", to_json(node.x)}, {"q", to_json(node.q)}, {"children", nodes_to_json(node.children)}});
  return arr;
}

std::vector<LawNode> nodes_from_json(const nlohmann::json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("expected an array of nodes");
  std::vector<LawNode> out;
  for (const auto& item : arr) {
    LawNode node{rational_from_json(item.at("x")), rational_from_json(item.at("q")), {}};
    if (item.contains("children")) node.children = nodes_from_json(item.at("children"));
    out.push_back(std::move(node));
  }
  return out;
}

}  // namespace

ProcessLaw::ProcessLaw(std::size_t n, std::vector<LawNode> top) : n_(n), top_(std::move(top)) {
  if (n_ == 0) throw std::invalid_argument("a process law needs n >= 1 steps");
}

ProcessLaw ProcessLaw::normalized() const {
  return ProcessLaw(n_, from_measure(to_measure(top_, Rational(1), Rational(1)), Rational(1)));
}

ProcessLaw ProcessLaw::negated() const {
  auto nodes = top_;
  negate_nodes(nodes);
  return ProcessLaw(n_, std::move(nodes));
}

std::size_t ProcessLaw::leaf_count() const { return count_leaves(top_); }

bool operator==(const ProcessLaw& a, const ProcessLaw& b) { return a.n_ == b.n_ && nodes_equal(a.top_, b.top_); }

std::string to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::kMartingale: return "mg";
    case ProcessKind::kSubmartingale: return "submg";
    case ProcessKind::kSupermartingale: return "supermg";
    case ProcessKind::kUnconstrained: return "none";
  }
  return "?";
}

ProcessKind parse_kind(const std::string& text) {
  if (text == "mg") return ProcessKind::kMartingale;
  if (text == "smg" || text == "submg") return ProcessKind::kSubmartingale;
  if (text == "supermg") return ProcessKind::kSupermartingale;
  if (text == "none") return ProcessKind::kUnconstrained;
  throw std::invalid_argument("unknown process kind '" + text + "'");
}

ValidationReport validate(const ProcessLaw& law, ProcessKind kind, bool mg_from_zero) {
  ValidationReport report;
  NodePath path;
  check_structure(law.top(), 0, law.steps(), path, report.structural);
  if (!report.structural.empty()) return report;
  if (kind == ProcessKind::kSupermartingale) {
    check_kind(law.negated().top(), 1, ProcessKind::kSubmartingale, false, path, report.violations);
    for (auto& v : report.violations) v.conditional_mean = -v.conditional_mean;
  } else {
    check_kind(law.top(), 1, kind, mg_from_zero, path, report.violations);
  }
  return report;
}

MomentSummary moments(const ProcessLaw& law) {
  const std::size_t n = law.steps();
  MomentSummary out{RationalVector(n, 0), RationalVector(n, 0), RationalVector(n, 0), 0};
  collect_moments(law.top(), 0, Rational(1), Rational(0), out);
  out.objective = out.ex_abs_s.back();
  return out;
}

ProcessLaw build_mg_extremal(std::size_t n, const Rational& p) {
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  check_p(p);
  return grow_law(n, [&p](std::size_t step, const Rational& s) { return product_step(step, s, p); });
}

ProcessLaw build_smg_extremal_pos_product(std::size_t n, const Rational& p) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  check_p(p);
  return grow_law(n, [&p, n](std::size_t step, const Rational& s) -> std::vector<std::pair<Rational, Rational>> {
    if (step < n || s == 0) return product_step(step, s, p);
    if (s < 0) return {{-s, Rational(1)}};
    return {{-s, 1 - p}, {s * (1 / p - 1), p}};
  });
}

ProcessLaw build_smg_extremal_pospart(std::size_t n, const Rational& p) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  check_p(p);
  return grow_law(n, [&p, n](std::size_t step, const Rational& s) -> std::vector<std::pair<Rational, Rational>> {
    if (step < n) return product_step(step, s, p);
    return {{negative_part(s), Rational(1)}};
  });
}

ProcessLaw build_ic_spread(const MomentVector& a, const Rational& p) {
  if (p <= 0 || p > 1) throw std::invalid_argument("p must lie in (0, 1], got " + to_string(p));
  return grow_law(a.size(), [&](std::size_t step, const Rational&) -> std::vector<std::pair<Rational, Rational>> {
    const Rational& target = a[step - 1];
    if (target == 0) return {{Rational(0), Rational(1)}};
    Rational atom = target / p;
    return {{Rational(0), 1 - p}, {-atom, p / 2}, {atom, p / 2}};
  });
}

ProcessLaw scale(const ProcessLaw& law, const Rational& lambda) {
  if (lambda < 0) throw std::invalid_argument("scale factor must be non-negative");
  return ProcessLaw(law.steps(), from_measure(to_measure(law.top(), Rational(1), lambda), Rational(1)));
}

ProcessLaw embed_zero(const ProcessLaw& law, std::size_t j) {
  if (j < 1 || j > law.steps() + 1) throw std::invalid_argument("embed_zero position out of range");
  return ProcessLaw(law.steps() + 1, insert_zero(law.top(), 0, j));
}

ProcessLaw mix(const ProcessLaw& first, const ProcessLaw& second, const Rational& lambda) {
  if (first.steps() != second.steps()) throw std::invalid_argument("mix requires laws of equal depth");
  if (lambda < 0 || lambda > 1) throw std::invalid_argument("mixing weight must lie in [0, 1]");
  auto merged = to_measure(first.top(), lambda, Rational(1));
  for (auto& m : to_measure(second.top(), 1 - lambda, Rational(1))) merge_into(merged, std::move(m));
  return ProcessLaw(first.steps(), from_measure(merged, Rational(1)));
}

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  long uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(engine_() % span);
  }

  // Rational in (0, bound] with denominator in {1, 2, 3, 4}.
  Rational magnitude(long bound) {
    long den = uniform(1, 4);
    Rational v(uniform(1, bound * den), den);
    v.canonicalize();
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<std::pair<Rational, Rational>> random_atoms(Sampler& rng, const RandomLawOptions& opt, bool constrained,
                                                        bool allow_surplus) {
  const long b = rng.uniform(1, static_cast<long>(opt.max_branching));
  std::vector<std::pair<Rational, Rational>> atoms;
  if (!constrained) {
    for (long i = 0; i < b; ++i) {
      Rational v = rng.uniform(0, 4) == 0 ? Rational(0) : rng.magnitude(opt.value_bound);
      if (rng.uniform(0, 1)) v = -v;
      atoms.emplace_back(v, Rational(rng.uniform(1, 5)));
    }
  } else if (b == 1) {
    Rational v = allow_surplus && rng.uniform(0, 1) ? rng.magnitude(opt.value_bound) : Rational(0);
    atoms.emplace_back(v, Rational(1));
  } else {
    const long negatives = rng.uniform(1, b - 1);
    Rational neg_mass = 0, pos_mass = 0;
    for (long i = 0; i < b; ++i) {
      Rational v = rng.magnitude(opt.value_bound);
      Rational w(rng.uniform(1, 5));
      if (i < negatives) {
        neg_mass += w * v;
        atoms.emplace_back(-v, w);
      } else {
        pos_mass += w * v;
        atoms.emplace_back(v, w);
      }
    }
    Rational factor = neg_mass / pos_mass;
    if (allow_surplus && rng.uniform(0, 1)) {
      Rational surplus(rng.uniform(5, 12), 4);
      surplus.canonicalize();
      factor *= surplus;
    }
    for (long i = negatives; i < b; ++i) atoms[static_cast<std::size_t>(i)].second *= factor;
  }
  Rational total = 0;
  for (const auto& a : atoms) total += a.second;
  for (auto& a : atoms) a.second /= total;
  return atoms;
}

}  // namespace

ProcessLaw random_law(const RandomLawOptions& options, std::uint64_t seed) {
  if (options.max_branching < 2 || options.value_bound < 1)
    throw std::invalid_argument("random_law needs branching bound >= 2 and value bound >= 1");
  Sampler rng(seed);
  const ProcessKind kind = options.kind;
  const bool sub = kind == ProcessKind::kSubmartingale || kind == ProcessKind::kSupermartingale;
  auto law = grow_law(options.steps, [&](std::size_t step, const Rational&) {
    bool constrained = false;
    switch (kind) {
      case ProcessKind::kMartingale: constrained = step >= 2 || options.mg_from_zero; break;
      case ProcessKind::kSubmartingale:
      case ProcessKind::kSupermartingale: constrained = true; break;
      case ProcessKind::kUnconstrained: break;
    }
    return random_atoms(rng, options, constrained, sub);
  });
  return kind == ProcessKind::kSupermartingale ? law.negated() : law;
}

nlohmann::json law_to_json(const ProcessLaw& law) {
  return {{"n", law.steps()}, {"nodes", nodes_to_json(law.top())}};
}

ProcessLaw law_from_json(const nlohmann::json& j) {
  auto n = j.at("n").get<std::size_t>();
  return ProcessLaw(n, nodes_from_json(j.at("nodes")));
}

}  // namespace mgbound
