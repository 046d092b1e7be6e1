#include "mgbound/support.hpp"

#include <algorithm>
#include <stdexcept>

namespace mgbound {
namespace {

void merge_node(std::vector<SupportNode>& dst, const SupportNode& src) {
  auto it = std::find_if(dst.begin(), dst.end(), [&](const SupportNode& s) { return s.x == src.x; });
  if (it == dst.end()) {
    dst.push_back({src.x, {}});
    it = std::prev(dst.end());
  }
  for (const auto& child : src.children) merge_node(it->children, child);
}

std::size_t count_nodes(const std::vector<SupportNode>& nodes) {
  std::size_t total = nodes.size();
  for (const auto& n : nodes) total += count_nodes(n.children);
  return total;
}

std::size_t count_leaves(const std::vector<SupportNode>& nodes) {
  std::size_t total = 0;
  for (const auto& n : nodes) total += n.children.empty() ? 1 : count_leaves(n.children);
  return total;
}

bool contains_nodes(const std::vector<SupportNode>& big, const std::vector<SupportNode>& small) {
  for (const auto& s : small) {
    auto it = std::find_if(big.begin(), big.end(), [&](const SupportNode& b) { return b.x == s.x; });
    if (it == big.end() || !contains_nodes(it->children, s.children)) return false;
  }
  return true;
}

std::vector<SupportNode> from_law(const std::vector<LawNode>& nodes) {
  std::vector<SupportNode> out;
  for (const auto& n : nodes) out.push_back({n.x, from_law(n.children)});
  return out;
}

void scale_nodes(std::vector<SupportNode>& nodes, const Rational& lambda) {
  for (auto& n : nodes) {
    n.x *= lambda;
    scale_nodes(n.children, lambda);
  }
}

std::vector<Rational> grid_atoms(const GridSpec& grid, const Rational& s) {
  std::vector<Rational> atoms{Rational(0)};
  for (Rational h = grid.delta; h <= grid.cap; h *= 2) {
    atoms.push_back(h);
    atoms.push_back(-h);
  }
  if (grid.multiplicative && s != 0) {
    atoms.push_back(-s);
    for (Rational m = 1; m <= grid.cap; m *= 2)
      if (m != 1) atoms.push_back(s * (m - 1));
  }
  return atoms;
}

void add_grid(std::vector<SupportNode>& nodes, std::size_t depth, std::size_t n, const Rational& s,
              const GridSpec& grid) {
  if (depth == n) return;
  for (const auto& x : grid_atoms(grid, s)) merge_node(nodes, {x, {}});
  for (auto& node : nodes) add_grid(node.children, depth + 1, n, s + node.x, grid);
}

std::vector<SupportNode> zero_chain(std::size_t remaining) {
  if (remaining == 0) return {};
  return {SupportNode{Rational(0), zero_chain(remaining - 1)}};
}

std::vector<SupportNode> spikes(std::size_t depth, std::size_t n, const Rational& height, std::size_t first_step) {
  if (depth == n) return {};
  const std::size_t step = depth + 1;
  std::vector<SupportNode> out{{Rational(0), spikes(depth + 1, n, height, first_step)}};
  if (step >= first_step) {
    out.push_back({height, zero_chain(n - step)});
    out.push_back({-height, zero_chain(n - step)});
  }
  return out;
}

nlohmann::json nodes_to_json(const std::vector<SupportNode>& nodes) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& n : nodes) arr.push_back({{"x", to_json(n.x)}, {"children", nodes_to_json(n.children)}});
  return arr;
}

std::vector<SupportNode> nodes_from_json(const nlohmann::json& arr) {
  std::vector<SupportNode> out;
  for (const auto& item : arr) {
    SupportNode node{rational_from_json(item.at("x")), {}};
    if (item.contains("children")) node.children = nodes_from_json(item.at("children"));
    out.push_back(std::move(node));
  }
  return out;
}

bool uniform_depth(const std::vector<SupportNode>& nodes, std::size_t remaining) {
  if (remaining == 0) return nodes.empty();
  if (nodes.empty()) return false;
  return std::all_of(nodes.begin(), nodes.end(),
                     [&](const SupportNode& n) { return uniform_depth(n.children, remaining - 1); });
}

}  // namespace

SupportTree::SupportTree(std::size_t n, std::vector<SupportNode> top) : n_(n), top_(std::move(top)) {
  if (n_ == 0) throw std::invalid_argument("support tree needs n >= 1");
  if (!uniform_depth(top_, n_)) throw std::invalid_argument("support tree must have every leaf at depth n");
}

std::size_t SupportTree::node_count() const { return count_nodes(top_); }
std::size_t SupportTree::leaf_count() const { return count_leaves(top_); }

bool SupportTree::contains(const SupportTree& other) const {
  return n_ == other.n_ && contains_nodes(top_, other.top_);
}

SupportTree support_of(const ProcessLaw& law) { return SupportTree(law.steps(), from_law(law.top())); }

SupportTree support_union(const SupportTree& a, const SupportTree& b) {
  if (a.steps() != b.steps()) throw std::invalid_argument("support union requires equal depth");
  std::vector<SupportNode> merged;
  for (const auto& n : a.top()) merge_node(merged, n);
  for (const auto& n : b.top()) merge_node(merged, n);
  return SupportTree(a.steps(), std::move(merged));
}

SupportTree scale(const SupportTree& support, const Rational& lambda) {
  if (lambda <= 0) throw std::invalid_argument("support scale factor must be positive");
  auto nodes = support.top();
  scale_nodes(nodes, lambda);
  return SupportTree(support.steps(), std::move(nodes));
}

SupportTree grid_union(const SupportTree& support, const GridSpec& grid) {
  if (grid.delta <= 0 || grid.cap < grid.delta) throw std::invalid_argument("grid needs 0 < delta <= cap");
  auto nodes = support.top();
  add_grid(nodes, 0, support.steps(), Rational(0), grid);
  return SupportTree(support.steps(), std::move(nodes));
}

SupportTree spike_support(std::size_t n, const Rational& height, std::size_t first_step) {
  if (height <= 0) throw std::invalid_argument("spike height must be positive");
  return SupportTree(n, spikes(0, n, height, first_step));
}

SupportTree construction_informed_support(std::size_t n, const Rational& p, Construction construction,
                                          const std::optional<GridSpec>& grid) {
  std::optional<SupportTree> base;
  switch (construction) {
    case Construction::kMartingale: base = support_of(build_mg_extremal(n, p)); break;
    case Construction::kSmgPosProduct: base = support_of(build_smg_extremal_pos_product(n, p)); break;
    case Construction::kSmgPosPart: base = support_of(build_smg_extremal_pospart(n, p)); break;
    case Construction::kSmgBoth:
      base = support_union(support_of(build_smg_extremal_pos_product(n, p)),
                           support_of(build_smg_extremal_pospart(n, p)));
      break;
  }
  return grid ? grid_union(*base, *grid) : *base;
}

nlohmann::json support_to_json(const SupportTree& support) {
  return {{"n", support.steps()}, {"nodes", nodes_to_json(support.top())}};
}

SupportTree support_from_json(const nlohmann::json& j) {
  return SupportTree(j.at("n").get<std::size_t>(), nodes_from_json(j.at("nodes")));
}

}  // namespace mgbound
