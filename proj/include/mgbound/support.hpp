#pragma once

#include <optional>
#include <vector>

#include "mgbound/process.hpp"
#include "mgbound/rational.hpp"

namespace mgbound {

// Candidate increment values at each node of an adapted process; a
// discretization of the law space with probabilities left free.
struct SupportNode {
  Rational x;
  std::vector<SupportNode> children;
};

class SupportTree {
 public:
  SupportTree(std::size_t n, std::vector<SupportNode> top);

  std::size_t steps() const { return n_; }
  const std::vector<SupportNode>& top() const { return top_; }
  std::size_t node_count() const;  // excluding the root
  std::size_t leaf_count() const;

  bool contains(const SupportTree& other) const;

 private:
  std::size_t n_;
  std::vector<SupportNode> top_;
};

SupportTree support_of(const ProcessLaw& law);
SupportTree support_union(const SupportTree& a, const SupportTree& b);
SupportTree scale(const SupportTree& support, const Rational& lambda);

// Every internal node receives the extra atoms {0} u {+-delta 2^j <= cap};
// with `multiplicative`, a node with partial sum s != 0 also receives the
// atoms s (m - 1) for multipliers m in {0, 2^j <= cap}. New atoms get the
// same treatment recursively.
struct GridSpec {
  Rational delta = 1;
  Rational cap = 8;
  bool multiplicative = false;
};
SupportTree grid_union(const SupportTree& support, const GridSpec& grid);

// Paths that stay at zero except for one symmetric jump +-height at a single
// step in [first_step, n]; includes the all-zero path.
SupportTree spike_support(std::size_t n, const Rational& height, std::size_t first_step = 1);

enum class Construction { kMartingale, kSmgPosProduct, kSmgPosPart, kSmgBoth };

// Support of the extremal process family for the given parameter p,
// optionally enlarged by a grid.
SupportTree construction_informed_support(std::size_t n, const Rational& p, Construction construction,
                                          const std::optional<GridSpec>& grid = std::nullopt);

nlohmann::json support_to_json(const SupportTree& support);
SupportTree support_from_json(const nlohmann::json& j);

}  // namespace mgbound
