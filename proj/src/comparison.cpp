#include "mgbound/comparison.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "mgbound/lp.hpp"
#include "mgbound/support.hpp"

namespace mgbound {

Rational LinearConstraint::lhs(std::span<const Rational> x) const {
  Rational v = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (coeffs[i] != 0) v += coeffs[i] * x[i];
  return v;
}

Polytope::Polytope(std::size_t ambient, std::vector<LinearConstraint> equalities,
                   std::vector<LinearConstraint> facets, std::vector<RationalVector> vertices)
    : ambient_(ambient), equalities_(std::move(equalities)), facets_(std::move(facets)), vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("polytope needs at least one vertex");
  RationalMatrix eq;
  for (const auto& e : equalities_) {
    if (e.coeffs.size() != ambient_) throw std::invalid_argument("equality of wrong dimension");
    eq.push_back(e.coeffs);
  }
  for (const auto& f : facets_)
    if (f.coeffs.size() != ambient_) throw std::invalid_argument("facet of wrong dimension");
  dimension_ = ambient_ - rank(eq);
  RationalMatrix lifted;
  for (const auto& v : vertices_) {
    if (v.size() != ambient_ || !contains(v)) throw std::invalid_argument("vertex outside the polytope");
    auto row = v;
    row.push_back(1);
    lifted.push_back(row);
    if (rank(lifted) == lifted.size()) {
      basis_.push_back(v);
    } else {
      lifted.pop_back();
    }
  }
  if (basis_.size() != dimension_ + 1)
    throw std::invalid_argument("vertices do not span the affine hull of the polytope");
}

Polytope Polytope::standard_simplex(std::size_t n) {
  if (n == 0) throw std::invalid_argument("simplex needs n >= 1");
  std::vector<LinearConstraint> facets;
  std::vector<RationalVector> vertices;
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector e(n, 0);
    e[i] = 1;
    facets.push_back({e, 0});
    vertices.push_back(e);
  }
  // A single point has no facets: x_1 >= 0 is not a proper face of {1}.
  if (n == 1) facets.clear();
  return Polytope(n, {{RationalVector(n, 1), 1}}, std::move(facets), std::move(vertices));
}

Polytope Polytope::interval(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw std::invalid_argument("empty interval");
  if (lo == hi) return Polytope(1, {{{Rational(1)}, lo}}, {}, {{lo}});
  return Polytope(1, {}, {{{Rational(1)}, lo}, {{Rational(-1)}, -hi}}, {{lo}, {hi}});
}

bool Polytope::contains(std::span<const Rational> x) const {
  if (x.size() != ambient_) return false;
  for (const auto& e : equalities_)
    if (e.lhs(x) != e.rhs) return false;
  for (const auto& f : facets_)
    if (f.lhs(x) < f.rhs) return false;
  return true;
}

bool Polytope::in_relative_interior(std::span<const Rational> x) const {
  if (!contains(x)) return false;
  for (const auto& f : facets_)
    if (f.lhs(x) == f.rhs) return false;
  return true;
}

std::size_t affine_rank(std::span<const AffinePiece> pieces) {
  RationalMatrix rows;
  for (const auto& p : pieces) {
    auto row = p.coeffs;
    row.push_back(p.offset);
    row.push_back(1);
    rows.push_back(std::move(row));
  }
  if (!rows.empty())
    for (const auto& r : rows)
      if (r.size() != rows.front().size()) throw std::invalid_argument("pieces of different dimension");
  return rank(std::move(rows));
}

namespace {

RationalVector restricted_vector(const AffinePiece& piece, const Polytope& polytope) {
  RationalVector row;
  for (const auto& v : polytope.affine_basis()) row.push_back(piece(v));
  row.push_back(1);
  return row;
}

struct Enumerator {
  const AffineFamily& family;
  const Polytope& polytope;
  std::vector<RationalVector> restricted;
  std::map<RationalVector, DistinguishedPoint> found;
  std::vector<std::size_t> chosen;

  void run() {
    for (const auto& p : family.pieces()) restricted.push_back(restricted_vector(p, polytope));
    extend(0);
  }

  bool independent() const {
    RationalMatrix rows;
    for (auto i : chosen) rows.push_back(restricted[i]);
    return rank(std::move(rows)) == chosen.size();
  }

  void extend(std::size_t start) {
    const std::size_t need = polytope.dimension() + 1;
    if (chosen.size() == need) {
      consider();
      return;
    }
    for (std::size_t i = start; i + (need - chosen.size()) <= family.size(); ++i) {
      chosen.push_back(i);
      if (independent()) extend(i + 1);
      chosen.pop_back();
    }
  }

  void consider() {
    const auto& pieces = family.pieces();
    const std::size_t n = polytope.ambient();
    RationalMatrix a;
    RationalVector b;
    for (const auto& e : polytope.equalities()) {
      a.push_back(e.coeffs);
      b.push_back(e.rhs);
    }
    const auto& base = pieces[chosen.front()];
    for (std::size_t k = 1; k < chosen.size(); ++k) {
      const auto& other = pieces[chosen[k]];
      RationalVector row(n);
      for (std::size_t i = 0; i < n; ++i) row[i] = other.coeffs[i] - base.coeffs[i];
      a.push_back(std::move(row));
      b.push_back(base.offset - other.offset);
    }
    auto sol = solve_linear(std::move(a), std::move(b), n);
    if (sol.kind == SolutionKind::kNone) return;
    if (!polytope.in_relative_interior(sol.x)) return;
    auto result = family.evaluate(sol.x, Assumption::kMartingale);
    if (base(sol.x) != result.value) return;
    if (found.count(sol.x)) return;
    std::vector<AffinePiece> active;
    for (const auto& label : result.active) active.push_back(family.piece(label));
    DistinguishedPoint point{sol.x, result.value, result.active, affine_rank_on(active, polytope),
                             sol.kind == SolutionKind::kMany};
    found.emplace(sol.x, std::move(point));
  }
};

using Embed = std::function<RationalVector(std::span<const Rational>)>;

struct Verifier {
  const UpperOracle& oracle;
  const BoundaryReducer& reducer;
  const VerifyOptions& options;
  VerificationReport report;
  std::set<RationalVector> seen;

  void visit(const AffineFamily& family, const Polytope& polytope, const Embed& to_top, const std::string& name) {
    if (polytope.dimension() == 0) {
      const auto& x = polytope.vertices().front();
      auto result = family.evaluate(x, Assumption::kMartingale);
      std::vector<AffinePiece> active;
      for (const auto& label : result.active) active.push_back(family.piece(label));
      check(x, result.value, result.active, affine_rank_on(active, polytope), to_top, name, 0);
      return;
    }
    for (auto& face : reducer(family, polytope)) {
      Embed composed = [&to_top, embed = face.embed](std::span<const Rational> y) { return to_top(embed(y)); };
      visit(face.family, face.polytope, composed, name + "/" + face.name);
    }
    for (const auto& dp : enumerate_distinguished_points(family, polytope))
      check(dp.point, dp.value, dp.active, dp.independence_rank, to_top, name, polytope.dimension());
  }

  void check(const RationalVector& x, const Rational& g, const std::vector<PieceLabel>& active, std::size_t rank_value,
             const Embed& to_top, const std::string& name, std::size_t dim) {
    RationalVector top = to_top(x);
    if (!seen.insert(top).second) return;
    CheckedPoint cp;
    cp.point = top;
    cp.face = name;
    cp.face_dimension = dim;
    cp.active = active;
    cp.independence_rank = rank_value;
    cp.bound = g;
    auto oracle_result = oracle(top);
    cp.note = oracle_result.note;
    cp.f_upper = oracle_result.upper;
    if (!cp.f_upper) {
      cp.outcome = CheckOutcome::kInconclusive;
      ++report.inconclusive;
    } else {
      cp.slack = *cp.f_upper - g;
      cp.outcome = cp.slack <= options.tolerance ? CheckOutcome::kPass : CheckOutcome::kFail;
      if (cp.outcome == CheckOutcome::kFail) ++report.failures;
      if (!report.max_slack || cp.slack > *report.max_slack) report.max_slack = cp.slack;
    }
    report.points.push_back(std::move(cp));
  }
};

nlohmann::json point_json(std::span<const Rational> x) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : x) arr.push_back(to_string(v));
  return arr;
}

}  // namespace

std::size_t affine_rank_on(std::span<const AffinePiece> pieces, const Polytope& polytope) {
  RationalMatrix rows;
  for (const auto& p : pieces) rows.push_back(restricted_vector(p, polytope));
  return rank(std::move(rows));
}

std::vector<DistinguishedPoint> enumerate_distinguished_points(const AffineFamily& family, const Polytope& polytope) {
  if (family.dimension() != polytope.ambient())
    throw std::invalid_argument("family and polytope live in different dimensions");
  Enumerator e{family, polytope, {}, {}, {}};
  e.run();
  std::vector<DistinguishedPoint> out;
  for (auto& [key, point] : e.found) out.push_back(std::move(point));
  return out;
}

BoundaryReducer simplex_coordinate_deletion() {
  return [](const AffineFamily& family, const Polytope& polytope) {
    const std::size_t n = polytope.ambient();
    std::vector<Face> faces;
    if (n <= 1) return faces;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<AffinePiece> pieces;
      for (const auto& p : family.pieces()) {
        AffinePiece q = p;
        q.coeffs.erase(q.coeffs.begin() + static_cast<std::ptrdiff_t>(j));
        pieces.push_back(std::move(q));
      }
      faces.push_back({"a" + std::to_string(j + 1) + "=0", AffineFamily(n - 1, std::move(pieces)),
                       Polytope::standard_simplex(n - 1), [j](std::span<const Rational> y) {
                         RationalVector x(y.begin(), y.end());
                         x.insert(x.begin() + static_cast<std::ptrdiff_t>(j), Rational(0));
                         return x;
                       }});
    }
    return faces;
  };
}

BoundaryReducer interval_endpoints() {
  return [](const AffineFamily& family, const Polytope& polytope) {
    std::vector<Face> faces;
    if (polytope.dimension() == 0) return faces;
    auto identity = [](std::span<const Rational> y) { return RationalVector(y.begin(), y.end()); };
    for (const auto& v : polytope.vertices())
      faces.push_back({"x=" + to_string(v[0]), family, Polytope::interval(v[0], v[0]), identity});
    return faces;
  };
}

std::string to_string(CheckOutcome outcome) {
  switch (outcome) {
    case CheckOutcome::kPass: return "pass";
    case CheckOutcome::kFail: return "fail";
    case CheckOutcome::kInconclusive: return "inconclusive";
  }
  return "?";
}

VerificationReport verify_bound(const UpperOracle& oracle, const AffineFamily& family, const Polytope& polytope,
                                const BoundaryReducer& reducer, const VerifyOptions& options) {
  Verifier v{oracle, reducer, options, {}, {}};
  Embed identity = [](std::span<const Rational> y) { return RationalVector(y.begin(), y.end()); };
  v.visit(family, polytope, identity, "C");
  return std::move(v.report);
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points) {
    nlohmann::json active = nlohmann::json::array();
    for (const auto& l : p.active) active.push_back(l.str());
    pts.push_back({{"point", point_json(p.point)},
                   {"face", p.face},
                   {"face_dimension", p.face_dimension},
                   {"active", active},
                   {"independence_rank", p.independence_rank},
                   {"bound", to_string(p.bound)},
                   {"f_upper", p.f_upper ? nlohmann::json(to_string(*p.f_upper)) : nlohmann::json(nullptr)},
                   {"slack", p.f_upper ? nlohmann::json(to_string(p.slack)) : nlohmann::json(nullptr)},
                   {"outcome", to_string(p.outcome)},
                   {"note", p.note}});
  }
  return {{"passed", passed()},
          {"failures", failures},
          {"inconclusive", inconclusive},
          {"max_slack", max_slack ? nlohmann::json(to_string(*max_slack)) : nlohmann::json(nullptr)},
          {"points", pts}};
}

SupportTree construction_oracle_support(ProcessKind kind, const MomentVector& target, const Rational& p) {
  const std::size_t n = target.size();
  auto base = construction_informed_support(n, p, Construction::kMartingale);
  if (kind != ProcessKind::kMartingale && n >= 2)
    base = support_union(base, construction_informed_support(n, p, Construction::kSmgBoth));
  Rational first = 0;
  for (const auto& v : target.values())
    if (v > 0) {
      first = v;
      break;
    }
  if (first == 0) return spike_support(n, 1);
  return support_union(scale(base, 2 * first), spike_support(n, 4 * target.total()));
}

UpperOracle construction_lp_oracle(ProcessKind kind, const Rational& p) {
  if (kind == ProcessKind::kUnconstrained) throw std::invalid_argument("construction oracle needs MG or SMG");
  if (kind == ProcessKind::kSupermartingale) kind = ProcessKind::kSubmartingale;
  return [kind, p](std::span<const Rational> x) -> OracleResult {
    RationalVector reduced;
    std::vector<std::size_t> zeros;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < 0) return {std::nullopt, "negative target"};
      if (x[i] == 0) zeros.push_back(i);
      else reduced.push_back(x[i]);
    }
    if (reduced.empty()) return {Rational(0), "all-zero target"};
    const MomentVector target(reduced);
    auto support = construction_oracle_support(kind, target, p);
    // With X_1 = 0 the first remaining step of a martingale is constrained too.
    const bool from_zero = !zeros.empty() && zeros.front() == 0;
    auto solution = min_abs_sum(support, target, kind, {}, from_zero);
    if (solution.status != LpStatus::kOptimal || !solution.witness)
      return {std::nullopt, "LP infeasible on construction support"};
    ProcessLaw law = *solution.witness;
    for (std::size_t j : zeros) law = embed_zero(law, j + 1);
    if (!validate(law, kind).ok()) return {std::nullopt, "witness failed validation"};
    auto m = moments(law);
    if (!std::equal(m.ex_abs_x.begin(), m.ex_abs_x.end(), x.begin(), x.end()))
      return {std::nullopt, "witness moments differ from target"};
    if (m.objective != solution.value) return {std::nullopt, "witness objective differs from LP value"};
    return {solution.value, "LP on construction support, " + std::to_string(support.node_count()) + " nodes"};
  };
}

}  // namespace mgbound
