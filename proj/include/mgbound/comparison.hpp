#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgbound/bounds.hpp"
#include "mgbound/linalg.hpp"
#include "mgbound/process.hpp"
#include "mgbound/support.hpp"

namespace mgbound {

// coeffs . x = rhs (equalities) or coeffs . x >= rhs (facets)
struct LinearConstraint {
  RationalVector coeffs;
  Rational rhs;

  Rational lhs(std::span<const Rational> x) const;
};

// Compact polytope given by its affine hull, its facet inequalities and its
// vertices. The relative interior is where every facet holds strictly.
class Polytope {
 public:
  Polytope(std::size_t ambient, std::vector<LinearConstraint> equalities, std::vector<LinearConstraint> facets,
           std::vector<RationalVector> vertices);

  // {x >= 0, sum x = 1} in R^n, of dimension n - 1.
  static Polytope standard_simplex(std::size_t n);
  // [lo, hi] in R^1; lo == hi gives a point.
  static Polytope interval(const Rational& lo, const Rational& hi);

  std::size_t ambient() const { return ambient_; }
  std::size_t dimension() const { return dimension_; }
  const std::vector<LinearConstraint>& equalities() const { return equalities_; }
  const std::vector<LinearConstraint>& facets() const { return facets_; }
  const std::vector<RationalVector>& vertices() const { return vertices_; }
  // dimension() + 1 affinely independent vertices.
  const std::vector<RationalVector>& affine_basis() const { return basis_; }

  bool contains(std::span<const Rational> x) const;
  bool in_relative_interior(std::span<const Rational> x) const;

 private:
  std::size_t ambient_;
  std::vector<LinearConstraint> equalities_;
  std::vector<LinearConstraint> facets_;
  std::vector<RationalVector> vertices_;
  std::vector<RationalVector> basis_;
  std::size_t dimension_ = 0;
};

// Size of a largest affinely independent subfamily: the rank of the vectors
// (coeffs, offset, 1).
std::size_t affine_rank(std::span<const AffinePiece> pieces);
// Same, for the pieces viewed as functions on the polytope's affine hull.
std::size_t affine_rank_on(std::span<const AffinePiece> pieces, const Polytope& polytope);

struct DistinguishedPoint {
  RationalVector point;
  Rational value;                   // family maximum at the point
  std::vector<PieceLabel> active;   // every piece attaining the maximum
  std::size_t independence_rank = 0;
  bool degenerate = false;          // equal-value system had a non-unique solution
};

// Relative-interior points whose active set holds dimension + 1 affinely
// independent pieces, sorted by coordinates.
std::vector<DistinguishedPoint> enumerate_distinguished_points(const AffineFamily& family, const Polytope& polytope);

// Certified upper bound on the convex function at a point, or nullopt with a
// reason when the oracle cannot produce one.
struct OracleResult {
  std::optional<Rational> upper;
  std::string note;
};
using UpperOracle = std::function<OracleResult(std::span<const Rational>)>;

// A proper face of a polytope with the family restricted to it; embed maps
// face coordinates into the parent's.
struct Face {
  std::string name;
  AffineFamily family;
  Polytope polytope;
  std::function<RationalVector(std::span<const Rational>)> embed;
};
using BoundaryReducer = std::function<std::vector<Face>(const AffineFamily&, const Polytope&)>;

// Facets {x_j = 0} of the standard simplex as standard simplices of one
// dimension lower, with coordinate j deleted from every piece.
BoundaryReducer simplex_coordinate_deletion();
// The two endpoints of an interval.
BoundaryReducer interval_endpoints();

enum class CheckOutcome { kPass, kFail, kInconclusive };
std::string to_string(CheckOutcome outcome);

struct CheckedPoint {
  RationalVector point;  // in the coordinates of the top-level polytope
  std::string face;
  std::size_t face_dimension = 0;
  std::vector<PieceLabel> active;
  std::size_t independence_rank = 0;
  Rational bound;                   // g at the point
  std::optional<Rational> f_upper;  // oracle value
  Rational slack;                   // f_upper - g
  CheckOutcome outcome = CheckOutcome::kInconclusive;
  std::string note;
};

struct VerificationReport {
  std::vector<CheckedPoint> points;
  std::optional<Rational> max_slack;
  std::size_t failures = 0;
  std::size_t inconclusive = 0;

  bool passed() const { return failures == 0 && inconclusive == 0 && !points.empty(); }
  nlohmann::json to_json() const;
};

struct VerifyOptions {
  Rational tolerance = 0;  // a point passes when f_upper <= g + tolerance
};

// Checks f <= g on the relative boundary (recursively, through the reducer)
// and at every distinguished interior point. With f convex and the oracle
// sound, a passing report gives f <= g + tolerance on the whole polytope.
VerificationReport verify_bound(const UpperOracle& oracle, const AffineFamily& family, const Polytope& polytope,
                                const BoundaryReducer& reducer, const VerifyOptions& options = {});

// Extremal-construction atoms scaled to the first positive target, unioned
// with single-jump paths of height 4 * sum(target) so the LP is always feasible.
SupportTree construction_oracle_support(ProcessKind kind, const MomentVector& target, const Rational& p);

// Upper bounds f_MG / f_SMG at a point of the simplex by solving the exact LP
// on the support of the extremal constructions with parameter p, plus
// single-jump paths. Zero coordinates are stripped first and the witness is
// re-embedded and re-checked against the targets.
UpperOracle construction_lp_oracle(ProcessKind kind, const Rational& p);

}  // namespace mgbound
