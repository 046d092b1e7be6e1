#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "mgbound/rational.hpp"

namespace mgbound {

// Target increment moments a_i = E|X_i|, all finite and non-negative.
class MomentVector {
 public:
  explicit MomentVector(RationalVector values);

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  std::span<const Rational> values() const { return values_; }
  Rational total() const { return sum(values_); }

  MomentVector scaled(const Rational& lambda) const;
  MomentVector without(std::size_t index) const;

  friend bool operator==(const MomentVector&, const MomentVector&) = default;

 private:
  RationalVector values_;
};

// Identifies a piece g^family_index; families are numbered from 1 and
// indices are 1-based coordinate positions.
struct PieceLabel {
  int family = 0;
  int index = 0;

  std::string str() const;
  auto operator<=>(const PieceLabel&) const = default;
};

// x -> coeffs . x + offset
struct AffinePiece {
  PieceLabel label;
  RationalVector coeffs;
  Rational offset = 0;

  Rational operator()(std::span<const Rational> x) const;
};

enum class Assumption { kMartingale, kSubmartingale, kNoneLower, kNoneUpper, kKempermanSmit, kIndependentCentred };

std::string to_string(Assumption a);

struct BoundResult {
  Rational value;
  std::vector<PieceLabel> active;
  Assumption assumption = Assumption::kMartingale;
};

// A bound represented as the pointwise maximum of labelled affine pieces.
class AffineFamily {
 public:
  AffineFamily(std::size_t dimension, std::vector<AffinePiece> pieces);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return pieces_.size(); }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const AffinePiece& piece(const PieceLabel& label) const;

  Rational max_value(std::span<const Rational> x) const;
  // Labels of all pieces equal to the maximum at x, in family order.
  std::vector<PieceLabel> active_set(std::span<const Rational> x) const;
  BoundResult evaluate(std::span<const Rational> x, Assumption assumption) const;

 private:
  std::size_t dimension_;
  std::vector<AffinePiece> pieces_;
};

// g^1_k = a_k - sum_{i<k} a_i (k = 1..n) and g^2_k = a_k / 2 (k = 3..n).
AffineFamily pieces_mg(std::size_t n);

// g^1_k = a_k - sum_{i!=k} a_i       (k = 1..n)
// g^2_k = (a_k - sum_{i<k} a_i) / 2  (k = 1..n-1)
// g^3_k = (a_k - sum_{i>k} a_i) / 3  (k = 3..n)
// g^4_k = a_k / 4                    (k = 3..n-1)
AffineFamily pieces_smg(std::size_t n);

BoundResult eval_f_mg(const MomentVector& a);
BoundResult eval_f_smg(const MomentVector& a);

using Real = boost::multiprecision::mpfr_float;

// Lower and upper L^r bounds for sums with no structural assumption. The
// exact member is filled only for r = 1.
struct NormBound {
  std::optional<Rational> exact;
  Real approx;
};

NormBound eval_f_none(const Rational& r, const MomentVector& a, unsigned digits10 = 50);
NormBound eval_F_none(const Rational& r, const MomentVector& a, unsigned digits10 = 50);

Rational kemperman_smit(const MomentVector& a);

// n times the largest Binomial(n, floor(n/2)/n) probability.
Rational c_iidc(std::size_t n);

// max_k a_k when some a_k dominates the sum of the rest; nullopt means the
// value is not known in closed form.
std::optional<Rational> f_ic_partial(const MomentVector& a);

// Sandwich bounds max/2 <= f_MG <= max and max/4 <= f_SMG <= max.
struct Sandwich {
  Rational lower;
  Rational upper;
};
Sandwich mg_sandwich(const MomentVector& a);
Sandwich smg_sandwich(const MomentVector& a);

}  // namespace mgbound
