#include "mgbound/bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace mgbound {

MomentVector::MomentVector(RationalVector values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("moment vector must have n >= 1 entries");
  for (const auto& v : values_)
    if (v < 0) throw std::invalid_argument("moment entries must be non-negative, got " + to_string(v));
}

MomentVector MomentVector::scaled(const Rational& lambda) const {
  if (lambda < 0) throw std::invalid_argument("scale factor must be non-negative");
  RationalVector out = values_;
  for (auto& v : out) v *= lambda;
  return MomentVector(std::move(out));
}

MomentVector MomentVector::without(std::size_t index) const {
  if (index >= values_.size() || values_.size() == 1)
    throw std::invalid_argument("cannot delete coordinate from moment vector");
  RationalVector out = values_;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(index));
  return MomentVector(std::move(out));
}

std::string PieceLabel::str() const {
  return "g^" + std::to_string(family) + "_" + std::to_string(index);
}

Rational AffinePiece::operator()(std::span<const Rational> x) const {
  if (x.size() != coeffs.size()) throw std::invalid_argument("piece evaluated at point of wrong dimension");
  Rational v = offset;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (coeffs[i] != 0) v += coeffs[i] * x[i];
  return v;
}

std::string to_string(Assumption a) {
  switch (a) {
    case Assumption::kMartingale: return "MG";
    case Assumption::kSubmartingale: return "SMG";
    case Assumption::kNoneLower: return "N-lower";
    case Assumption::kNoneUpper: return "N-upper";
    case Assumption::kKempermanSmit: return "KS";
    case Assumption::kIndependentCentred: return "IC-partial";
  }
  return "?";
}

AffineFamily::AffineFamily(std::size_t dimension, std::vector<AffinePiece> pieces)
    : dimension_(dimension), pieces_(std::move(pieces)) {
  for (const auto& p : pieces_)
    if (p.coeffs.size() != dimension_) throw std::invalid_argument("piece dimension mismatch in family");
}

const AffinePiece& AffineFamily::piece(const PieceLabel& label) const {
  auto it = std::find_if(pieces_.begin(), pieces_.end(), [&](const AffinePiece& p) { return p.label == label; });
  if (it == pieces_.end()) throw std::out_of_range("no piece " + label.str());
  return *it;
}

Rational AffineFamily::max_value(std::span<const Rational> x) const {
  if (pieces_.empty()) throw std::logic_error("max over an empty family");
  Rational best = pieces_.front()(x);
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    Rational v = pieces_[i](x);
    if (v > best) best = std::move(v);
  }
  return best;
}

std::vector<PieceLabel> AffineFamily::active_set(std::span<const Rational> x) const {
  return evaluate(x, Assumption::kMartingale).active;
}

BoundResult AffineFamily::evaluate(std::span<const Rational> x, Assumption assumption) const {
  if (pieces_.empty()) throw std::logic_error("max over an empty family");
  std::vector<Rational> values;
  values.reserve(pieces_.size());
  for (const auto& p : pieces_) values.push_back(p(x));
  BoundResult result{max_element(values), {}, assumption};
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (values[i] == result.value) result.active.push_back(pieces_[i].label);
  return result;
}

AffineFamily pieces_mg(std::size_t n) {
  if (n == 0) throw std::invalid_argument("pieces_mg requires n >= 1");
  std::vector<AffinePiece> pieces;
  for (std::size_t k = 1; k <= n; ++k) {
    RationalVector c(n, 0);
    for (std::size_t i = 1; i < k; ++i) c[i - 1] = -1;
    c[k - 1] = 1;
    pieces.push_back({{1, static_cast<int>(k)}, std::move(c), 0});
  }
  for (std::size_t k = 3; k <= n; ++k) {
    RationalVector c(n, 0);
    c[k - 1] = Rational(1, 2);
    pieces.push_back({{2, static_cast<int>(k)}, std::move(c), 0});
  }
  return AffineFamily(n, std::move(pieces));
}

AffineFamily pieces_smg(std::size_t n) {
  if (n == 0) throw std::invalid_argument("pieces_smg requires n >= 1");
  std::vector<AffinePiece> pieces;
  auto add = [&](int family, std::size_t k, auto coeff_of) {
    RationalVector c(n, 0);
    for (std::size_t i = 1; i <= n; ++i) c[i - 1] = coeff_of(i);
    pieces.push_back({{family, static_cast<int>(k)}, std::move(c), 0});
  };
  for (std::size_t k = 1; k <= n; ++k)
    add(1, k, [k](std::size_t i) { return Rational(i == k ? 1 : -1); });
  for (std::size_t k = 1; k + 1 <= n; ++k)
    add(2, k, [k](std::size_t i) { return i == k ? Rational(1, 2) : i < k ? Rational(-1, 2) : Rational(0); });
  for (std::size_t k = 3; k <= n; ++k)
    add(3, k, [k](std::size_t i) { return i == k ? Rational(1, 3) : i > k ? Rational(-1, 3) : Rational(0); });
  for (std::size_t k = 3; k + 1 <= n; ++k)
    add(4, k, [k](std::size_t i) { return i == k ? Rational(1, 4) : Rational(0); });
  return AffineFamily(n, std::move(pieces));
}

BoundResult eval_f_mg(const MomentVector& a) {
  return pieces_mg(a.size()).evaluate(a.values(), Assumption::kMartingale);
}

BoundResult eval_f_smg(const MomentVector& a) {
  return pieces_smg(a.size()).evaluate(a.values(), Assumption::kSubmartingale);
}

namespace {

class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits10) : saved_(Real::default_precision()) {
    Real::default_precision(digits10);
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

Real to_real(const Rational& q) {
  Real x;
  mpfr_set_q(x.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return x;
}

std::vector<Real> roots(const Rational& r, const MomentVector& a) {
  if (r < 1) throw std::invalid_argument("exponent r must be >= 1");
  Real inv = 1 / to_real(r);
  std::vector<Real> out;
  for (const auto& v : a.values()) out.push_back(v == 0 ? Real(0) : Real(boost::multiprecision::pow(to_real(v), inv)));
  return out;
}

}  // namespace

NormBound eval_f_none(const Rational& r, const MomentVector& a, unsigned digits10) {
  PrecisionGuard guard(digits10);
  NormBound out;
  if (r == 1) {
    Rational total = a.total();
    Rational best = 0;
    for (const auto& v : a.values()) best = std::max(best, positive_part(v - (total - v)));
    out.exact = best;
    out.approx = to_real(best);
    return out;
  }
  auto root = roots(r, a);
  Real total = 0;
  for (const auto& v : root) total += v;
  Real best = 0;
  for (const auto& v : root) {
    Real diff = v - (total - v);
    if (diff > best) best = diff;
  }
  out.approx = boost::multiprecision::pow(best, to_real(r));
  return out;
}

NormBound eval_F_none(const Rational& r, const MomentVector& a, unsigned digits10) {
  PrecisionGuard guard(digits10);
  NormBound out;
  if (r == 1) {
    out.exact = a.total();
    out.approx = to_real(*out.exact);
    return out;
  }
  Real total = 0;
  for (const auto& v : roots(r, a)) total += v;
  out.approx = boost::multiprecision::pow(total, to_real(r));
  return out;
}

Rational kemperman_smit(const MomentVector& a) {
  return a.total() / Rational(static_cast<long>(2 * a.size() - 1));
}

Rational c_iidc(std::size_t n) {
  if (n == 0) throw std::invalid_argument("c_iidc requires n >= 1");
  const long nn = static_cast<long>(n);
  Rational q(nn / 2, nn);
  q.canonicalize();
  Rational one_minus = 1 - q;
  Rational best = 0;
  mpz_class binom = 1;  // C(n, k)
  for (long k = 0; k <= nn; ++k) {
    mpq_class qk, rest;
    mpz_class num_k, den_k, num_r, den_r;
    mpz_pow_ui(num_k.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(den_k.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(num_r.get_mpz_t(), one_minus.get_num_mpz_t(), static_cast<unsigned long>(nn - k));
    mpz_pow_ui(den_r.get_mpz_t(), one_minus.get_den_mpz_t(), static_cast<unsigned long>(nn - k));
    Rational pmf(binom * num_k * num_r, den_k * den_r);
    pmf.canonicalize();
    if (pmf > best) best = pmf;
    binom = binom * (nn - k) / (k + 1);
  }
  return best * nn;
}

std::optional<Rational> f_ic_partial(const MomentVector& a) {
  Rational total = a.total();
  for (const auto& v : a.values())
    if (v >= total - v) return max_element(a.values());
  return std::nullopt;
}

Sandwich mg_sandwich(const MomentVector& a) {
  Rational m = max_element(a.values());
  return {m / 2, m};
}

Sandwich smg_sandwich(const MomentVector& a) {
  Rational m = max_element(a.values());
  return {m / 4, m};
}

}  // namespace mgbound
