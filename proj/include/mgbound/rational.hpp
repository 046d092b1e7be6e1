#pragma once

#include <gmpxx.h>

#include <json.hpp>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mgbound {

// Exact rationals are GMP's mpq_class; every value is kept canonical.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// Parses "n" or "n/d" (optional sign). Decimal literals are rejected so
// that all downstream comparisons stay exact.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
inline Rational positive_part(const Rational& q) { return q > 0 ? q : Rational(0); }
inline Rational negative_part(const Rational& q) { return q < 0 ? Rational(-q) : Rational(0); }

Rational sum(std::span<const Rational> values);
Rational max_element(std::span<const Rational> values);

// [num, den] with each integer emitted as a JSON number when it fits in
// int64, otherwise as a decimal string.
nlohmann::json to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

}  // namespace mgbound
