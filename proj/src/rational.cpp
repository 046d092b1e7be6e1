#include "mgbound/rational.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mgbound {
namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

mpz_class parse_integer(std::string_view s) {
  std::string digits(s);
  if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
  return mpz_class(digits, 10);
}

nlohmann::json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

mpz_class integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()), 10);
  if (j.is_string() && is_integer_literal(j.get<std::string>()))
    return parse_integer(j.get<std::string>());
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num))
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Rational(parse_integer(num));
  std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(den) || den.front() == '-' || den.front() == '+')
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  mpz_class d = parse_integer(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational sum(std::span<const Rational> values) {
  Rational total = 0;
  for (const auto& v : values) total += v;
  return total;
}

Rational max_element(std::span<const Rational> values) {
  if (values.empty()) throw std::invalid_argument("max_element of empty range");
  Rational best = values.front();
  for (const auto& v : values)
    if (v > best) best = v;
  return best;
}

nlohmann::json to_json(const Rational& q) {
  return nlohmann::json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())});
}

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_array() && j.size() == 2) {
    mpz_class den = integer_from_json(j[1]);
    if (den == 0) throw std::invalid_argument("zero denominator in " + j.dump());
    Rational q(integer_from_json(j[0]), den);
    q.canonicalize();
    return q;
  }
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected [num, den], got " + j.dump());
}

}  // namespace mgbound
