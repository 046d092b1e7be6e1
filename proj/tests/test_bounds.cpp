#include <doctest.h>

#include <random>

#include "mgbound/bounds.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace mgbound;
using namespace testing;

TEST_CASE("pieces_mg sizes and labels") {
  CHECK(pieces_mg(1).size() == 1);
  std::vector<std::string> n2;
  auto mg2 = pieces_mg(2);
  for (const auto& p : mg2.pieces()) n2.push_back(p.label.str());
  CHECK(n2 == std::vector<std::string>{"g^1_1", "g^1_2"});
  for (std::size_t n = 1; n <= 8; ++n) CHECK(pieces_mg(n).size() == n + (n > 2 ? n - 2 : 0));
  CHECK(pieces_mg(4).size() == 6);
  CHECK(pieces_mg(2).piece({1, 2})(std::vector<Rational>{q("3"), q("5")}) == 2);
}

TEST_CASE("pieces_smg sizes follow the four index ranges") {
  CHECK(pieces_smg(2).size() == 3);
  std::vector<std::string> n3;
  auto smg3 = pieces_smg(3);
  for (const auto& p : smg3.pieces()) n3.push_back(p.label.str());
  CHECK(sorted(n3) == sorted({"g^1_1", "g^1_2", "g^1_3", "g^2_1", "g^2_2", "g^3_3"}));
  CHECK(pieces_smg(4).size() == 10);
  for (std::size_t n = 1; n <= 8; ++n) {
    std::size_t expect = n + (n - 1) + (n > 2 ? n - 2 : 0) + (n > 3 ? n - 3 : 0);
    CHECK(pieces_smg(n).size() == expect);
  }
}

TEST_CASE("f_MG fixtures") {
  auto r = eval_f_mg(mv({"1", "2", "2", "2"}));
  CHECK(r.value == 1);
  CHECK(labels(r.active) == sorted({"g^1_1", "g^1_2", "g^2_3", "g^2_4"}));
  CHECK(eval_f_mg(mv({"5"})).value == 5);
  r = eval_f_mg(mv({"1", "1", "3"}));
  CHECK(r.value == q("3/2"));
  CHECK(labels(r.active) == std::vector<std::string>{"g^2_3"});
  CHECK(eval_f_mg(mv({"0", "0", "1"})).value == 1);
}

TEST_CASE("f_SMG fixtures") {
  auto r = eval_f_smg(mv({"3", "2"}));
  CHECK(r.value == q("3/2"));
  CHECK(labels(r.active) == std::vector<std::string>{"g^2_1"});
  r = eval_f_smg(mv({"1", "1", "2"}));
  CHECK(r.value == q("2/3"));
  CHECK(labels(r.active) == std::vector<std::string>{"g^3_3"});
  r = eval_f_smg(mv({"1", "1", "3", "1"}));
  CHECK(r.value == q("3/4"));
  CHECK(labels(r.active) == std::vector<std::string>{"g^4_3"});
  r = eval_f_smg(mv({"2", "4", "3"}));
  CHECK(r.value == 1);
  CHECK(labels(r.active) == sorted({"g^2_1", "g^2_2", "g^3_3"}));
}

TEST_CASE("every piece is needed: remark examples make it the unique active piece") {
  for (std::size_t n = 1; n <= 7; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      RationalVector a(n, 0);
      a[k - 1] = 1;
      auto r = eval_f_mg(MomentVector(a));
      CHECK(labels(r.active) == std::vector<std::string>{"g^1_" + std::to_string(k)});
      r = eval_f_smg(MomentVector(a));
      CHECK(labels(r.active) == std::vector<std::string>{"g^1_" + std::to_string(k)});
    }
    for (std::size_t k = 3; k <= n; ++k) {
      RationalVector a(n, 0);
      a[0] += 1;
      a[1] += 1;
      a[k - 1] += 3;
      CHECK(labels(eval_f_mg(MomentVector(a)).active) == std::vector<std::string>{"g^2_" + std::to_string(k)});
    }
    for (std::size_t k = 1; k + 1 <= n; ++k) {
      RationalVector a(n, 0);
      a[k - 1] += 3;
      a[n - 1] += 2;
      CHECK(labels(eval_f_smg(MomentVector(a)).active) == std::vector<std::string>{"g^2_" + std::to_string(k)});
    }
    for (std::size_t k = 3; k <= n; ++k) {
      RationalVector a(n, 0);
      a[0] += 1;
      a[1] += 1;
      a[k - 1] += 2;
      CHECK(labels(eval_f_smg(MomentVector(a)).active) == std::vector<std::string>{"g^3_" + std::to_string(k)});
    }
    for (std::size_t k = 3; k + 1 <= n; ++k) {
      RationalVector a(n, 0);
      a[0] += 1;
      a[1] += 1;
      a[k - 1] += 3;
      a[n - 1] += 1;
      CHECK(labels(eval_f_smg(MomentVector(a)).active) == std::vector<std::string>{"g^4_" + std::to_string(k)});
    }
  }
}

TEST_CASE("sandwich, triangle and explicit lower bounds on random vectors") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    auto a = random_moments(rng, 1 + trial % 7);
    Rational m = max_element(a.values());
    Rational fmg = eval_f_mg(a).value;
    Rational fsmg = eval_f_smg(a).value;
    CHECK(m / 2 <= fmg);
    CHECK(fmg <= m);
    CHECK(m / 4 <= fsmg);
    CHECK(fsmg <= m);
    CHECK(fmg <= a.total());
    CHECK(fsmg <= fmg);
    // explicit lower bound on g_n
    const std::size_t n = a.size();
    Rational lower = a[0] / 2;
    if (n == 1) lower = a[0];
    for (std::size_t k = 2; k + 1 <= n; ++k) lower = std::max<Rational>(lower, a[k - 1] / 4);
    if (n >= 2) lower = std::max<Rational>(lower, a[n - 1] / 3);
    CHECK(fsmg >= lower);
    CHECK(kemperman_smit(a) <= fmg);
  }
}

TEST_CASE("homogeneity with identical active sets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    auto a = random_moments(rng, 1 + trial % 6);
    Rational lambda(1 + static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 5));
    lambda.canonicalize();
    auto base = eval_f_mg(a);
    auto scaled = eval_f_mg(a.scaled(lambda));
    CHECK(scaled.value == lambda * base.value);
    CHECK(labels(scaled.active) == labels(base.active));
    auto sbase = eval_f_smg(a);
    auto sscaled = eval_f_smg(a.scaled(lambda));
    CHECK(sscaled.value == lambda * sbase.value);
    CHECK(labels(sscaled.active) == labels(sbase.active));
  }
}

TEST_CASE("a zero coordinate can be deleted") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 6;
    auto a = random_moments(rng, n);
    RationalVector v(a.values().begin(), a.values().end());
    std::size_t j = rng() % n;
    v[j] = 0;
    MomentVector with_zero(v);
    CHECK(eval_f_mg(with_zero).value == eval_f_mg(with_zero.without(j)).value);
    CHECK(eval_f_smg(with_zero).value == eval_f_smg(with_zero.without(j)).value);
  }
}

TEST_CASE("no-assumption bounds agree with the sign-pattern oracle") {
  auto a = mv({"5", "1", "1"});
  auto [lo, hi] = oracle::sign_pattern_extremes({q("5"), q("1"), q("1")});
  CHECK(*eval_f_none(1, a).exact == lo);
  CHECK(*eval_F_none(1, a).exact == hi);
  CHECK(lo == 3);
  CHECK(hi == 7);

  auto b = mv({"9", "1"});
  auto [lo2, hi2] = oracle::sign_pattern_extremes({q("3"), q("1")});
  CHECK(lo2 * lo2 == 4);
  CHECK(hi2 * hi2 == 16);
  auto f = eval_f_none(2, b);
  auto F = eval_F_none(2, b);
  CHECK_FALSE(f.exact.has_value());
  CHECK(boost::multiprecision::abs(f.approx - 4) < Real("1e-40"));
  CHECK(boost::multiprecision::abs(F.approx - 16) < Real("1e-40"));

  CHECK(*eval_f_none(1, mv({"1", "1"})).exact == 0);
  CHECK_THROWS(eval_f_none(q("1/2"), a));
}

TEST_CASE("Kemperman-Smit") {
  CHECK(kemperman_smit(mv({"1", "2", "2"})) == 1);
  CHECK(kemperman_smit(mv({"1"})) == 1);
  CHECK(kemperman_smit(mv({"1", "1", "1"})) == q("3/5"));
  CHECK(eval_f_mg(mv({"1", "1", "1"})).value == 1);
  for (std::size_t n = 1; n <= 9; ++n) {
    RationalVector ray(n, 2);
    ray[0] = 1;
    MomentVector a(ray);
    CHECK(kemperman_smit(a) == eval_f_mg(a).value);
  }
}

TEST_CASE("c_iidc matches the binomial pmf oracle") {
  CHECK(c_iidc(1) == 1);
  CHECK(c_iidc(2) == 1);
  CHECK(c_iidc(3) == q("4/3"));
  for (std::size_t n = 1; n <= 25; ++n) {
    Rational qn(static_cast<long>(n / 2), static_cast<long>(n));
    qn.canonicalize();
    auto pmf = oracle::binomial_pmf(n, qn);
    CHECK(c_iidc(n) == max_element(pmf) * static_cast<long>(n));
  }
  double ratio = c_iidc(200).get_d() / std::sqrt(2.0 * 200 / M_PI);
  CHECK(ratio >= 0.9);
  CHECK(ratio <= 1.1);
}

TEST_CASE("f_IC partial result") {
  CHECK(*f_ic_partial(mv({"5", "1", "1"})) == 5);
  CHECK_FALSE(f_ic_partial(mv({"1", "1", "1"})).has_value());
  CHECK(*f_ic_partial(mv({"1"})) == 1);
}

TEST_CASE("moment vectors reject bad input") {
  CHECK_THROWS(MomentVector(RationalVector{}));
  CHECK_THROWS(MomentVector(RationalVector{q("-1")}));
  CHECK_THROWS(pieces_mg(0));
  CHECK_THROWS(parse_rational("0.5"));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("1/-2"));
  CHECK(parse_rational("-6/4") == q("-3/2"));
}
