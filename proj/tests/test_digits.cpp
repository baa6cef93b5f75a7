#include <doctest.h>

#include <random>

#include "dioph/digits.hpp"

using namespace dioph;

namespace {

DigitExpansion dec(const std::string& s, bool exact = true) {
  std::vector<Digit> ds;
  for (char c : s) ds.push_back(static_cast<Digit>(c - '0'));
  return DigitExpansion(10, ds, exact);
}

}  // namespace

TEST_CASE("add: carries out of the top digit") {
  const auto r = add(dec("25"), dec("75"));
  CHECK(r.carry == 1);
  CHECK(r.sum == dec("00"));
}

TEST_CASE("add: zeros are the identity") {
  const auto x = dec("31415");
  const auto r = add(x, DigitExpansion::zeros(10, 5));
  CHECK(r.carry == 0);
  CHECK(r.sum == x);
}

TEST_CASE("add: base 3 propagation") {
  const auto r = add(DigitExpansion(3, {0, 2}, true), DigitExpansion(3, {0, 1}, true));
  CHECK(r.carry == 0);
  CHECK(r.sum == DigitExpansion(3, {1, 0}, true));
}

TEST_CASE("add: exhaustive base 2 commutativity and associativity") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const unsigned N = 1u << n;
    const auto mk = [&](unsigned v) {
      std::vector<Digit> ds(n);
      for (std::size_t i = 0; i < n; ++i) ds[n - 1 - i] = (v >> i) & 1u;
      return DigitExpansion(2, ds, true);
    };
    for (unsigned a = 0; a < N; ++a) {
      for (unsigned b = 0; b < N; ++b) {
        const auto ab = add(mk(a), mk(b));
        const auto ba = add(mk(b), mk(a));
        REQUIRE(ab.carry == ba.carry);
        REQUIRE(ab.sum == ba.sum);
        // Plain integer oracle.
        REQUIRE(ab.sum.numerator() + ab.carry * N == a + b);
        if (n > 4) continue;
        for (unsigned c = 0; c < N; ++c) {
          const auto l1 = add(ab.sum, mk(c));
          const auto bc = add(mk(b), mk(c));
          const auto r1 = add(mk(a), bc.sum);
          REQUIRE(l1.sum == r1.sum);
          REQUIRE(ab.carry + l1.carry == bc.carry + r1.carry);
        }
      }
    }
  }
  // Depth 8 without the triple loop.
  const unsigned N = 256;
  for (unsigned a = 0; a < N; ++a)
    for (unsigned b = 0; b < N; ++b) {
      const auto x = DigitExpansion::from_numerator(a, 2, 8, true);
      const auto y = DigitExpansion::from_numerator(b, 2, 8, true);
      const auto s = add(x, y);
      REQUIRE(s.sum.numerator() + s.carry * N == a + b);
    }
}

TEST_CASE("subtract inverts add modulo 1") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const int b = 2 + static_cast<int>(rng() % 15);
    std::vector<Digit> xs(40), ys(40);
    for (auto& d : xs) d = static_cast<Digit>(rng() % b);
    for (auto& d : ys) d = static_cast<Digit>(rng() % b);
    const DigitExpansion x(b, xs, true), y(b, ys, true);
    const auto s = add(x, y);
    const auto d = subtract(s.sum, y);
    CHECK(d.difference == x);
    CHECK(d.borrow == s.carry);
  }
}

TEST_CASE("from_rational round trip") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 500; ++t) {
    const int b = 2 + static_cast<int>(rng() % 30);
    const std::size_t depth = 1 + rng() % 60;
    const BigInt q = 1 + static_cast<long>(rng() % 100000);
    const BigInt p = static_cast<long>(rng() % q.get_ui());
    const auto x = from_rational(p, q, b, depth);
    const ExactRational diff = ExactRational(p, q) - x.value();
    REQUIRE(diff >= 0);
    REQUIRE(diff < ExactRational(1, ipow(b, depth)));
    REQUIRE(x.exact() == (diff == 0));
  }
}

TEST_CASE("from_rational uses canonical digits") {
  CHECK(from_rational(1, 2, 10, 3) == dec("500"));
  CHECK(from_rational(1, 3, 3, 4) == DigitExpansion(3, {1, 0, 0, 0}, true));
  CHECK_FALSE(from_rational(1, 3, 10, 4).exact());
  CHECK_THROWS_AS(from_rational(1, 1, 10, 3), std::invalid_argument);
}

TEST_CASE("splice: idempotent and commuting on disjoint sets") {
  const auto x = dec("1234567890");
  const std::vector<std::size_t> P1 = {1, 3, 5};
  const std::vector<Digit> R1 = {9, 9, 9};
  const std::vector<std::size_t> P2 = {2, 10};
  const std::vector<Digit> R2 = {0, 7};
  const auto once = splice(x, P1, R1);
  CHECK(splice(once, P1, R1) == once);
  CHECK(splice(splice(x, P1, R1), P2, R2) == splice(splice(x, P2, R2), P1, R1));
  CHECK(once == dec("9294967890"));
  const std::vector<std::size_t> bad = {11};
  const std::vector<Digit> one = {1};
  CHECK_THROWS_AS(splice(x, bad, one), std::out_of_range);
}

TEST_CASE("frac_error examples") {
  const auto r = frac_error(dec("111"), 1, DigitExpansion::zeros(10, 1));
  CHECK(r.p == 1);
  CHECK(r.err == ExactRational(11, 100));

  // Zeros on positions 5..8 force the error below 3^-4.
  const DigitExpansion x(3, {2, 1, 2, 2, 0, 0, 0, 0, 1, 2, 2, 1, 0, 2, 1, 1}, false);
  const auto e = frac_error(x, 4, DigitExpansion::zeros(3, 1));
  CHECK(e.err <= ExactRational(1, 81));
  CHECK(e.uncertainty == ExactRational(1, ipow(3, 12)));
}

TEST_CASE("frac_error at h = 0 against zero") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const int b = 2 + static_cast<int>(rng() % 9);
    std::vector<Digit> ds(12);
    for (auto& d : ds) d = static_cast<Digit>(rng() % b);
    const DigitExpansion x(b, ds, true);
    const auto r = frac_error(x, 0, DigitExpansion::zeros(b, 1));
    const ExactRational v = x.value();
    CHECK((r.p == 0 || r.p == 1));
    CHECK(r.err == (v < 1 - v ? v : ExactRational(1 - v)));
  }
}

TEST_CASE("frac_error against a target and its tie rule") {
  // 0.5 is halfway between 0 and 1 away from target 0: the smaller p wins.
  const auto r = frac_error(dec("5"), 0, DigitExpansion::zeros(10, 1));
  CHECK(r.p == 0);
  CHECK(r.err == ExactRational(1, 2));
  // 10 * 0.57 = 5.7, target 0.6: p = 5, err = 0.1.
  const auto t = frac_error(dec("57"), 1, dec("6"));
  CHECK(t.p == 5);
  CHECK(t.err == ExactRational(1, 10));
  // 10 * 0.51 = 5.1, target 0.9: p = 4, err = 0.2.
  const auto w = frac_error(dec("51"), 1, dec("9"));
  CHECK(w.p == 4);
  CHECK(w.err == ExactRational(1, 5));
}

TEST_CASE("frac_error depth guard") {
  const auto x = dec("1234567890", false);
  CHECK_NOTHROW(frac_error(x, 2, DigitExpansion::zeros(10, 1)));
  CHECK_THROWS_AS(frac_error(x, 3, DigitExpansion::zeros(10, 1)), InsufficientDepth);
  CHECK_NOTHROW(frac_error(x.with_exact(true), 10, DigitExpansion::zeros(10, 1)));
}

TEST_CASE("text form round trips bit for bit") {
  std::mt19937_64 rng(9);
  for (int base : {2, 3, 10, 11, 36, 1000, 65535}) {
    std::vector<Digit> ds(70);
    for (auto& d : ds) d = static_cast<Digit>(rng() % base);
    for (bool exact : {true, false}) {
      const DigitExpansion x(base, ds, exact);
      const std::string s = to_text(x);
      CHECK(from_text(s) == x);
      CHECK(to_text(from_text(s)) == s);
      CHECK(DigitExpansion::from_numerator(x.numerator(), base, 70, exact) == x);
    }
  }
  CHECK(to_text(DigitExpansion(12, {11, 0, 3}, true)) == "b=12;exact=1;d=11,0,3");
  CHECK(to_text(dec("205", false)) == "b=10;exact=0;d=205");
  CHECK_THROWS_AS(from_text("b=3;exact=1;d=123"), std::invalid_argument);
  CHECK_THROWS_AS(from_text("b=3;d=12"), std::invalid_argument);
}

TEST_CASE("digit validation") {
  CHECK_THROWS_AS(DigitExpansion(3, {0, 3}, true), std::invalid_argument);
  CHECK_THROWS_AS(DigitExpansion(1, {0}, true), std::invalid_argument);
}
