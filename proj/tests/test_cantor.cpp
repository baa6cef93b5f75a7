#include <doctest.h>

#include <cmath>
#include <set>

#include "dioph/cantor.hpp"

using namespace dioph;

namespace {

// Exhaustive oracle: every level-n sum word P, each covering the cells k with
// [P + tmin, P + tmax] meeting [k, k + 1] (units of b^-n).
struct Exhaustive {
  std::uint64_t intervals = 0;
  std::vector<long> uncovered;
};

Exhaustive enumerate(int b, const Alphabet& w, SumOp op, std::size_t n) {
  std::set<int> S;
  for (Digit u : w)
    for (Digit v : w) S.insert(u + (op == SumOp::plus ? v : b - 1 - v));
  std::set<long> Ps = {0};
  for (std::size_t i = 0; i < n; ++i) {
    std::set<long> next;
    for (long P : Ps)
      for (int s : S) next.insert(P * b + s);
    Ps = std::move(next);
  }
  const ExactRational tmin(*S.begin(), b - 1), tmax(*S.rbegin(), b - 1);
  long Bn = 1;
  for (std::size_t i = 0; i < n; ++i) Bn *= b;
  const auto ceil_q = [](const ExactRational& r) { return -floor_of(-r).get_si(); };
  const long k_lo = ceil_q(tmin * Bn);
  const long k_hi = floor_of(tmax * Bn).get_si() - 1;
  std::set<long> covered;
  for (long P : Ps) {
    const long from = ceil_q(ExactRational(P) + tmin - 1);
    const long to = floor_of(ExactRational(P) + tmax).get_si();
    for (long k = from; k <= to; ++k) covered.insert(k);
  }
  Exhaustive out;
  for (long k = k_lo; k <= k_hi; ++k) {
    ++out.intervals;
    if (!covered.count(k)) out.uncovered.push_back(k);
  }
  return out;
}

}  // namespace

TEST_CASE("membership") {
  const auto spec = make_spec(3, {{0, 2}});
  CHECK(membership({DigitExpansion(3, {2, 0, 2, 0}, true)}, spec));
  CHECK_FALSE(membership({DigitExpansion(3, {1}, true)}, spec));
  CHECK_THROWS_AS(membership({DigitExpansion(5, {1}, true)}, spec), std::invalid_argument);
}

TEST_CASE("samples stay in the set and are reproducible") {
  const auto spec = make_spec(5, {{0, 3, 4}, {1, 2}});
  for (unsigned long long seed = 0; seed < 50; ++seed) {
    const auto x = sample(spec, 64, seed);
    CHECK(membership(x, spec));
    CHECK(x == sample(spec, 64, seed));
  }
  CHECK(sample(spec, 64, 1) != sample(spec, 64, 2));
}

TEST_CASE("sample digit frequencies are uniform on W") {
  const auto spec = make_spec(7, {{0, 2, 5}});
  std::vector<long> counts(7, 0);
  const std::size_t depth = 10;
  const int draws = 10000;
  for (int s = 0; s < draws; ++s) {
    const DigitVector x = sample(spec, depth, s);
    for (Digit d : x[0].digits()) ++counts[d];
  }
  const double n = static_cast<double>(draws) * depth;
  const double p = 1.0 / 3.0;
  const double sigma = std::sqrt(n * p * (1 - p));
  for (Digit d : {0, 2, 5}) CHECK(std::abs(counts[d] - n * p) <= 3 * sigma);
  CHECK(counts[1] == 0);
}

TEST_CASE("full alphabet samples plain digits") {
  const auto spec = make_spec(4, {{0, 1, 2, 3}});
  std::set<Digit> seen;
  const DigitVector x = sample(spec, 200, 3);
  for (Digit d : x[0].digits()) seen.insert(d);
  CHECK(seen.size() == 4);
}

TEST_CASE("dimensions") {
  const auto one = dims(make_spec(3, {{0, 2}}));
  CHECK(std::abs(one.d[0] - 0.630930) < 1e-6);
  const auto two = dims(make_spec(3, {{0, 2}, {0, 2}}));
  CHECK(std::abs(two.dim_K - 1.261860) < 1e-6);
  CHECK(dims(make_spec(6, {{0, 1, 2, 3, 4, 5}})).d[0] == 1.0);
  double prev = 0;
  for (int size = 2; size <= 9; ++size) {
    Alphabet w;
    for (int d = 0; d < size; ++d) w.push_back(static_cast<Digit>(d));
    const double d = dims(make_spec(9, {w})).d[0];
    CHECK(d > prev);
    prev = d;
  }
}

TEST_CASE("spec validation and text form") {
  CHECK_THROWS_AS(make_spec(3, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_spec(3, {{0, 3}}), std::invalid_argument);
  const auto spec = make_spec(10, {{7, 0, 7}, {1, 2, 9}});
  CHECK(to_text(spec) == "b=10;W1=0,7;W2=1,2,9");
  CHECK(to_text(spec_from_text(to_text(spec))) == to_text(spec));
  CHECK_THROWS_AS(spec_from_text("b=3;W2=0,2"), std::invalid_argument);
}

TEST_CASE("rational shift") {
  const auto s = normalize_shift(make_spec(5, {{1, 3}, {0, 4}}));
  CHECK(s.spec.alphabets[0] == Alphabet{0, 2});
  CHECK(s.shift[0] == ExactRational(1, 4));
  CHECK(s.shift[1] == 0);
}

TEST_CASE("middle-third set: sum and difference cover at depth 12") {
  const auto spec = make_spec(3, {{0, 2}});
  const auto plus = sumset_cover_check(spec, SumOp::plus, 12);
  CHECK(plus.covered);
  CHECK(plus.target_lo == 0);
  CHECK(plus.target_hi == 2);
  const auto minus = sumset_cover_check(spec, SumOp::minus, 12);
  CHECK(minus.covered);
  CHECK(minus.target_lo == -1);
  CHECK(minus.target_hi == 1);
}

TEST_CASE("binary digits in base 10 leave gaps") {
  const auto r = sumset_cover_check(make_spec(10, {{0, 1}}), SumOp::plus, 6);
  CHECK_FALSE(r.covered);
  CHECK(r.uncovered > 0);
  CHECK(r.witness_gaps.size() == 32);
  for (const auto& [lo, hi] : r.witness_gaps) CHECK(hi - lo == ExactRational(1, 1000000));
}

TEST_CASE("cover check agrees with exhaustive enumeration at depth 6") {
  const std::vector<std::pair<int, Alphabet>> cases = {
      {3, {0, 2}}, {3, {0, 1}}, {4, {0, 3}}, {5, {0, 2, 4}}, {5, {0, 4}},
      {6, {0, 1, 5}}, {7, {0, 3}}, {10, {0, 1}}, {4, {1, 2}}, {5, {1, 3}}};
  for (const auto& [b, w] : cases) {
    for (SumOp op : {SumOp::plus, SumOp::minus}) {
      for (std::size_t n : {1u, 2u, 3u, 6u}) {
        const auto r = sumset_cover_check(make_spec(b, {w}), op, n, 1000000);
        const auto o = enumerate(b, w, op, n);
        CAPTURE(b);
        CAPTURE(n);
        CHECK(r.intervals == o.intervals);
        CHECK(r.uncovered == o.uncovered.size());
        REQUIRE(r.witness_gaps.size() == o.uncovered.size());
        const ExactRational shift = op == SumOp::plus ? 0 : 1;
        for (std::size_t i = 0; i < o.uncovered.size(); ++i) {
          ExactRational want(o.uncovered[i], ipow(b, n));
          want.canonicalize();
          CHECK(r.witness_gaps[i].first == want - shift);
        }
      }
    }
  }
}

TEST_CASE("sum cover is symmetric under reflection of the alphabet") {
  for (int b : {3, 4, 5, 7, 10}) {
    for (unsigned mask = 3; mask < (1u << std::min(b, 6)); ++mask) {
      Alphabet w, r;
      for (int d = 0; d < b; ++d)
        if (mask >> d & 1u) {
          w.push_back(static_cast<Digit>(d));
          r.push_back(static_cast<Digit>(b - 1 - d));
        }
      if (w.size() < 2) continue;
      const auto a = sumset_cover_check(make_spec(b, {w}), SumOp::plus, 5);
      const auto z = sumset_cover_check(make_spec(b, {r}), SumOp::plus, 5);
      CHECK(a.uncovered == z.uncovered);
      CHECK(a.covered == z.covered);
    }
  }
}

TEST_CASE("cover preconditions") {
  CHECK_THROWS_AS(sumset_cover_check(make_spec(3, {{0, 2}, {0, 2}}), SumOp::plus, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(sumset_cover_check(make_spec(3, {{0, 2}}), SumOp::plus,
                                     cover_depth_cap(3) + 1),
                  std::invalid_argument);
  CHECK(cover_depth_cap(3) >= 12);
}
