#include <doctest.h>

#include "dioph/construct.hpp"

using namespace dioph;

namespace {

PlanParams base_params(PlanKind kind, std::size_t m, int b, std::size_t depth) {
  PlanParams p;
  p.kind = kind;
  p.m = m;
  p.base = b;
  p.depth = depth;
  return p;
}

DigitVector rational_vector(const std::vector<std::pair<long, long>>& vs, int b,
                            std::size_t depth) {
  DigitVector out;
  for (auto [p, q] : vs) out.push_back(from_rational(p, q, b, depth));
  return out;
}

// One sample parameter set per mode.
std::vector<PlanParams> all_modes(std::size_t depth) {
  std::vector<PlanParams> out;
  out.push_back(base_params(PlanKind::homogeneous, 2, 3, depth));
  auto inh = base_params(PlanKind::inhomogeneous, 2, 3, depth);
  inh.targets = {rational_vector({{41421356, 100000000}, {14159265, 100000000}}, 3, depth)};
  out.push_back(inh);
  auto multi = base_params(PlanKind::multi, 1, 5, depth);
  multi.targets = {rational_vector({{1, 7}}, 5, depth), rational_vector({{2, 3}}, 5, depth)};
  out.push_back(multi);
  auto liou = base_params(PlanKind::liouville, 1, 3, depth);
  liou.nu0 = 2;
  liou.nu1 = 2;
  liou.targets = {rational_vector({{0, 1}}, 3, depth), rational_vector({{1, 5}}, 3, depth),
                  rational_vector({{5, 7}}, 3, depth)};
  out.push_back(liou);
  auto cantor = base_params(PlanKind::cantor, 2, 3, depth);
  cantor.alphabets = {{0, 2}, {0, 2}};
  out.push_back(cantor);
  return out;
}

DigitVector alphabet_vector(const std::vector<Alphabet>& ws, int b, std::size_t depth,
                            unsigned long long seed) {
  const DigitVector raw = random_vector(b, ws.size(), depth, seed);
  DigitVector out;
  for (std::size_t l = 0; l < ws.size(); ++l) {
    std::vector<Digit> ds;
    for (Digit d : raw[l].digits()) ds.push_back(ws[l][d % ws[l].size()]);
    out.emplace_back(b, ds, false);
  }
  return out;
}

}  // namespace

TEST_CASE("make_plan examples") {
  const SplitPlan h = make_plan(base_params(PlanKind::homogeneous, 1, 3, 200));
  CHECK(h.y0 == ExactRational(1, 4));
  CHECK(h.y1 == ExactRational(1, 4));

  auto mp = base_params(PlanKind::multi, 1, 3, 200);
  mp.targets = {rational_vector({{1, 3}}, 3, 200), rational_vector({{1, 9}}, 3, 200)};
  const SplitPlan multi = make_plan(mp);
  CHECK(multi.ladder.nu1 == 2);
  CHECK(multi.ladder.schedule.period() == 3);
  CHECK(multi.ladder.intervals[0].role.target == 0);
  CHECK(multi.ladder.intervals[1].role.target == 1);
  CHECK(multi.ladder.intervals[2].role.target == 2);
  CHECK(multi.ladder.intervals[3].role.target == 0);

  auto cp = base_params(PlanKind::cantor, 2, 3, 200);
  cp.alphabets = {{0, 2}, {0, 2}};
  CHECK_NOTHROW(make_plan(cp));
  cp.alphabets = {{1, 2}, {0, 2}};
  CHECK_THROWS_AS(make_plan(cp), std::invalid_argument);
  cp.alphabets = {{0}, {0, 2}};
  CHECK_THROWS_AS(make_plan(cp), std::invalid_argument);

  auto bad = base_params(PlanKind::inhomogeneous, 1, 3, 200);
  bad.targets = {rational_vector({{1, 2}}, 5, 200)};
  CHECK_THROWS_AS(make_plan(bad), std::invalid_argument);
  CHECK_THROWS_AS(make_plan(base_params(PlanKind::multi, 1, 3, 200)), std::invalid_argument);
}

TEST_CASE("all nines, base 10: forced zeros and exact reconstruction") {
  const SplitPlan plan = make_plan(base_params(PlanKind::homogeneous, 1, 10, 160));
  const DigitVector xi = {DigitExpansion(10, std::vector<Digit>(160, 9), false)};
  const SplitResult r = split(xi, plan);
  const SumResult s = add(r.x0[0], r.x1[0]);
  CHECK(s.sum.digits().size() == 160);
  CHECK(std::equal(s.sum.digits().begin(), s.sum.digits().end(), xi[0].digits().begin()));
  for (std::size_t pos = 1; pos <= 160; ++pos) {
    const std::size_t j = plan.ladder.interval_of(pos);
    // The part owning interval j is zero there; the other copies xi.
    const auto& own = j % 2 == 0 ? r.x0[0] : r.x1[0];
    const auto& other = j % 2 == 0 ? r.x1[0] : r.x0[0];
    CHECK(own.at(pos) == 0);
    CHECK(other.at(pos) == 9);
  }
}

TEST_CASE("inhomogeneous target 1/2 in base 10") {
  auto p = base_params(PlanKind::inhomogeneous, 1, 10, 400);
  p.targets = {{from_rational(1, 2, 10, 400)}};
  const SplitPlan plan = make_plan(p);
  const SplitResult r = split(random_vector(10, 1, 400, 3), plan);
  for (const Interval& iv : plan.ladder.intervals) {
    if (iv.role.owner != 1 || iv.h > 400) continue;
    CHECK(r.x1[0].at(iv.g) == 5);
    CHECK(r.x1[0].at(iv.g + 1) == 0);
    CHECK(r.x1[0].at(iv.g + 2) == 0);
  }
  for (const Certificate& c : r.certificates) {
    CHECK(c.pass);
    ExactRational want(certificate_constant(c.target), ipow(10, c.h_next - c.h));
    want.canonicalize();
    CHECK(c.bound == want);
  }
}

TEST_CASE("reconstruction and certificate soundness over seeds, every mode") {
  for (const PlanParams& p : all_modes(600)) {
    const SplitPlan plan = make_plan(p);
    for (unsigned long long seed = 0; seed < 200; ++seed) {
      const DigitVector xi = p.kind == PlanKind::cantor
                                 ? alphabet_vector(p.alphabets, p.base, p.depth, seed)
                                 : random_vector(p.base, p.m, p.depth, seed);
      const SplitResult r = split(xi, plan);
      for (std::size_t l = 0; l < p.m; ++l) {
        const SumResult s = add(r.x0[l], r.x1[l]);
        REQUIRE(std::equal(s.sum.digits().begin(), s.sum.digits().end(),
                           xi[l].digits().begin()));
        REQUIRE(s.carry == r.carries[l]);
      }
      REQUIRE(!r.certificates.empty());
      for (const Certificate& c : r.certificates) {
        REQUIRE(c.measured <= c.bound);
        REQUIRE(c.pass);
      }
    }
  }
}

TEST_CASE("reconstruction over 1000 seeds") {
  const SplitPlan plan = make_plan(base_params(PlanKind::homogeneous, 1, 7, 300));
  for (unsigned long long seed = 1000; seed < 2000; ++seed) {
    const DigitVector xi = random_vector(7, 1, 300, seed);
    const SplitResult r = split(xi, plan);
    const SumResult s = add(r.x0[0], r.x1[0]);
    REQUIRE(s.sum.digits().size() == 300);
    REQUIRE(std::equal(s.sum.digits().begin(), s.sum.digits().end(), xi[0].digits().begin()));
  }
}

TEST_CASE("cantor mode keeps every digit in its alphabet") {
  auto p = base_params(PlanKind::cantor, 2, 5, 500);
  p.alphabets = {{0, 3, 4}, {0, 1}};
  const SplitPlan plan = make_plan(p);
  for (unsigned long long seed = 0; seed < 50; ++seed) {
    const DigitVector xi = alphabet_vector(plan.alphabets, 5, 500, seed);
    const SplitResult r = split(xi, plan);
    for (std::size_t l = 0; l < 2; ++l)
      for (const auto* x : {&r.x0[l], &r.x1[l]})
        for (Digit d : x->digits())
          REQUIRE(std::binary_search(plan.alphabets[l].begin(), plan.alphabets[l].end(), d));
    CHECK(verify_split(r, xi, plan).alphabet_ok);
  }
  const DigitVector outside = random_vector(5, 2, 500, 1);
  CHECK_THROWS_AS(split(outside, plan), std::invalid_argument);
}

TEST_CASE("swapping roles swaps the parts") {
  auto p = base_params(PlanKind::homogeneous, 2, 3, 800);
  const SplitPlan plan = make_plan(p);
  p.swap_parts = true;
  const SplitPlan swapped = make_plan(p);
  for (unsigned long long seed = 0; seed < 20; ++seed) {
    const DigitVector xi = random_vector(3, 2, 800, seed);
    const SplitResult a = split(xi, plan);
    const SplitResult b = split(xi, swapped);
    CHECK(a.x0 == b.x1);
    CHECK(a.x1 == b.x0);
  }
}

TEST_CASE("certified ratio approaches (nu1 - 1) / Lambda along x1's checkpoints") {
  const SplitPlan plan = make_plan(base_params(PlanKind::homogeneous, 1, 3, 12000));
  const SplitResult r = split(random_vector(3, 1, 12000, 1), plan);
  const double target = plan.y1.get_d();
  const auto& ivs = plan.ladder.intervals;
  int checked = 0;
  for (const Certificate& c : r.certificates) {
    if (c.part != 1 || c.h < 200 || c.j + 2 >= ivs.size()) continue;
    const double ratio =
        static_cast<double>(c.h_next - c.h - 1) / static_cast<double>(ivs[c.j + 2].h);
    CHECK(target - ratio <= 0.02);
    ++checked;
  }
  CHECK(checked >= 2);
}

TEST_CASE("verify_split: fresh, flipped digit, lowered bound") {
  auto p = base_params(PlanKind::inhomogeneous, 1, 3, 600);
  p.targets = {rational_vector({{1, 7}}, 3, 600)};
  const SplitPlan plan = make_plan(p);
  const DigitVector xi = random_vector(3, 1, 600, 42);
  const SplitResult r = split(xi, plan);
  CHECK(verify_split(r, xi, plan).all_pass);

  // Flip one digit of x1 inside one of its own intervals.
  const Interval& iv = plan.ladder.intervals[3];
  REQUIRE(iv.role.owner == 1);
  SplitResult flipped = r;
  const std::size_t pos = iv.g + 2;
  const std::vector<std::size_t> at = {pos};
  const std::vector<Digit> d = {static_cast<Digit>((r.x1[0].at(pos) + 1) % 3)};
  flipped.x1[0] = splice(r.x1[0], at, d);
  const SplitReport fr = verify_split(flipped, xi, plan);
  CHECK_FALSE(fr.reconstruction_ok);
  CHECK_FALSE(fr.all_pass);

  SplitResult lowered = r;
  REQUIRE(!lowered.certificates.empty());
  lowered.certificates[1].bound = lowered.certificates[1].measured / 2;
  const SplitReport lr = verify_split(lowered, xi, plan);
  CHECK(lr.reconstruction_ok);
  CHECK_FALSE(lr.all_pass);
  CHECK_FALSE(lr.rechecked[1].pass);
  CHECK(lr.rechecked[0].pass);

  SplitResult dropped = r;
  dropped.certificates.pop_back();
  CHECK_FALSE(verify_split(dropped, xi, plan).all_pass);
}

TEST_CASE("split preconditions") {
  const SplitPlan plan = make_plan(base_params(PlanKind::homogeneous, 2, 3, 300));
  CHECK_THROWS_AS(split(random_vector(3, 1, 300, 1), plan), std::invalid_argument);
  CHECK_THROWS_AS(split(random_vector(5, 2, 300, 1), plan), std::invalid_argument);
  CHECK_THROWS_AS(split(random_vector(3, 2, 200, 1), plan), std::invalid_argument);
}

TEST_CASE("claimed exponents") {
  const SplitPlan plan = make_plan(base_params(PlanKind::homogeneous, 1, 3, 300));
  const SplitResult r = split(random_vector(3, 1, 300, 1), plan);
  CHECK(r.claimed.x1_uniform == ExactRational(1, 4));
  REQUIRE(r.claimed.x0_ordinary);
  CHECK(*r.claimed.x0_ordinary == 1);
}
