#include "dioph/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>

namespace dioph {

std::string to_string(ApproxMode mode) {
  return mode == ApproxMode::all_q ? "all_q" : "b_ary";
}

ApproxMode approx_mode_from_string(const std::string& name) {
  if (name == "all_q") return ApproxMode::all_q;
  if (name == "b_ary") return ApproxMode::b_ary;
  throw std::invalid_argument("unknown approximation mode '" + name +
                              "' (expected all_q or b_ary)");
}

std::uint64_t default_scan_cap(std::size_t m) {
  if (const char* env = std::getenv("SCAN_CAP"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw std::invalid_argument(std::string("SCAN_CAP must be a positive integer, got '") +
                                env + "'");
  }
  return 10'000'000ULL * std::max<std::size_t>(m, 1);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// All coordinates over the common denominator b^L.
struct Scaled {
  int base = 10;
  std::size_t L = 0;
  BigInt D;
  struct Coord {
    BigInt X;  // x numerator over b^n
    std::size_t n = 0;
    bool x_exact = true;
    BigInt T;  // theta over b^L
    std::size_t r = 0;
    bool t_exact = true;
  };
  std::vector<Coord> coords;
};

Scaled prepare(const DigitVector& x, const DigitVector& theta) {
  if (x.empty()) throw std::invalid_argument("x must have at least one coordinate");
  if (!theta.empty() && theta.size() != x.size())
    throw std::invalid_argument("theta has " + std::to_string(theta.size()) +
                                " coordinates, x has " + std::to_string(x.size()));
  Scaled s;
  s.base = x.front().base();
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (x[l].base() != s.base || (!theta.empty() && theta[l].base() != s.base))
      throw std::invalid_argument("all coordinates and targets must share one base");
    s.L = std::max(s.L, x[l].depth());
    if (!theta.empty()) s.L = std::max(s.L, theta[l].depth());
  }
  s.D = ipow(s.base, s.L);
  for (std::size_t l = 0; l < x.size(); ++l) {
    Scaled::Coord c;
    c.X = x[l].numerator();
    c.n = x[l].depth();
    c.x_exact = x[l].exact();
    if (!theta.empty()) {
      c.T = theta[l].numerator() * ipow(s.base, s.L - theta[l].depth());
      c.r = theta[l].depth();
      c.t_exact = theta[l].exact();
    }
    s.coords.push_back(std::move(c));
  }
  return s;
}

// Nearest-integer error of y = f - t over D, ties to the smaller p.
void nearest(const BigInt& y, const BigInt& D, const BigInt& ip, BigInt& e, BigInt& p) {
  if (y >= 0) {
    BigInt alt = D - y;
    if (y <= alt) {
      e = y;
      p = ip;
    } else {
      e = std::move(alt);
      p = ip + 1;
    }
  } else {
    BigInt alt = D + y;
    BigInt neg = -y;
    if (alt <= neg) {
      e = std::move(alt);
      p = ip - 1;
    } else {
      e = std::move(neg);
      p = ip;
    }
  }
}

// Error numerator (over b^L) and p for q = b^N in one coordinate.
void b_ary_coord(const Scaled& s, const Scaled::Coord& c, std::size_t N, BigInt& e,
                 BigInt& p) {
  BigInt ip, tail;
  if (N <= c.n) {
    const BigInt P = ipow(s.base, c.n - N);
    mpz_fdiv_qr(ip.get_mpz_t(), tail.get_mpz_t(), c.X.get_mpz_t(), P.get_mpz_t());
    tail *= ipow(s.base, s.L - (c.n - N));
  } else {
    ip = c.X * ipow(s.base, N - c.n);
    tail = 0;
  }
  nearest(tail - c.T, s.D, ip, e, p);
}

ExactRational uncertainty_at(const Scaled& s, const BigInt& q) {
  ExactRational u = 0;
  for (const auto& c : s.coords) {
    ExactRational uc = 0;
    if (!c.x_exact) uc += ExactRational(q, ipow(s.base, c.n));
    if (!c.t_exact) uc += ExactRational(1, ipow(s.base, c.r));
    u = std::max(u, uc);
  }
  u.canonicalize();
  return u;
}

double c_value(const ExactRational& err, const BigInt& Q, const ExactRational& w_ref) {
  if (err == 0) return 0;
  return std::exp(log_value(err) + w_ref.get_d() * log_abs(Q));
}

void check_increasing(const std::vector<BigInt>& Qs) {
  for (std::size_t i = 0; i < Qs.size(); ++i) {
    if (Qs[i] < 1) throw std::invalid_argument("Q must be at least 1");
    if (i && Qs[i] <= Qs[i - 1]) throw std::invalid_argument("Q ladder must be increasing");
  }
}

std::vector<ApproxRecord> scan_all_q(const DigitVector& x, const DigitVector& theta,
                                     const std::vector<BigInt>& Qs,
                                     const ExactRational& w_ref,
                                     std::optional<std::uint64_t> scan_cap) {
  check_increasing(Qs);
  if (Qs.empty()) return {};
  const Scaled s = prepare(x, theta);
  const BigInt& Qmax = Qs.back();
  const std::uint64_t cap = scan_cap.value_or(default_scan_cap(x.size()));
  if (!Qmax.fits_ulong_p() ||
      Qmax.get_ui() > cap / std::max<std::size_t>(x.size(), 1))
    throw ScanCapExceeded("all_q scan up to Q = " + Qmax.get_str() + " in dimension " +
                          std::to_string(x.size()) + " exceeds the scan cap of " +
                          std::to_string(cap) + " operations (set SCAN_CAP to raise it)");
  for (const auto& c : s.coords) {
    if (!c.x_exact && Qmax * ipow(s.base, kDepthGuard) > ipow(s.base, c.n))
      throw InsufficientDepth("all_q scan up to Q = " + Qmax.get_str() +
                              " needs more than " + std::to_string(c.n) +
                              " digits of a truncated coordinate");
  }

  const std::size_t m = s.coords.size();
  std::vector<BigInt> step(m), r(m);
  for (std::size_t l = 0; l < m; ++l) {
    step[l] = s.coords[l].X * ipow(s.base, s.L - s.coords[l].n);
    mpz_fdiv_r(r[l].get_mpz_t(), BigInt(-s.coords[l].T).get_mpz_t(), s.D.get_mpz_t());
  }

  std::vector<ApproxRecord> out;
  BigInt best_e = s.D;  // above any attainable error
  unsigned long best_q = 0;
  BigInt e, worst;
  std::size_t next = 0;
  const unsigned long qmax = Qmax.get_ui();
  for (unsigned long q = 1; q <= qmax; ++q) {
    worst = 0;
    for (std::size_t l = 0; l < m; ++l) {
      r[l] += step[l];
      if (r[l] >= s.D) r[l] -= s.D;
      e = s.D - r[l];
      if (r[l] < e) e = r[l];
      if (e > worst) worst = e;
    }
    if (worst < best_e) {
      best_e = worst;
      best_q = q;
    }
    while (next < Qs.size() && Qs[next] == q) {
      ApproxRecord rec;
      rec.Q = Qs[next];
      rec.q_best = best_q;
      for (const auto& c : s.coords) {
        BigInt y = BigInt(best_q) * c.X * ipow(s.base, s.L - c.n) - c.T;
        BigInt ip, rem;
        mpz_fdiv_qr(ip.get_mpz_t(), rem.get_mpz_t(), y.get_mpz_t(), s.D.get_mpz_t());
        BigInt ee, p;
        nearest(rem, s.D, ip, ee, p);
        rec.p_best.push_back(p);
      }
      rec.err = ExactRational(best_e, s.D);
      rec.err.canonicalize();
      rec.uncertainty = uncertainty_at(s, rec.q_best);
      rec.c_of_Q = c_value(rec.err, rec.Q, w_ref);
      out.push_back(std::move(rec));
      ++next;
    }
  }
  return out;
}

std::vector<ApproxRecord> scan_b_ary(const DigitVector& x, const DigitVector& theta,
                                     const std::vector<BigInt>& Qs,
                                     const ExactRational& w_ref) {
  check_increasing(Qs);
  if (Qs.empty()) return {};
  const Scaled s = prepare(x, theta);
  std::vector<std::size_t> Nmax;
  for (const BigInt& Q : Qs) {
    std::size_t N = 0;
    while (ipow(s.base, N + 1) <= Q) ++N;
    Nmax.push_back(N);
  }
  for (const auto& c : s.coords) {
    if (!c.x_exact && (c.n < kDepthGuard || Nmax.back() > c.n - kDepthGuard))
      throw InsufficientDepth("b_ary scan up to q = b^" + std::to_string(Nmax.back()) +
                              " needs " + std::to_string(Nmax.back() + kDepthGuard) +
                              " digits of a truncated coordinate, have " +
                              std::to_string(c.n));
  }

  std::vector<ApproxRecord> out;
  BigInt best_e = s.D + 1;
  std::size_t best_N = 0;
  BigInt e, p, worst;
  std::size_t next = 0;
  for (std::size_t N = 0; N <= Nmax.back(); ++N) {
    worst = 0;
    for (const auto& c : s.coords) {
      b_ary_coord(s, c, N, e, p);
      if (e > worst) worst = e;
    }
    if (worst < best_e) {
      best_e = worst;
      best_N = N;
    }
    while (next < Qs.size() && Nmax[next] == N) {
      ApproxRecord rec;
      rec.Q = Qs[next];
      rec.N = best_N;
      rec.q_best = ipow(s.base, best_N);
      for (const auto& c : s.coords) {
        BigInt ee, pp;
        b_ary_coord(s, c, best_N, ee, pp);
        rec.p_best.push_back(pp);
      }
      rec.err = ExactRational(best_e, s.D);
      rec.err.canonicalize();
      rec.uncertainty = uncertainty_at(s, rec.q_best);
      rec.c_of_Q = c_value(rec.err, rec.Q, w_ref);
      out.push_back(std::move(rec));
      ++next;
    }
  }
  return out;
}

double exponent_of(const ExactRational& err, const BigInt& scale) {
  if (err == 0) return kInf;
  return -log_value(err) / log_abs(scale);
}

}  // namespace

ApproxRecord best_approx(const DigitVector& x, const DigitVector& theta, const BigInt& Q,
                         ApproxMode mode, const ExactRational& w_ref,
                         std::optional<std::uint64_t> scan_cap) {
  auto recs = mode == ApproxMode::all_q ? scan_all_q(x, theta, {Q}, w_ref, scan_cap)
                                        : scan_b_ary(x, theta, {Q}, w_ref);
  return std::move(recs.front());
}

ExponentEstimate exponent_ladder(const DigitVector& x, const DigitVector& theta,
                                 const std::vector<BigInt>& Q_ladder, ApproxMode mode,
                                 const ExactRational& w_ref,
                                 std::optional<std::uint64_t> scan_cap) {
  if (Q_ladder.empty()) throw std::invalid_argument("Q ladder is empty");
  ExponentEstimate est;
  est.mode = mode;
  est.m = x.size();
  est.w_ref = w_ref;
  est.records = mode == ApproxMode::all_q ? scan_all_q(x, theta, Q_ladder, w_ref, scan_cap)
                                          : scan_b_ary(x, theta, Q_ladder, w_ref);

  const std::size_t n = est.records.size();
  const std::size_t tail_start = n - std::max<std::size_t>(1, (n + 2) / 3);
  est.uniform_lower = kInf;
  bool any_uniform = false;
  for (std::size_t i = tail_start; i < n; ++i) {
    const ApproxRecord& r = est.records[i];
    if (r.Q <= 1) continue;
    est.uniform_lower = std::min(est.uniform_lower, exponent_of(r.err, r.Q));
    any_uniform = true;
  }
  if (!any_uniform) est.uniform_lower = 0;

  est.ordinary_lower = 0;
  for (const ApproxRecord& r : est.records) {
    if (r.err == 0) est.rational = true;
    // A record won by q = 1 still certifies err at scale Q.
    const BigInt& scale = r.q_best > 1 ? r.q_best : r.Q;
    if (scale > 1) est.ordinary_lower = std::max(est.ordinary_lower, exponent_of(r.err, scale));
    if (r.err > 0 && r.Q > 1) {
      const double rel = ExactRational(r.uncertainty / r.err).get_d();
      est.truncation_uncertainty =
          std::max(est.truncation_uncertainty, std::log1p(rel) / log_abs(r.Q));
    }
  }

  est.c_nonincreasing_tail = true;
  for (std::size_t i = tail_start + 1; i < n; ++i) {
    if (est.records[i].c_of_Q > est.records[i - 1].c_of_Q * (1 + 1e-12))
      est.c_nonincreasing_tail = false;
  }
  return est;
}

std::vector<BigInt> checkpoint_Q_ladder(const IntervalLadder& ladder, int base,
                                        std::size_t depth) {
  std::vector<std::size_t> Rs;
  const std::size_t cap = depth > kDepthGuard ? depth - kDepthGuard : 0;
  // The worst Q sits just before the next good approximation, i.e. a few
  // positions before h_j when the preceding digits happen to vanish.
  constexpr std::size_t kWindow = 16;
  for (const Interval& iv : ladder.intervals) {
    for (std::size_t R = iv.h > kWindow ? iv.h - kWindow : 1; R <= iv.h; ++R)
      if (R <= cap) Rs.push_back(R);
  }
  std::sort(Rs.begin(), Rs.end());
  Rs.erase(std::unique(Rs.begin(), Rs.end()), Rs.end());
  std::vector<BigInt> Qs;
  for (std::size_t R : Rs) Qs.push_back(ipow(base, R));
  return Qs;
}

std::vector<BigInt> certificate_Q_ladder(const SplitResult& result, const SplitPlan& plan,
                                         int part, int target) {
  std::vector<BigInt> Qs;
  for (const Certificate& c : result.certificates) {
    if (c.part != part || (target >= 0 && c.target != target)) continue;
    BigInt Q = ipow(plan.base, c.h);
    if (Qs.empty() || Q > Qs.back()) Qs.push_back(std::move(Q));
  }
  return Qs;
}

ClaimReport verify_exponent_claims(const SplitResult& result, const SplitPlan& plan,
                                   const std::vector<ExponentEstimate>& x1_uniform,
                                   const std::optional<ExponentEstimate>& x0_ordinary,
                                   double tolerance) {
  if (result.x0.size() != plan.m || result.x1.size() != plan.m)
    throw std::invalid_argument("dimension mismatch: split has " +
                                std::to_string(result.x1.size()) +
                                " coordinates, plan expects m = " + std::to_string(plan.m));
  const std::size_t expected =
      plan.kind == PlanKind::liouville ? 0 : std::max<std::size_t>(1, plan.targets.size());
  if (x1_uniform.size() != expected)
    throw std::invalid_argument("expected " + std::to_string(expected) +
                                " uniform estimates for x1, got " +
                                std::to_string(x1_uniform.size()));
  for (const auto& e : x1_uniform) {
    if (e.m != plan.m)
      throw std::invalid_argument("dimension mismatch: estimate for m = " +
                                  std::to_string(e.m) + ", split has m = " +
                                  std::to_string(plan.m));
  }
  if (x0_ordinary && x0_ordinary->m != plan.m)
    throw std::invalid_argument("dimension mismatch: estimate for m = " +
                                std::to_string(x0_ordinary->m) + ", split has m = " +
                                std::to_string(plan.m));

  ClaimReport report;
  report.all_pass = true;
  const double y1 = result.claimed.x1_uniform.get_d();
  for (std::size_t s = 0; s < x1_uniform.size(); ++s) {
    ClaimCheck c;
    c.claim = plan.targets.empty() ? "x1 uniform" : "x1 uniform, target " + std::to_string(s + 1);
    c.claimed = y1;
    c.measured = x1_uniform[s].uniform_lower;
    c.tolerance = tolerance;
    c.pass = c.measured >= c.claimed - tolerance;
    report.all_pass = report.all_pass && c.pass;
    report.checks.push_back(c);
  }
  if (x0_ordinary && result.claimed.x0_ordinary) {
    ClaimCheck c;
    c.claim = "x0 ordinary";
    c.claimed = result.claimed.x0_ordinary->get_d();
    c.measured = x0_ordinary->ordinary_lower;
    c.tolerance = tolerance;
    c.pass = c.measured >= c.claimed - tolerance;
    report.all_pass = report.all_pass && c.pass;
    report.checks.push_back(c);
  }
  return report;
}

std::vector<std::size_t> default_reverse_ladder(std::size_t depth) {
  std::vector<std::size_t> Rs;
  if (depth <= kDepthGuard + 10) return {std::max<std::size_t>(1, depth / 2)};
  const std::size_t cap = depth - kDepthGuard;
  for (std::size_t R = 10; R < cap; R = std::max(R + 1, R * 6 / 5)) Rs.push_back(R);
  Rs.push_back(cap);
  return Rs;
}

ReverseReport reverse_demo(std::size_t depth, const std::vector<std::size_t>& R_ladder,
                           std::size_t samples, unsigned long long seed, double tolerance) {
  constexpr int b = 3;
  if (depth < 5040)
    throw std::invalid_argument("depth " + std::to_string(depth) +
                                " is shorter than 7! = 5040, the factorial gap required");
  if (R_ladder.empty()) throw std::invalid_argument("R ladder is empty");

  ReverseReport report;
  report.depth = depth;
  report.tolerance = tolerance;
  std::vector<Digit> t1(depth, 0);
  for (std::size_t N = 1, f = 1; f <= depth; f *= ++N) t1[f - 1] = 1;
  report.theta1 = DigitExpansion(b, t1, false);
  report.theta2 = add(report.theta1, report.theta1).sum;

  std::vector<BigInt> Qs;
  for (std::size_t R : R_ladder) Qs.push_back(ipow(b, R));

  const auto measure = [&](std::string label, const DigitExpansion& xi, bool trivial) {
    ReverseSample s;
    s.label = std::move(label);
    s.trivial = trivial;
    const auto e1 = exponent_ladder({xi}, {report.theta1}, Qs, ApproxMode::b_ary);
    const auto e2 = exponent_ladder({xi}, {report.theta2}, Qs, ApproxMode::b_ary);
    s.w1_uniform = e1.uniform_lower;
    s.w2_uniform = e2.uniform_lower;
    s.w1_ordinary = e1.ordinary_lower;
    s.w2_ordinary = e2.ordinary_lower;
    s.sum_ok = s.w1_uniform + s.w2_uniform <= 1 + tolerance;
    s.pp1_ok = s.w2_uniform <= 1 / (s.w1_ordinary + 1) + tolerance;
    const auto prop = [&](double wu, double wo) {
      return wu <= 1 + tolerance && wu <= wo / (wo + 1) + tolerance;
    };
    s.prop_ok = prop(s.w1_uniform, s.w1_ordinary) && prop(s.w2_uniform, s.w2_ordinary);
    report.samples.push_back(s);
  };

  for (std::size_t i = 0; i < samples; ++i)
    measure("random " + std::to_string(i), random_vector(b, 1, depth, seed + i).front(),
            false);

  // Random digits, then theta1's opening digits over a long block.
  {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const std::size_t t = std::min<std::size_t>(200, depth / 8);
    const std::size_t block = std::min<std::size_t>(10 * t, depth - t - 2 * kDepthGuard);
    std::vector<Digit> ds(depth);
    for (auto& d : ds) d = static_cast<Digit>(rng() % b);
    for (std::size_t u = 1; u <= block; ++u) ds[t + u - 1] = report.theta1.at(u);
    measure("adversarial", DigitExpansion(b, std::move(ds), false), false);
  }
  measure("zero", DigitExpansion::zeros(b, depth), true);

  report.all_pass = std::all_of(report.samples.begin(), report.samples.end(),
                                [](const ReverseSample& s) {
                                  return s.sum_ok && s.pp1_ok && s.prop_ok;
                                });
  return report;
}

}  // namespace dioph
