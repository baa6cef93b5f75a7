#ifndef DIOPH_EXPONENTS_HPP
#define DIOPH_EXPONENTS_HPP

// Best approximations ||q x - p - theta||_inf over q <= Q and finite-scale
// estimates of ordinary and uniform exponents.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dioph/construct.hpp"
#include "dioph/digits.hpp"

namespace dioph {

enum class ApproxMode { all_q, b_ary };

std::string to_string(ApproxMode mode);
ApproxMode approx_mode_from_string(const std::string& name);

class ScanCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default all-q scan cap: 10^7 * m operations, overridden by SCAN_CAP.
std::uint64_t default_scan_cap(std::size_t m);

struct ApproxRecord {
  BigInt Q;
  BigInt q_best;
  std::size_t N = 0;  // b_ary: q_best = b^N
  std::vector<BigInt> p_best;
  ExactRational err;
  ExactRational uncertainty;
  double c_of_Q = 0;  // err * Q^w_ref
};

/// Minimises the max-norm error over admissible q (all 1 <= q <= Q, or
/// q = b^N <= Q), ties to the smallest q. An empty theta means zero.
/// Throws ScanCapExceeded (all_q, Q over cap) or InsufficientDepth.
ApproxRecord best_approx(const DigitVector& x, const DigitVector& theta, const BigInt& Q,
                         ApproxMode mode, const ExactRational& w_ref = 0,
                         std::optional<std::uint64_t> scan_cap = std::nullopt);

struct ExponentEstimate {
  ApproxMode mode = ApproxMode::b_ary;
  std::size_t m = 0;
  ExactRational w_ref;
  std::vector<ApproxRecord> records;
  double uniform_lower = 0;
  double ordinary_lower = 0;
  double truncation_uncertainty = 0;  // in exponent units
  bool c_nonincreasing_tail = false;
  bool rational = false;  // some error vanished exactly
};

/// Records along an increasing Q ladder. The uniform estimate is the minimum
/// of -log err / log Q over the last third of the ladder, the ordinary one the
/// maximum of -log err / log q_best (log Q when q_best = 1).
ExponentEstimate exponent_ladder(const DigitVector& x, const DigitVector& theta,
                                 const std::vector<BigInt>& Q_ladder, ApproxMode mode,
                                 const ExactRational& w_ref = 0,
                                 std::optional<std::uint64_t> scan_cap = std::nullopt);

/// Q = b^R for R in [h_j - 16, h_j] over the ladder, capped at depth - guard.
std::vector<BigInt> checkpoint_Q_ladder(const IntervalLadder& ladder, int base,
                                        std::size_t depth);

/// Q = b^h_j for the checkpoints of one part's certificates.
std::vector<BigInt> certificate_Q_ladder(const SplitResult& result, const SplitPlan& plan,
                                         int part, int target = -1);

struct ClaimCheck {
  std::string claim;
  double claimed = 0;
  double measured = 0;
  double tolerance = 0;
  bool pass = false;
};

struct ClaimReport {
  bool all_pass = false;
  std::vector<ClaimCheck> checks;
};

/// Compares the split's claimed exponents against measured lower bounds:
/// uniform of x1 (one estimate per target) and ordinary of x0. Throws
/// std::invalid_argument when the estimate vectors do not fit the split.
ClaimReport verify_exponent_claims(const SplitResult& result, const SplitPlan& plan,
                                   const std::vector<ExponentEstimate>& x1_uniform,
                                   const std::optional<ExponentEstimate>& x0_ordinary,
                                   double tolerance);

struct ReverseSample {
  std::string label;
  bool trivial = false;
  double w1_uniform = 0;
  double w2_uniform = 0;
  double w1_ordinary = 0;
  double w2_ordinary = 0;
  bool sum_ok = false;
  bool pp1_ok = false;
  bool prop_ok = false;
};

struct ReverseReport {
  std::size_t depth = 0;
  double tolerance = 0;
  DigitExpansion theta1;
  DigitExpansion theta2;
  std::vector<ReverseSample> samples;
  bool all_pass = false;
};

/// theta1 = sum 3^-(N!) to depth, theta2 = 2 theta1. Estimates uniform and
/// ordinary b-ary exponents for `samples` seeded random xi, one xi tracking
/// theta1 on a long block, and xi = 0.
ReverseReport reverse_demo(std::size_t depth, const std::vector<std::size_t>& R_ladder,
                           std::size_t samples, unsigned long long seed,
                           double tolerance = 0.05);

/// Default R ladder for reverse_demo: roughly geometric up to depth - guard.
std::vector<std::size_t> default_reverse_ladder(std::size_t depth);

}  // namespace dioph

#endif
