#ifndef DIOPH_CONSTRUCT_HPP
#define DIOPH_CONSTRUCT_HPP

// Digit-splitting constructions xi = x0 + x1 (mod 1) along an interval ladder,
// with per-checkpoint certificates.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dioph/digits.hpp"
#include "dioph/ladder.hpp"

namespace dioph {

enum class PlanKind { homogeneous, inhomogeneous, multi, liouville, cantor };

std::string to_string(PlanKind kind);
PlanKind plan_kind_from_string(const std::string& name);

/// Alphabet for one coordinate, sorted and duplicate free.
using Alphabet = std::vector<Digit>;

struct PlanParams {
  PlanKind kind = PlanKind::homogeneous;
  int base = 3;
  std::size_t m = 1;
  std::size_t depth = 2000;
  std::size_t M = 8;
  ExactRational nu0 = 2;
  std::optional<ExactRational> nu1;  // multi defaults to k/(k-1) (2 when k = 1)
  ExactRational growth = 1;          // liouville ratio growth per interval
  bool swap_parts = false;
  /// targets[s-1] is theta_s, one expansion per coordinate.
  std::vector<DigitVector> targets;
  std::vector<Alphabet> alphabets;   // cantor mode, one per coordinate
};

struct SplitPlan {
  PlanKind kind = PlanKind::homogeneous;
  int base = 3;
  std::size_t m = 1;
  std::size_t depth = 0;
  IntervalLadder ladder;
  std::vector<DigitVector> targets;
  std::vector<Alphabet> alphabets;
  ExactRational y0;  // (nu0 - 1) / Lambda
  ExactRational y1;  // (nu1 - 1) / Lambda
};

/// Validates parameters and builds the ladder for the requested construction.
/// Throws std::invalid_argument naming the violated precondition.
SplitPlan make_plan(const PlanParams& params);

/// One checkpoint guarantee: part `part` satisfies
/// ||b^h x_part - p - theta_target|| <= bound, with the next interval
/// (h, h_next] owned by that part.
struct Certificate {
  int part = 0;
  std::size_t j = 0;
  std::size_t h = 0;
  std::size_t h_next = 0;
  int target = 0;  // 0 = homogeneous
  ExactRational bound;
  ExactRational measured;
  ExactRational uncertainty;
  bool pass = false;
};

struct ClaimedExponents {
  ExactRational x1_uniform;                // (nu1 - 1) / Lambda
  std::optional<ExactRational> x0_ordinary;  // nu0 - 1; empty means unbounded
};

struct SplitResult {
  DigitVector x0;
  DigitVector x1;
  std::vector<int> carries;  // add(x0, x1) = (carry, xi) per coordinate
  std::vector<Certificate> certificates;
  ClaimedExponents claimed;
};

/// Splits xi along the plan. Throws std::invalid_argument on base, dimension
/// or depth mismatch, and for cantor plans whose xi leaves the alphabets.
SplitResult split(const DigitVector& xi, const SplitPlan& plan);

/// Constant c in the guaranteed bound c * b^-(h_next - h).
int certificate_constant(int target);

/// Checkpoints that admit a certificate at the given depth: interval j+1 has
/// an owner, h_{j+1} <= depth and at least kDepthGuard digits follow h_j.
std::vector<Certificate> plan_certificates(const SplitPlan& plan);

struct VerifyEntry {
  std::string check;
  bool pass = false;
  std::string detail;
};

struct SplitReport {
  bool reconstruction_ok = false;
  bool alphabet_ok = true;
  bool all_pass = false;
  std::vector<Certificate> rechecked;
  std::vector<VerifyEntry> entries;
};

/// Recomputes reconstruction, alphabet closure and every certificate from
/// scratch. Never throws for well-formed inputs; failures are entries.
SplitReport verify_split(const SplitResult& result, const DigitVector& xi,
                         const SplitPlan& plan);

/// Seeded uniform digits, one expansion per coordinate (truncated, so inexact).
DigitVector random_vector(int base, std::size_t m, std::size_t depth,
                          unsigned long long seed);

}  // namespace dioph

#endif
