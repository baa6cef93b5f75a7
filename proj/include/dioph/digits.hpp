#ifndef DIOPH_DIGITS_HPP
#define DIOPH_DIGITS_HPP

// Finite base-b fractional expansions (0.d_1 d_2 ... d_n)_b and the exact
// arithmetic every construction and measurement runs on.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/numeric.hpp"

namespace dioph {

using Digit = std::uint16_t;

inline constexpr int kMaxBase = 65535;

/// Digits that must remain after position h before a truncated expansion
/// may be measured there.
inline constexpr std::size_t kDepthGuard = 8;

class InsufficientDepth : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value in [0, 1) given by its first `depth` base-b digits.
///
/// `exact` is true iff the represented real equals sum d_i b^-i, i.e. the
/// tail beyond `depth` is known to be zero. Positions are 1-based to match
/// the usual digit-position notation; `digits()` is the 0-based storage.
class DigitExpansion {
 public:
  DigitExpansion() = default;
  DigitExpansion(int base, std::vector<Digit> digits, bool exact);

  static DigitExpansion zeros(int base, std::size_t depth);

  /// Renders 0 <= numerator < base^depth as a depth-digit expansion.
  static DigitExpansion from_numerator(const BigInt& numerator, int base,
                                       std::size_t depth, bool exact);

  int base() const { return base_; }
  std::size_t depth() const { return digits_.size(); }
  bool exact() const { return exact_; }
  std::span<const Digit> digits() const { return digits_; }

  /// Digit at 1-based position `pos`; positions past the depth read as 0.
  Digit at(std::size_t pos) const {
    return pos >= 1 && pos <= digits_.size() ? digits_[pos - 1] : Digit{0};
  }

  /// Integer N with value = N / base^depth.
  BigInt numerator() const;
  ExactRational value() const;
  bool is_zero() const;

  DigitExpansion with_exact(bool exact) const;

  friend bool operator==(const DigitExpansion&, const DigitExpansion&) = default;

 private:
  int base_ = 10;
  std::vector<Digit> digits_;
  bool exact_ = true;
};

using DigitVector = std::vector<DigitExpansion>;

/// Truncated base-b expansion of p/q (0 <= p < q), rounded down.
DigitExpansion from_rational(const BigInt& p, const BigInt& q, int base,
                             std::size_t depth);

/// Replaces the digits at `positions` (1-based) by `replacement`, keeping the
/// rest. This is the digit-override map: prescribed digits on one position
/// set, preserved digits on its complement.
DigitExpansion splice(const DigitExpansion& x,
                      std::span<const std::size_t> positions,
                      std::span<const Digit> replacement);

struct SumResult {
  int carry = 0;
  DigitExpansion sum;
};

/// Schoolbook addition; the shorter operand is zero-padded.
SumResult add(const DigitExpansion& x, const DigitExpansion& y);

/// x - y modulo 1; `borrow` is 1 when x < y on the represented prefixes.
struct DifferenceResult {
  int borrow = 0;
  DigitExpansion difference;
};
DifferenceResult subtract(const DigitExpansion& x, const DigitExpansion& y);

struct FracError {
  BigInt p;                   // minimising integer
  ExactRational err;          // |b^h x - p - theta| on the represented prefixes
  ExactRational uncertainty;  // bound on the truncation effect
};

/// min over integers p of |b^h x - p - theta| for one coordinate. Ties go to
/// the smaller p. Throws InsufficientDepth when x is truncated and fewer than
/// kDepthGuard digits remain after position h.
FracError frac_error(const DigitExpansion& x, std::size_t h,
                     const DigitExpansion& theta);

/// `b=<base>;exact=<0|1>;d=<digits>`; digits are comma-separated for base > 10.
std::string to_text(const DigitExpansion& x);
DigitExpansion from_text(std::string_view text);

}  // namespace dioph

#endif
