#ifndef DIOPH_CANTOR_HPP
#define DIOPH_CANTOR_HPP

// Missing-digit sets C_{b,W} and their products K = C_{b,W_1} x ... x C_{b,W_m}.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dioph/construct.hpp"
#include "dioph/digits.hpp"

namespace dioph {

struct MissingDigitSpec {
  int base = 3;
  std::vector<Alphabet> alphabets;

  std::size_t m() const { return alphabets.size(); }
};

/// Sorts and deduplicates the alphabets; throws std::invalid_argument when
/// |W_i| < 2 or a digit is outside the base.
MissingDigitSpec make_spec(int base, std::vector<Alphabet> alphabets);

bool membership(const DigitVector& x, const MissingDigitSpec& spec);

/// Iid uniform digits from each W_i, reproducible per seed.
DigitVector sample(const MissingDigitSpec& spec, std::size_t depth, unsigned long long seed);

struct Dims {
  std::vector<double> d;
  double dim_K = 0;
};
Dims dims(const MissingDigitSpec& spec);

/// The rational shift t -> t - min W_i / (b - 1): an alphabet containing 0
/// and the per-coordinate offset that maps the original set onto it.
struct ShiftedSpec {
  MissingDigitSpec spec;
  std::vector<ExactRational> shift;
};
ShiftedSpec normalize_shift(const MissingDigitSpec& spec);

enum class SumOp { plus, minus };
SumOp sum_op_from_string(const std::string& name);
std::string to_string(SumOp op);

/// Upper end of the cover-check depth range for a base.
std::size_t cover_depth_cap(int base);

struct CoverResult {
  SumOp op = SumOp::plus;
  std::size_t depth = 0;
  ExactRational target_lo;
  ExactRational target_hi;
  std::uint64_t intervals = 0;  // b-adic intervals of length b^-depth in the target
  std::uint64_t uncovered = 0;
  bool covered = false;
  /// Up to max_witnesses uncovered intervals [lo, hi], smallest first.
  std::vector<std::pair<ExactRational, ExactRational>> witness_gaps;
};

/// Decides whether every b-adic interval of length b^-depth inside the target
/// [min(C o C), max(C o C)] meets the level-depth cover of C o C, where C o C
/// is C + C or C - C. Needs m = 1; throws std::invalid_argument over the cap.
CoverResult sumset_cover_check(const MissingDigitSpec& spec, SumOp op, std::size_t depth,
                               std::size_t max_witnesses = 32);

/// `b=<base>;W1=<digits>;...;Wm=<digits>` with comma-separated digits.
std::string to_text(const MissingDigitSpec& spec);
MissingDigitSpec spec_from_text(std::string_view text);

}  // namespace dioph

#endif
