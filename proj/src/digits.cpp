#include "dioph/digits.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace dioph {
namespace {

void check_base(int base) {
  if (base < 2 || base > kMaxBase)
    throw std::invalid_argument("base must lie in [2, 65535], got " +
                                std::to_string(base));
}

char digit_char(Digit d) {
  return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10));
}

// Digits d_1..d_n as the integer d_1 b^(n-1) + ... + d_n.
BigInt digits_to_int(std::span<const Digit> ds, int base) {
  if (ds.empty()) return 0;
  if (base <= 36) {
    std::string s(ds.size(), '0');
    std::transform(ds.begin(), ds.end(), s.begin(), digit_char);
    return BigInt(s, base);
  }
  if (ds.size() <= 32) {
    BigInt r = 0;
    for (Digit d : ds) r = r * base + d;
    return r;
  }
  const std::size_t half = ds.size() / 2;
  return digits_to_int(ds.first(half), base) * ipow(base, ds.size() - half) +
         digits_to_int(ds.subspan(half), base);
}

void int_to_digits(const BigInt& n, int base, std::span<Digit> out) {
  if (out.empty()) return;
  if (base <= 36) {
    const std::string s = n.get_str(base);
    const std::size_t pad = out.size() - s.size();
    std::fill(out.begin(), out.begin() + pad, Digit{0});
    for (std::size_t i = 0; i < s.size(); ++i) {
      const char c = s[i];
      out[pad + i] = static_cast<Digit>(c <= '9' ? c - '0' : c - 'a' + 10);
    }
    return;
  }
  if (out.size() <= 32) {
    BigInt r = n;
    for (std::size_t i = out.size(); i-- > 0;) {
      out[i] = static_cast<Digit>(mpz_fdiv_q_ui(r.get_mpz_t(), r.get_mpz_t(), base));
    }
    return;
  }
  const std::size_t low = out.size() / 2;
  BigInt hi, lo;
  const BigInt p = ipow(base, low);
  mpz_fdiv_qr(hi.get_mpz_t(), lo.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  int_to_digits(hi, base, out.first(out.size() - low));
  int_to_digits(lo, base, out.subspan(out.size() - low));
}

}  // namespace

DigitExpansion::DigitExpansion(int base, std::vector<Digit> digits, bool exact)
    : base_(base), digits_(std::move(digits)), exact_(exact) {
  check_base(base);
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (digits_[i] >= base)
      throw std::invalid_argument("digit " + std::to_string(digits_[i]) +
                                  " at position " + std::to_string(i + 1) +
                                  " is not a base-" + std::to_string(base) +
                                  " digit");
  }
}

DigitExpansion DigitExpansion::zeros(int base, std::size_t depth) {
  return DigitExpansion(base, std::vector<Digit>(depth, 0), true);
}

DigitExpansion DigitExpansion::from_numerator(const BigInt& numerator, int base,
                                              std::size_t depth, bool exact) {
  check_base(base);
  if (numerator < 0 || numerator >= ipow(base, depth))
    throw std::invalid_argument("numerator outside [0, base^depth)");
  std::vector<Digit> ds(depth);
  int_to_digits(numerator, base, ds);
  return DigitExpansion(base, std::move(ds), exact);
}

BigInt DigitExpansion::numerator() const { return digits_to_int(digits_, base_); }

ExactRational DigitExpansion::value() const {
  ExactRational r(numerator(), ipow(base_, digits_.size()));
  r.canonicalize();
  return r;
}

bool DigitExpansion::is_zero() const {
  return std::all_of(digits_.begin(), digits_.end(), [](Digit d) { return d == 0; });
}

DigitExpansion DigitExpansion::with_exact(bool exact) const {
  DigitExpansion r = *this;
  r.exact_ = exact;
  return r;
}

DigitExpansion from_rational(const BigInt& p, const BigInt& q, int base,
                             std::size_t depth) {
  check_base(base);
  if (q <= 0) throw std::invalid_argument("denominator must be positive");
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  if (p < 0 || p >= q) throw std::invalid_argument("p/q must lie in [0, 1)");
  // floor(p b^depth / q): rounding down never yields a (b-1)-tail for a
  // terminating value.
  BigInt scaled = p * ipow(base, depth);
  BigInt n, rem;
  mpz_fdiv_qr(n.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), q.get_mpz_t());
  return DigitExpansion::from_numerator(n, base, depth, rem == 0);
}

DigitExpansion splice(const DigitExpansion& x,
                      std::span<const std::size_t> positions,
                      std::span<const Digit> replacement) {
  if (positions.size() != replacement.size())
    throw std::invalid_argument("splice: positions and replacement differ in length");
  std::vector<Digit> ds(x.digits().begin(), x.digits().end());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const std::size_t pos = positions[i];
    if (pos < 1 || pos > ds.size())
      throw std::out_of_range("splice: position " + std::to_string(pos) +
                              " outside [1, " + std::to_string(ds.size()) + "]");
    if (replacement[i] >= x.base())
      throw std::invalid_argument("splice: digit " + std::to_string(replacement[i]) +
                                  " invalid for base " + std::to_string(x.base()));
    ds[pos - 1] = replacement[i];
  }
  return DigitExpansion(x.base(), std::move(ds), x.exact());
}

SumResult add(const DigitExpansion& x, const DigitExpansion& y) {
  if (x.base() != y.base()) throw std::invalid_argument("add: base mismatch");
  const int b = x.base();
  const std::size_t n = std::max(x.depth(), y.depth());
  std::vector<Digit> ds(n);
  int carry = 0;
  for (std::size_t pos = n; pos >= 1; --pos) {
    const int s = x.at(pos) + y.at(pos) + carry;
    carry = s >= b ? 1 : 0;
    ds[pos - 1] = static_cast<Digit>(s - carry * b);
  }
  return {carry, DigitExpansion(b, std::move(ds), x.exact() && y.exact())};
}

DifferenceResult subtract(const DigitExpansion& x, const DigitExpansion& y) {
  if (x.base() != y.base()) throw std::invalid_argument("subtract: base mismatch");
  const int b = x.base();
  const std::size_t n = std::max(x.depth(), y.depth());
  std::vector<Digit> ds(n);
  int borrow = 0;
  for (std::size_t pos = n; pos >= 1; --pos) {
    int s = static_cast<int>(x.at(pos)) - y.at(pos) - borrow;
    borrow = s < 0 ? 1 : 0;
    ds[pos - 1] = static_cast<Digit>(s + borrow * b);
  }
  return {borrow, DigitExpansion(b, std::move(ds), x.exact() && y.exact())};
}

FracError frac_error(const DigitExpansion& x, std::size_t h,
                     const DigitExpansion& theta) {
  if (x.base() != theta.base()) throw std::invalid_argument("frac_error: base mismatch");
  const int b = x.base();
  const std::size_t n = x.depth();
  if (h > n || (!x.exact() && n - h < kDepthGuard)) {
    throw InsufficientDepth("frac_error: h=" + std::to_string(h) + " leaves " +
                            std::to_string(h > n ? 0 : n - h) +
                            " digits of a truncated expansion (need " +
                            std::to_string(kDepthGuard) + ")");
  }
  const auto ds = x.digits();
  const std::size_t tail = n - h;
  const std::size_t L = std::max(tail, theta.depth());
  const BigInt D = ipow(b, L);
  const BigInt integer_part = digits_to_int(ds.first(h), b);
  const BigInt f = digits_to_int(ds.subspan(h), b) * ipow(b, L - tail);
  const BigInt t = theta.numerator() * ipow(b, L - theta.depth());
  const BigInt y = f - t;  // in (-D, D)

  FracError out;
  BigInt e;
  if (y >= 0) {
    const BigInt alt = D - y;
    if (y <= alt) {
      e = y;
      out.p = integer_part;
    } else {
      e = alt;
      out.p = integer_part + 1;
    }
  } else {
    const BigInt neg = -y;
    const BigInt alt = D + y;
    if (alt <= neg) {
      e = alt;
      out.p = integer_part - 1;
    } else {
      e = neg;
      out.p = integer_part;
    }
  }
  out.err = ExactRational(e, D);
  out.err.canonicalize();
  out.uncertainty = 0;
  if (!x.exact()) out.uncertainty += ExactRational(1, ipow(b, tail));
  if (!theta.exact()) out.uncertainty += ExactRational(1, ipow(b, theta.depth()));
  out.uncertainty.canonicalize();
  return out;
}

std::string to_text(const DigitExpansion& x) {
  std::ostringstream os;
  os << "b=" << x.base() << ";exact=" << (x.exact() ? 1 : 0) << ";d=";
  const auto ds = x.digits();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (x.base() > 10) {
      if (i) os << ',';
      os << ds[i];
    } else {
      os << static_cast<char>('0' + ds[i]);
    }
  }
  return os.str();
}

DigitExpansion from_text(std::string_view text) {
  const auto fail = [&](const std::string& why) {
    return std::invalid_argument("malformed digit text (" + why + "): '" +
                                 std::string(text.substr(0, 64)) + "'");
  };
  const auto parse_int = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw fail("bad integer");
    return v;
  };
  if (!text.starts_with("b=")) throw fail("missing b=");
  const auto semi1 = text.find(';');
  if (semi1 == std::string_view::npos) throw fail("missing ;exact=");
  const int base = parse_int(text.substr(2, semi1 - 2));
  auto rest = text.substr(semi1 + 1);
  if (!rest.starts_with("exact=")) throw fail("missing exact=");
  const auto semi2 = rest.find(';');
  if (semi2 == std::string_view::npos) throw fail("missing ;d=");
  const int exact = parse_int(rest.substr(6, semi2 - 6));
  if (exact != 0 && exact != 1) throw fail("exact must be 0 or 1");
  rest = rest.substr(semi2 + 1);
  if (!rest.starts_with("d=")) throw fail("missing d=");
  rest = rest.substr(2);
  check_base(base);

  std::vector<Digit> ds;
  if (base > 10) {
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const int d = parse_int(rest.substr(0, comma));
      if (d < 0 || d >= base) throw fail("digit out of range");
      ds.push_back(static_cast<Digit>(d));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  } else {
    ds.reserve(rest.size());
    for (char c : rest) {
      if (c < '0' || c - '0' >= base) throw fail("digit out of range");
      ds.push_back(static_cast<Digit>(c - '0'));
    }
  }
  return DigitExpansion(base, std::move(ds), exact == 1);
}

}  // namespace dioph
