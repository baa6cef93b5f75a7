#include "dioph/cantor.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace dioph {

MissingDigitSpec make_spec(int base, std::vector<Alphabet> alphabets) {
  if (base < 2 || base > kMaxBase)
    throw std::invalid_argument("base must lie in [2, 65535]");
  if (alphabets.empty()) throw std::invalid_argument("need at least one alphabet");
  for (std::size_t i = 0; i < alphabets.size(); ++i) {
    auto& w = alphabets[i];
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    if (w.size() < 2)
      throw std::invalid_argument("alphabet W" + std::to_string(i + 1) +
                                  " needs |W| >= 2");
    if (w.back() >= base)
      throw std::invalid_argument("alphabet W" + std::to_string(i + 1) + " has digit " +
                                  std::to_string(w.back()) + " outside base " +
                                  std::to_string(base));
  }
  return {base, std::move(alphabets)};
}

bool membership(const DigitVector& x, const MissingDigitSpec& spec) {
  if (x.size() != spec.m())
    throw std::invalid_argument("membership: x has " + std::to_string(x.size()) +
                                " coordinates, spec has " + std::to_string(spec.m()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].base() != spec.base) throw std::invalid_argument("membership: base mismatch");
    const Alphabet& w = spec.alphabets[i];
    for (Digit d : x[i].digits())
      if (!std::binary_search(w.begin(), w.end(), d)) return false;
  }
  return true;
}

DigitVector sample(const MissingDigitSpec& spec, std::size_t depth, unsigned long long seed) {
  if (depth < 1) throw std::invalid_argument("sample depth must be at least 1");
  std::mt19937_64 rng(seed);
  DigitVector out;
  for (const Alphabet& w : spec.alphabets) {
    std::vector<Digit> ds(depth);
    for (auto& d : ds) d = w[rng() % w.size()];
    out.emplace_back(spec.base, std::move(ds), false);
  }
  return out;
}

Dims dims(const MissingDigitSpec& spec) {
  Dims out;
  for (const Alphabet& w : spec.alphabets) {
    out.d.push_back(std::log(static_cast<double>(w.size())) /
                    std::log(static_cast<double>(spec.base)));
    out.dim_K += out.d.back();
  }
  return out;
}

ShiftedSpec normalize_shift(const MissingDigitSpec& spec) {
  ShiftedSpec out;
  out.spec.base = spec.base;
  for (const Alphabet& w : spec.alphabets) {
    Alphabet shifted;
    for (Digit d : w) shifted.push_back(static_cast<Digit>(d - w.front()));
    out.spec.alphabets.push_back(std::move(shifted));
    ExactRational s(w.front(), spec.base - 1);
    s.canonicalize();
    out.shift.push_back(s);
  }
  return out;
}

SumOp sum_op_from_string(const std::string& name) {
  if (name == "plus" || name == "+") return SumOp::plus;
  if (name == "minus" || name == "-") return SumOp::minus;
  throw std::invalid_argument("unknown sumset operation '" + name +
                              "' (expected plus or minus)");
}

std::string to_string(SumOp op) { return op == SumOp::plus ? "plus" : "minus"; }

std::size_t cover_depth_cap(int base) {
  // Keep b^(depth+1) * 2 below 2^63 so interval counts fit in 64 bits.
  std::size_t n = 0;
  const BigInt limit = BigInt(1) << 63;
  while (ipow(base, n + 2) * 2 < limit) ++n;
  return n;
}

namespace {

// Nondeterministic carry automaton on the digits of k: state c_i is the
// prefix of k minus the prefix of P, and k - P must end in E.
struct CoverAutomaton {
  int b = 3;
  std::vector<int> sums;  // sum-digit set S
  long lo = -2;           // state window [lo, hi]
  long hi = 0;
  long e_lo = 0;          // accepting states E
  long e_hi = 0;
  std::size_t n = 0;
  std::map<std::tuple<std::size_t, std::uint64_t, int, int>, std::uint64_t> memo;
  std::vector<int> lo_digits, hi_digits;

  std::uint64_t bit(long c) const { return std::uint64_t{1} << (c - lo); }

  std::uint64_t step(std::uint64_t mask, int d) const {
    std::uint64_t out = 0;
    for (long c = lo; c <= hi; ++c) {
      if (!(mask & bit(c))) continue;
      for (int s : sums) {
        const long nc = static_cast<long>(b) * c + d - s;
        if (nc >= lo && nc <= hi) out |= bit(nc);
      }
    }
    return out;
  }

  bool accepts(std::uint64_t mask) const {
    for (long c = std::max(e_lo, lo); c <= std::min(e_hi, hi); ++c)
      if (mask & bit(c)) return true;
    return false;
  }

  // Number of uncovered completions of positions pos..n-1.
  std::uint64_t count(std::size_t pos, std::uint64_t mask, bool tlo, bool thi) {
    if (pos == n) return accepts(mask) ? 0 : 1;
    const auto key = std::make_tuple(pos, mask, int(tlo), int(thi));
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const int dlo = tlo ? lo_digits[pos] : 0;
    const int dhi = thi ? hi_digits[pos] : b - 1;
    std::uint64_t total = 0;
    for (int d = dlo; d <= dhi; ++d)
      total += count(pos + 1, step(mask, d), tlo && d == dlo, thi && d == dhi);
    memo.emplace(key, total);
    return total;
  }

  void witnesses(std::size_t pos, std::uint64_t mask, bool tlo, bool thi, BigInt prefix,
                 std::size_t limit, std::vector<BigInt>& out) {
    if (out.size() >= limit) return;
    if (pos == n) {
      if (!accepts(mask)) out.push_back(prefix);
      return;
    }
    const int dlo = tlo ? lo_digits[pos] : 0;
    const int dhi = thi ? hi_digits[pos] : b - 1;
    for (int d = dlo; d <= dhi && out.size() < limit; ++d) {
      const std::uint64_t nm = step(mask, d);
      const bool nlo = tlo && d == dlo;
      const bool nhi = thi && d == dhi;
      if (count(pos + 1, nm, nlo, nhi) == 0) continue;
      witnesses(pos + 1, nm, nlo, nhi, prefix * b + d, limit, out);
    }
  }
};

std::vector<int> digits_of(const BigInt& v, int b, std::size_t n) {
  std::vector<int> out(n);
  BigInt r = v;
  for (std::size_t i = n; i-- > 0;) {
    out[i] = static_cast<int>(mpz_fdiv_q_ui(r.get_mpz_t(), r.get_mpz_t(), b));
  }
  return out;
}

BigInt ceil_of(const ExactRational& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

}  // namespace

CoverResult sumset_cover_check(const MissingDigitSpec& spec, SumOp op, std::size_t depth,
                               std::size_t max_witnesses) {
  if (spec.m() != 1)
    throw std::invalid_argument("sumset cover check needs m = 1, got m = " +
                                std::to_string(spec.m()));
  if (depth < 1) throw std::invalid_argument("cover depth must be at least 1");
  const std::size_t cap = cover_depth_cap(spec.base);
  if (depth > cap)
    throw std::invalid_argument("cover depth " + std::to_string(depth) +
                                " exceeds the cap " + std::to_string(cap) + " for base " +
                                std::to_string(spec.base));

  const int b = spec.base;
  const Alphabet& w = spec.alphabets.front();
  // x - y = x + (1 - y) - 1, and 1 - y has the reflected digits.
  CoverAutomaton A;
  A.b = b;
  for (Digit u : w)
    for (Digit v : w) A.sums.push_back(u + (op == SumOp::plus ? v : b - 1 - v));
  std::sort(A.sums.begin(), A.sums.end());
  A.sums.erase(std::unique(A.sums.begin(), A.sums.end()), A.sums.end());

  const ExactRational tmin(A.sums.front(), b - 1);
  const ExactRational tmax(A.sums.back(), b - 1);
  const ExactRational shift = op == SumOp::plus ? 0 : 1;
  CoverResult out;
  out.op = op;
  out.depth = depth;
  out.target_lo = tmin - shift;
  out.target_hi = tmax - shift;
  out.target_lo.canonicalize();
  out.target_hi.canonicalize();

  const BigInt Bn = ipow(b, depth);
  const BigInt k_lo = ceil_of(tmin * Bn);
  const BigInt k_hi = floor_of(tmax * Bn) - 1;
  if (k_hi < k_lo) {
    out.covered = true;
    return out;
  }
  out.intervals = BigInt(k_hi - k_lo + 1).get_ui();

  const long top = floor_of(tmax).get_si();
  A.lo = -2;
  A.hi = top + 1;
  A.e_lo = ceil_of(tmin - 1).get_si();
  A.e_hi = top;
  A.n = depth;

  std::vector<BigInt> found;
  for (long K0 = 0; K0 <= top; ++K0) {
    const BigInt base_k = BigInt(K0) * Bn;
    const BigInt lo = std::max<BigInt>(k_lo - base_k, 0);
    const BigInt hi = std::min<BigInt>(k_hi - base_k, Bn - 1);
    if (hi < lo) continue;
    A.lo_digits = digits_of(lo, b, depth);
    A.hi_digits = digits_of(hi, b, depth);
    A.memo.clear();
    const std::uint64_t start = A.bit(K0);
    out.uncovered += A.count(0, start, true, true);
    if (found.size() < max_witnesses) {
      std::vector<BigInt> ks;
      A.witnesses(0, start, true, true, 0, max_witnesses - found.size(), ks);
      for (auto& k : ks) found.push_back(base_k + k);
    }
  }
  out.covered = out.uncovered == 0;
  for (const BigInt& k : found) {
    ExactRational a(k, Bn), z(k + 1, Bn);
    a.canonicalize();
    z.canonicalize();
    out.witness_gaps.emplace_back(a - shift, z - shift);
  }
  return out;
}

std::string to_text(const MissingDigitSpec& spec) {
  std::ostringstream os;
  os << "b=" << spec.base;
  for (std::size_t i = 0; i < spec.alphabets.size(); ++i) {
    os << ";W" << i + 1 << '=';
    for (std::size_t j = 0; j < spec.alphabets[i].size(); ++j)
      os << (j ? "," : "") << spec.alphabets[i][j];
  }
  return os.str();
}

MissingDigitSpec spec_from_text(std::string_view text) {
  const auto fail = [&](const std::string& why) {
    return std::invalid_argument("malformed missing-digit spec (" + why + "): '" +
                                 std::string(text) + "'");
  };
  const auto parse_int = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 0 || v > kMaxBase)
      throw fail("bad integer");
    return v;
  };
  std::vector<std::string_view> parts;
  for (std::string_view rest = text;;) {
    const auto semi = rest.find(';');
    parts.push_back(rest.substr(0, semi));
    if (semi == std::string_view::npos) break;
    rest = rest.substr(semi + 1);
  }
  if (parts.empty() || !parts[0].starts_with("b=")) throw fail("missing b=");
  const int base = parse_int(parts[0].substr(2));
  std::vector<Alphabet> ws;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string prefix = "W" + std::to_string(i) + "=";
    if (!parts[i].starts_with(prefix)) throw fail("expected " + prefix);
    Alphabet w;
    for (std::string_view rest = parts[i].substr(prefix.size());;) {
      const auto comma = rest.find(',');
      w.push_back(static_cast<Digit>(parse_int(rest.substr(0, comma))));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    ws.push_back(std::move(w));
  }
  return make_spec(base, std::move(ws));
}

}  // namespace dioph
