#include "dioph/numeric.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

namespace dioph {

BigInt ipow(unsigned long base, std::size_t exp) {
  // Scans ask for the same powers over and over; keep a per-thread table.
  thread_local std::map<unsigned long, std::vector<BigInt>> cache;
  constexpr std::size_t kCached = 1 << 14;
  if (exp >= kCached) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
  }
  auto& table = cache[base];
  if (table.empty()) table.emplace_back(1);
  while (table.size() <= exp) table.push_back(table.back() * base);
  return table[exp];
}

double log_abs(const BigInt& n) {
  if (n == 0) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

double log_value(const ExactRational& r) {
  if (r == 0) return -std::numeric_limits<double>::infinity();
  return log_abs(r.get_num()) - log_abs(r.get_den());
}

ExactRational parse_rational(const std::string& text) {
  const auto bad = [&] {
    return std::invalid_argument("not a rational number: '" + text + "'");
  };
  if (text.empty()) throw bad();
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    // Terminating decimal, e.g. "0.03" -> 3/100.
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t scale = text.size() - dot - 1;
    if (digits.empty() || digits == "-" || text.find('/') != std::string::npos)
      throw bad();
    BigInt n;
    if (n.set_str(digits, 10) != 0) throw bad();
    ExactRational r(n, ipow(10, scale));
    r.canonicalize();
    return r;
  }
  ExactRational r;
  if (r.set_str(text, 10) != 0 || r.get_den() == 0) throw bad();
  r.canonicalize();
  return r;
}

std::string to_string(const ExactRational& r) { return r.get_str(10); }

BigInt floor_of(const ExactRational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

}  // namespace dioph
