#ifndef DIOPH_BOUNDS_HPP
#define DIOPH_BOUNDS_HPP

// Closed-form dimension bounds, the one-parameter maximisation for missing-digit
// products, and the liminf quotient along geometric ladders.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dioph/numeric.hpp"

namespace dioph {

struct BoundParams {
  std::optional<long> m;
  std::optional<long> k;
  std::optional<ExactRational> w;
  std::optional<ExactRational> tau;
  std::optional<int> b;
  std::vector<long> alphabet_sizes;  // |W_i|, one per coordinate
  std::vector<double> d;             // explicit weights (khr, falconer)
  std::optional<ExactRational> nu0;
  std::optional<ExactRational> nu1;
  std::optional<long> terms;
};

struct BoundResult {
  std::string formula;
  BoundParams params;
  double value = 0;
  std::optional<ExactRational> exact;  // set when the formula is rational
  std::string validity;
  std::optional<double> argmax;
  std::optional<double> reference;  // closed form the value is compared with
  std::vector<std::string> flags;
};

/// Thrown when parameters fall outside the formula's validity range; the
/// message names the range.
class OutOfRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Identifiers accepted by evaluate_closed_form, in table order.
const std::vector<std::string>& closed_form_ids();

/// Throws OutOfRange, or std::invalid_argument for unknown ids / missing
/// parameters.
BoundResult evaluate_closed_form(const std::string& formula_id, const BoundParams& params);

/// Maximises t -> sum_i d_i (-w t^2 + (w+1) t - 1) / q_i(t) over t > 1 by
/// grid bracketing and golden-section refinement to |dt| < 1e-8. w = 1
/// returns 0 with the flag "degenerate_w_equals_1".
BoundResult maximize_khr(double w, const std::vector<double>& d);

/// The khr objective at t (exposed for tests and tables).
double khr_objective(double t, double w, const std::vector<double>& d);

/// Partial liminf quotients log(m_1...m_{k-1}) / -log(m_k eps_k) along a
/// ladder with log H_k = Lambda^k, m_k = H_k^((nu0-1) d), eps_k = H_k^-nu0,
/// summed over coordinates. `reference` holds the closed-form limit.
BoundResult falconer_liminf(const ExactRational& nu0, const ExactRational& nu1,
                            const std::vector<double>& d, std::size_t terms);

/// Weights d_i = log |W_i| / log b.
std::vector<double> weights_from_sizes(int b, const std::vector<long>& sizes);

struct TableRow {
  std::string formula;
  std::optional<BoundResult> result;
  std::string error;
};

/// Every (m, w)-only formula plus the constants; out-of-range rows carry the
/// violated range instead of a value.
std::vector<TableRow> bounds_table(long m, const ExactRational& w);

}  // namespace dioph

#endif
