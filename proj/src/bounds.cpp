#include "dioph/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dioph {

namespace {

long need_m(const BoundParams& p, const std::string& id, long min_m) {
  if (!p.m) throw std::invalid_argument(id + " needs parameter m");
  if (*p.m < min_m)
    throw OutOfRange(id + ": requires m >= " + std::to_string(min_m) + ", got m = " +
                     std::to_string(*p.m));
  return *p.m;
}

const ExactRational& need_w(const BoundParams& p, const std::string& id) {
  if (!p.w) throw std::invalid_argument(id + " needs parameter w");
  return *p.w;
}

void range_check(bool ok, const std::string& id, const std::string& range,
                 const ExactRational& w) {
  if (!ok) throw OutOfRange(id + ": requires " + range + ", got w = " + to_string(w));
}

BoundResult exact_result(std::string id, const BoundParams& p, ExactRational v,
                         std::string validity) {
  v.canonicalize();
  BoundResult r;
  r.formula = std::move(id);
  r.params = p;
  r.value = v.get_d();
  r.exact = v;
  r.validity = std::move(validity);
  return r;
}

BoundResult double_result(std::string id, const BoundParams& p, double v,
                          std::string validity) {
  BoundResult r;
  r.formula = std::move(id);
  r.params = p;
  r.value = v;
  r.validity = std::move(validity);
  return r;
}

double dim_K(const BoundParams& p, const std::string& id) {
  if (!p.b) throw std::invalid_argument(id + " needs parameter b");
  if (p.alphabet_sizes.empty())
    throw std::invalid_argument(id + " needs at least one alphabet (W)");
  double s = 0;
  for (double d : weights_from_sizes(*p.b, p.alphabet_sizes)) s += d;
  return s;
}

}  // namespace

std::vector<double> weights_from_sizes(int b, const std::vector<long>& sizes) {
  if (b < 2) throw OutOfRange("requires b >= 2");
  std::vector<double> d;
  for (long s : sizes) {
    if (s < 2 || s > b)
      throw OutOfRange("requires 2 <= |W| <= b, got |W| = " + std::to_string(s));
    d.push_back(std::log(static_cast<double>(s)) / std::log(static_cast<double>(b)));
  }
  return d;
}

const std::vector<std::string>& closed_form_ids() {
  static const std::vector<std::string> ids = {
      "dfsu",   "dfsuoben", "bchch",  "blau",        "thmH",  "ax3",
      "simu",   "coro",     "jarnik", "jarnik_bary", "idne",  "cantor",
      "habicht", "uh",      "uh_tilde", "lemus",     "khalil_upper", "haupack"};
  return ids;
}

BoundResult evaluate_closed_form(const std::string& id, const BoundParams& p) {
  const double log2 = std::log(2.0);
  const double log3 = std::log(3.0);

  if (id == "dfsu") {
    const long m = need_m(p, id, 1);
    return exact_result(id, p, ExactRational(m - 1) + ExactRational(1, m + 1), "m >= 1");
  }
  if (id == "dfsuoben") {
    const long m = need_m(p, id, 2);
    const ExactRational& w = need_w(p, id);
    range_check(w >= ExactRational(1, m) && w < 1, id, "w in [1/m, 1)", w);
    const ExactRational mm(m);
    const ExactRational first = mm - 1 + ExactRational(1, m + 1) -
                                (2 * mm + 1) * (mm * w - 1) / ((mm + 1) * (w + 1));
    const ExactRational second = mm - mm * (mm - 1) * w / (mm - w);
    return exact_result(id, p, std::max(first, second), "m >= 2, w in [1/m, 1)");
  }
  if (id == "bchch") {
    if (p.m && *p.m != 2) throw OutOfRange(id + ": requires m = 2");
    const ExactRational& w = need_w(p, id);
    range_check(w > ExactRational(1, 2) && w < 1, id, "w in (1/2, 1)", w);
    return exact_result(id, p, 2 - 2 * w, "m = 2, w in (1/2, 1)");
  }
  if (id == "blau") {
    const long m = need_m(p, id, 2);
    const ExactRational& w = need_w(p, id);
    range_check(w > 0, id, "w > 0", w);
    const ExactRational mm(m);
    return exact_result(id, p, std::min(ExactRational(mm - (1 - mm * w) / (1 + w)), mm), "m >= 2, w > 0");
  }
  if (id == "thmH") {
    const long m = need_m(p, id, 1);
    const ExactRational& w = need_w(p, id);
    range_check(w >= 0 && w < 1, id, "w in [0, 1)", w);
    return exact_result(id, p, (1 - w) * m, "m >= 1, w in [0, 1)");
  }
  if (id == "ax3") {
    const long m = need_m(p, id, 1);
    const ExactRational& w = need_w(p, id);
    range_check(w >= 0 && w < 1, id, "w in [0, 1)", w);
    const ExactRational r = (1 - w) / (1 + w);
    return exact_result(id, p, m * r * r, "m >= 1, w in [0, 1)");
  }
  if (id == "simu") {
    const long m = need_m(p, id, 1);
    const ExactRational& w = need_w(p, id);
    const long k = p.k.value_or(1);
    if (k < 1) throw OutOfRange(id + ": requires k >= 1");
    range_check(w >= 0 && w < 1, id, "w in [0, 1)", w);
    return double_result(id, p, (1 - k * std::numbers::e * w.get_d()) * m,
                         "m >= 1, k >= 1, w in [0, 1)");
  }
  if (id == "coro") {
    const long m = need_m(p, id, 2);
    if (p.w) {
      const double limit = std::pow(std::sqrt(static_cast<double>(m)) - 1, 2) / m;
      range_check(*p.w >= 0 && p.w->get_d() < limit, id,
                  "w in [0, (sqrt(m)-1)^2/m) = [0, " + std::to_string(limit) + ")", *p.w);
    }
    return exact_result(id, p, 1 - ExactRational(1, m + 1), "m >= 2, w < (sqrt(m)-1)^2/m");
  }
  if (id == "jarnik") {
    const long m = need_m(p, id, 1);
    const ExactRational& w = need_w(p, id);
    range_check(w >= ExactRational(1, m), id, "w >= 1/m", w);
    return exact_result(id, p, ExactRational(m + 1) / (w + 1), "m >= 1, w >= 1/m");
  }
  if (id == "jarnik_bary") {
    const long m = need_m(p, id, 1);
    const ExactRational& w = need_w(p, id);
    range_check(w >= 0, id, "w >= 0", w);
    return exact_result(id, p, ExactRational(m) / (w + 1), "m >= 1, w >= 0");
  }
  if (id == "idne") {
    const ExactRational& w = need_w(p, id);
    range_check(w > 0 && w < 1, id, "w in (0, 1)", w);
    const double wd = w.get_d();
    return double_result(id, p, wd + 1 - 2 * std::sqrt(wd), "w in (0, 1)");
  }
  if (id == "cantor") {
    const ExactRational& w = need_w(p, id);
    range_check(w >= 0 && w < 1, id, "w in [0, 1)", w);
    return double_result(id, p, (1 - w.get_d()) * dim_K(p, id),
                         "w in [0, 1), 2 <= |W_i| <= b");
  }
  if (id == "habicht") {
    const double dk = dim_K(p, id);
    const double m = static_cast<double>(p.alphabet_sizes.size());
    return double_result(id, p, (1 - 1 / m) * dk, "2 <= |W_i| <= b");
  }
  if (id == "uh") return double_result(id, p, log2 / log3, "K = C x C, C the middle-third set");
  if (id == "uh_tilde")
    return double_result(id, p, log2 / (2 * log3) + 0.5, "K = R x C, C the middle-third set");
  if (id == "lemus") {
    if (!p.tau) throw std::invalid_argument(id + " needs parameter tau");
    if (*p.tau < 0) throw OutOfRange(id + ": requires tau >= 0, got tau = " + to_string(*p.tau));
    return double_result(id, p, dim_K(p, id) / (p.tau->get_d() + 1),
                         "tau >= 0, 2 <= |W_i| <= b");
  }
  if (id == "khalil_upper")
    return double_result(id, p, 4 * log2 / (3 * log3), "K = C x C, C the middle-third set");
  if (id == "haupack") {
    if (p.alphabet_sizes.size() != 1)
      throw std::invalid_argument(id + " needs exactly one alphabet (W)");
    return double_result(id, p, dim_K(p, id), "2 <= |W| <= b");
  }
  throw std::invalid_argument("unknown formula id '" + id + "'");
}

double khr_objective(double t, double w, const std::vector<double>& d) {
  double sum = 0;
  const double num = -w * t * t + (w + 1) * t - 1;
  for (double di : d) {
    const double den = (w + 1) * (1 - di) * t * t + ((w + 2) * di - 1) * t - di;
    sum += di * num / den;
  }
  return sum;
}

BoundResult maximize_khr(double w, const std::vector<double>& d) {
  BoundParams params;
  params.d = d;
  params.w = ExactRational(w);
  if (!(w > 0 && w <= 1)) throw OutOfRange("khr: requires w in (0, 1), got w = " + std::to_string(w));
  if (d.empty()) throw std::invalid_argument("khr needs at least one weight d_i");
  for (double di : d)
    if (!(di > 0 && di <= 1)) throw OutOfRange("khr: requires each d_i in (0, 1]");

  BoundResult r;
  r.formula = "khr";
  r.params = params;
  r.validity = "w in (0, 1), d_i in (0, 1]";
  if (w == 1) {
    r.value = 0;
    r.flags.push_back("degenerate_w_equals_1");
    return r;
  }

  // The numerator -(w t - 1)(t - 1) is positive exactly on (1, 1/w).
  const double lo = 1;
  const double hi = 1 / w;
  std::vector<double> breaks = {lo, hi};
  for (double di : d) {
    const double A = (w + 1) * (1 - di);
    const double B = (w + 2) * di - 1;
    const double C = -di;
    std::vector<double> roots;
    if (A == 0) {
      if (B != 0) roots.push_back(-C / B);
    } else {
      const double disc = B * B - 4 * A * C;
      if (disc >= 0) {
        const double s = std::sqrt(disc);
        roots.push_back((-B - s) / (2 * A));
        roots.push_back((-B + s) / (2 * A));
      }
    }
    for (double x : roots)
      if (x > lo && x < hi) breaks.push_back(x);
  }
  std::sort(breaks.begin(), breaks.end());

  const auto f = [&](double t) { return khr_objective(t, w, d); };
  constexpr int kGrid = 4000;
  constexpr double kGap = 1e-9;  // distance kept from poles and endpoints
  double best_t = std::nan("");
  double best_v = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s] + kGap;
    const double c = breaks[s + 1] - kGap;
    if (!(c > a)) continue;
    const double step = (c - a) / kGrid;
    int arg = 0;
    double vmax = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kGrid; ++i) {
      const double v = f(a + i * step);
      if (v > vmax) {
        vmax = v;
        arg = i;
      }
    }
    double x0 = a + std::max(arg - 1, 0) * step;
    double x3 = a + std::min(arg + 1, kGrid) * step;
    const double invphi = (std::sqrt(5.0) - 1) / 2;
    double x1 = x3 - invphi * (x3 - x0);
    double x2 = x0 + invphi * (x3 - x0);
    double f1 = f(x1), f2 = f(x2);
    while (x3 - x0 > 1e-9) {
      if (f1 < f2) {
        x0 = x1;
        x1 = x2;
        f1 = f2;
        x2 = x0 + invphi * (x3 - x0);
        f2 = f(x2);
      } else {
        x3 = x2;
        x2 = x1;
        f2 = f1;
        x1 = x3 - invphi * (x3 - x0);
        f1 = f(x1);
      }
    }
    const double t = (x0 + x3) / 2;
    const double v = f(t);
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  }
  r.value = best_v;
  r.argmax = best_t;
  return r;
}

BoundResult falconer_liminf(const ExactRational& nu0, const ExactRational& nu1,
                            const std::vector<double>& d, std::size_t terms) {
  if (nu0 <= 1 || nu1 <= 1)
    throw OutOfRange("falconer: requires nu0 > 1 and nu1 > 1 (non-expanding ladder)");
  if (terms < 3) throw OutOfRange("falconer: requires terms >= 3");
  if (d.empty()) throw std::invalid_argument("falconer needs at least one weight d_i");
  for (double di : d)
    if (!(di > 0 && di <= 1)) throw OutOfRange("falconer: requires each d_i in (0, 1]");

  const double n0 = nu0.get_d();
  const double lambda = ExactRational(nu0 * nu1).get_d();
  // S_k = sum_{i<k} Lambda^(i-k), S_1 = 0, S_{k+1} = (S_k + 1) / Lambda.
  double S = 0;
  for (std::size_t k = 1; k < terms; ++k) S = (S + 1) / lambda;

  BoundResult r;
  r.formula = "falconer";
  r.params.nu0 = nu0;
  r.params.nu1 = nu1;
  r.params.d = d;
  r.params.terms = static_cast<long>(terms);
  r.validity = "nu0 > 1, nu1 > 1, d_i in (0, 1], terms >= 3";
  double value = 0, limit = 0;
  for (double di : d) {
    const double c = (n0 - 1) * di / (n0 - (n0 - 1) * di);
    value += c * S;
    limit += c / (lambda - 1);
  }
  r.value = value;
  r.reference = limit;
  return r;
}

std::vector<TableRow> bounds_table(long m, const ExactRational& w) {
  std::vector<TableRow> rows;
  BoundParams p;
  p.m = m;
  p.w = w;
  for (const char* id : {"dfsu", "dfsuoben", "bchch", "blau", "thmH", "ax3", "simu",
                                "coro", "jarnik", "jarnik_bary", "idne", "uh", "uh_tilde",
                                "khalil_upper"}) {
    TableRow row;
    row.formula = id;
    BoundParams q = p;
    if (std::string(id) == "dfsu" || std::string(id) == "uh" ||
        std::string(id) == "uh_tilde" || std::string(id) == "khalil_upper")
      q.w.reset();
    if (std::string(id) == "uh" || std::string(id) == "uh_tilde" ||
        std::string(id) == "khalil_upper" || std::string(id) == "idne")
      q.m.reset();
    try {
      row.result = evaluate_closed_form(id, q);
    } catch (const std::invalid_argument& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dioph
