#include "dioph/construct.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace dioph {

std::string to_string(PlanKind kind) {
  switch (kind) {
    case PlanKind::homogeneous: return "homogeneous";
    case PlanKind::inhomogeneous: return "inhomogeneous";
    case PlanKind::multi: return "multi";
    case PlanKind::liouville: return "liouville";
    case PlanKind::cantor: return "cantor";
  }
  return "?";
}

PlanKind plan_kind_from_string(const std::string& name) {
  if (name == "homogeneous") return PlanKind::homogeneous;
  if (name == "inhomogeneous") return PlanKind::inhomogeneous;
  if (name == "multi") return PlanKind::multi;
  if (name == "liouville") return PlanKind::liouville;
  if (name == "cantor") return PlanKind::cantor;
  throw std::invalid_argument("unknown construction kind '" + name + "'");
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool in_alphabet(const Alphabet& w, Digit d) {
  return std::binary_search(w.begin(), w.end(), d);
}

const DigitExpansion* target_coord(const SplitPlan& plan, int target, std::size_t l) {
  if (target <= 0) return nullptr;
  return &plan.targets[static_cast<std::size_t>(target - 1)][l];
}

}  // namespace

int certificate_constant(int target) { return target == 0 ? 1 : 2; }

SplitPlan make_plan(const PlanParams& params) {
  require(params.base >= 2 && params.base <= kMaxBase, "base must lie in [2, 65535]");
  require(params.m >= 1, "dimension m must be at least 1");
  require(params.M >= 1, "M must be at least 1");
  require(params.depth > params.M, "depth must exceed M");

  SplitPlan plan;
  plan.kind = params.kind;
  plan.base = params.base;
  plan.m = params.m;
  plan.depth = params.depth;
  plan.targets = params.targets;
  plan.alphabets = params.alphabets;

  for (std::size_t s = 0; s < plan.targets.size(); ++s) {
    require(plan.targets[s].size() == plan.m,
            "target " + std::to_string(s + 1) + " has " +
                std::to_string(plan.targets[s].size()) + " coordinates, expected m = " +
                std::to_string(plan.m));
    for (const auto& t : plan.targets[s])
      require(t.base() == plan.base, "target " + std::to_string(s + 1) +
                                         " has base " + std::to_string(t.base()) +
                                         ", plan base is " + std::to_string(plan.base));
  }

  Schedule schedule;
  ExactRational nu1 = params.nu1.value_or(ExactRational(2));
  switch (params.kind) {
    case PlanKind::homogeneous:
      require(plan.targets.empty(), "homogeneous plans take no targets");
      schedule.kind = ScheduleKind::alternating;
      break;
    case PlanKind::inhomogeneous:
      require(plan.targets.size() == 1, "inhomogeneous plans take exactly one target");
      schedule.kind = ScheduleKind::alternating;
      schedule.targeted = true;
      break;
    case PlanKind::multi: {
      require(!plan.targets.empty(), "multi plans need k >= 1 targets");
      const long k = static_cast<long>(plan.targets.size());
      schedule.kind = ScheduleKind::mod_k_plus_1;
      schedule.k = static_cast<int>(k);
      if (!params.nu1) nu1 = k == 1 ? ExactRational(2) : ExactRational(k, k - 1);
      break;
    }
    case PlanKind::liouville:
      require(!plan.targets.empty(), "liouville plans need a finite, non-empty target list");
      schedule.kind = ScheduleKind::liouville;
      schedule.k = static_cast<int>(plan.targets.size());
      break;
    case PlanKind::cantor: {
      require(plan.targets.empty(), "cantor plans are homogeneous and take no targets");
      require(plan.alphabets.size() == plan.m,
              "cantor plans need one alphabet per coordinate (m = " +
                  std::to_string(plan.m) + ")");
      for (auto& w : plan.alphabets) {
        std::sort(w.begin(), w.end());
        w.erase(std::unique(w.begin(), w.end()), w.end());
        require(w.size() >= 2, "each alphabet needs |W| >= 2");
        require(w.front() == 0, "each alphabet must contain the digit 0");
        require(w.back() < plan.base, "alphabet digit outside the base");
      }
      schedule.kind = ScheduleKind::alternating;
      break;
    }
  }
  schedule.swap_parts = params.swap_parts;
  require(!params.swap_parts || schedule.kind == ScheduleKind::alternating,
          "swap_parts applies to alternating schedules only");

  plan.ladder = build_ladder(params.M, schedule, params.nu0, nu1, params.depth,
                             params.kind == PlanKind::liouville ? params.growth
                                                                : ExactRational(0));
  plan.y0 = (plan.ladder.nu0 - 1) / plan.ladder.Lambda;
  plan.y1 = (plan.ladder.nu1 - 1) / plan.ladder.Lambda;
  plan.y0.canonicalize();
  plan.y1.canonicalize();
  return plan;
}

std::vector<Certificate> plan_certificates(const SplitPlan& plan) {
  std::vector<Certificate> certs;
  const auto& ivs = plan.ladder.intervals;
  for (std::size_t j = 0; j + 1 < ivs.size(); ++j) {
    const Interval& next = ivs[j + 1];
    if (next.h > plan.depth || plan.depth - ivs[j].h < kDepthGuard) break;
    Certificate c;
    c.part = next.role.owner;
    c.j = j;
    c.h = ivs[j].h;
    c.h_next = next.h;
    c.target = next.role.target;
    c.bound = ExactRational(certificate_constant(c.target),
                            ipow(plan.base, c.h_next - c.h));
    c.bound.canonicalize();
    certs.push_back(std::move(c));
  }
  return certs;
}

namespace {

void measure(Certificate& c, const DigitVector& x, const SplitPlan& plan) {
  c.measured = 0;
  c.uncertainty = 0;
  for (std::size_t l = 0; l < x.size(); ++l) {
    const DigitExpansion* t = target_coord(plan, c.target, l);
    const FracError fe =
        frac_error(x[l], c.h, t ? *t : DigitExpansion::zeros(plan.base, 0));
    c.measured = std::max(c.measured, fe.err);
    c.uncertainty = std::max(c.uncertainty, fe.uncertainty);
  }
}

}  // namespace

SplitResult split(const DigitVector& xi, const SplitPlan& plan) {
  require(xi.size() == plan.m, "xi has " + std::to_string(xi.size()) +
                                   " coordinates, plan expects m = " +
                                   std::to_string(plan.m));
  for (std::size_t l = 0; l < xi.size(); ++l) {
    require(xi[l].base() == plan.base, "xi coordinate " + std::to_string(l + 1) +
                                           " has base " + std::to_string(xi[l].base()) +
                                           ", plan base is " + std::to_string(plan.base));
    require(xi[l].depth() >= plan.depth,
            "depth insufficient: xi coordinate " + std::to_string(l + 1) + " has " +
                std::to_string(xi[l].depth()) + " digits, plan needs " +
                std::to_string(plan.depth));
    if (plan.kind == PlanKind::cantor) {
      for (std::size_t pos = 1; pos <= plan.depth; ++pos)
        require(in_alphabet(plan.alphabets[l], xi[l].at(pos)),
                "cantor plan: xi coordinate " + std::to_string(l + 1) +
                    " has a digit outside its alphabet at position " +
                    std::to_string(pos));
    }
  }

  const int b = plan.base;
  const std::size_t D = plan.depth;
  SplitResult result;
  std::vector<int> signed_digits(D);
  for (std::size_t l = 0; l < plan.m; ++l) {
    // Signed digits of x1: prescribed on its own intervals, xi minus the
    // prescribed digits of x0 elsewhere. One carry pass renders them mod 1.
    for (const Interval& iv : plan.ladder.intervals) {
      if (iv.g > D) break;
      const DigitExpansion* t = target_coord(plan, iv.role.target, l);
      for (std::size_t pos = iv.g; pos <= std::min(iv.h, D); ++pos) {
        const int a = t ? t->at(pos - iv.g + 1) : 0;
        signed_digits[pos - 1] =
            iv.role.owner == 1 ? a : static_cast<int>(xi[l].at(pos)) - a;
      }
    }
    std::vector<Digit> ds(D);
    int carry = 0;
    for (std::size_t i = D; i-- > 0;) {
      const int v = signed_digits[i] + carry;
      const int r = ((v % b) + b) % b;
      carry = (v - r) / b;
      ds[i] = static_cast<Digit>(r);
    }
    DigitExpansion x1(b, std::move(ds), false);
    const DigitExpansion xi_d(b, {xi[l].digits().begin(), xi[l].digits().begin() + D},
                              false);
    DifferenceResult diff = subtract(xi_d, x1);
    result.x0.push_back(diff.difference.with_exact(false));
    result.x1.push_back(std::move(x1));
    result.carries.push_back(diff.borrow);
  }

  result.certificates = plan_certificates(plan);
  for (Certificate& c : result.certificates) {
    measure(c, c.part == 0 ? result.x0 : result.x1, plan);
    c.pass = c.measured <= c.bound;
  }

  result.claimed.x1_uniform = plan.y1;
  if (plan.kind != PlanKind::liouville) result.claimed.x0_ordinary = plan.ladder.nu0 - 1;
  return result;
}

SplitReport verify_split(const SplitResult& result, const DigitVector& xi,
                         const SplitPlan& plan) {
  SplitReport report;
  const auto add_entry = [&](std::string check, bool pass, std::string detail) {
    report.entries.push_back({std::move(check), pass, std::move(detail)});
  };

  const bool shape_ok = result.x0.size() == plan.m && result.x1.size() == plan.m &&
                        xi.size() == plan.m;
  add_entry("dimension", shape_ok,
            "m = " + std::to_string(plan.m) + ", x0 " + std::to_string(result.x0.size()) +
                ", x1 " + std::to_string(result.x1.size()) + ", xi " +
                std::to_string(xi.size()));
  if (!shape_ok) return report;

  report.reconstruction_ok = true;
  for (std::size_t l = 0; l < plan.m; ++l) {
    bool ok = result.x0[l].base() == plan.base && result.x1[l].base() == plan.base &&
              xi[l].base() == plan.base && result.x0[l].depth() == plan.depth &&
              result.x1[l].depth() == plan.depth && xi[l].depth() >= plan.depth;
    std::string detail = "coordinate " + std::to_string(l + 1);
    if (ok) {
      const SumResult s = add(result.x0[l], result.x1[l]);
      ok = std::equal(s.sum.digits().begin(), s.sum.digits().end(),
                      xi[l].digits().begin());
      if (!ok) {
        const auto ds = s.sum.digits();
        const auto xs = xi[l].digits();
        const auto where = std::mismatch(ds.begin(), ds.end(), xs.begin());
        detail += ": first mismatch at position " +
                  std::to_string(where.first - ds.begin() + 1);
      }
    } else {
      detail += ": base or depth mismatch";
    }
    report.reconstruction_ok = report.reconstruction_ok && ok;
    add_entry("reconstruction", ok, detail);
  }

  if (plan.kind == PlanKind::cantor) {
    for (std::size_t l = 0; l < plan.m; ++l) {
      for (const DigitVector* x : {&result.x0, &result.x1}) {
        const auto ds = (*x)[l].digits();
        const auto bad = std::find_if(ds.begin(), ds.end(), [&](Digit d) {
          return !in_alphabet(plan.alphabets[l], d);
        });
        const bool ok = bad == ds.end();
        report.alphabet_ok = report.alphabet_ok && ok;
        add_entry("alphabet", ok,
                  std::string(x == &result.x0 ? "x0" : "x1") + " coordinate " +
                      std::to_string(l + 1) +
                      (ok ? "" : ": digit outside W at position " +
                                     std::to_string(bad - ds.begin() + 1)));
      }
    }
  }

  const std::vector<Certificate> expected = plan_certificates(plan);
  bool set_ok = expected.size() == result.certificates.size();
  for (std::size_t i = 0; set_ok && i < expected.size(); ++i) {
    const Certificate& a = expected[i];
    const Certificate& c = result.certificates[i];
    set_ok = a.part == c.part && a.j == c.j && a.h == c.h && a.h_next == c.h_next &&
             a.target == c.target;
  }
  add_entry("certificate_set", set_ok,
            std::to_string(result.certificates.size()) + " issued, " +
                std::to_string(expected.size()) + " expected");

  bool certs_ok = true;
  for (std::size_t i = 0; i < result.certificates.size(); ++i) {
    Certificate fresh = result.certificates[i];
    std::string detail = "part " + std::to_string(fresh.part) + ", h = " +
                         std::to_string(fresh.h);
    bool ok = true;
    try {
      measure(fresh, fresh.part == 0 ? result.x0 : result.x1, plan);
      ExactRational limit = fresh.bound;
      if (i < expected.size() && expected[i].h == fresh.h)
        limit = std::min(limit, expected[i].bound);
      ok = fresh.measured <= limit && fresh.measured == result.certificates[i].measured;
      if (!ok) {
        detail += ": measured " + to_string(fresh.measured) + ", bound " +
                  to_string(limit) + ", recorded " +
                  to_string(result.certificates[i].measured);
      }
    } catch (const std::exception& e) {
      ok = false;
      detail += std::string(": ") + e.what();
    }
    fresh.pass = ok;
    certs_ok = certs_ok && ok;
    report.rechecked.push_back(fresh);
    add_entry("certificate", ok, detail);
  }

  report.all_pass = report.reconstruction_ok && report.alphabet_ok && set_ok && certs_ok;
  return report;
}

DigitVector random_vector(int base, std::size_t m, std::size_t depth,
                          unsigned long long seed) {
  std::mt19937_64 rng(seed);
  DigitVector out;
  for (std::size_t l = 0; l < m; ++l) {
    std::vector<Digit> ds(depth);
    for (auto& d : ds) d = static_cast<Digit>(rng() % static_cast<unsigned>(base));
    out.emplace_back(base, std::move(ds), false);
  }
  return out;
}

}  // namespace dioph
