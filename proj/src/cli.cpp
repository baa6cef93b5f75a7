#include "dioph/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dioph/bounds.hpp"
#include "dioph/cantor.hpp"
#include "dioph/construct.hpp"
#include "dioph/exponents.hpp"
#include "dioph/json_io.hpp"

namespace dioph {
namespace {

// Precondition violations detected after flag parsing; reported with exit 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void emit(std::ostream& out, const Json& j, bool pretty) {
  out << (pretty ? j.dump(2) : j.dump()) << '\n';
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

DigitExpansion parse_value(const std::string& s, int base, std::size_t depth,
                           const std::string& flag) {
  try {
    if (s.rfind("b=", 0) == 0) {
      DigitExpansion x = from_text(s);
      if (x.base() != base)
        throw UsageError(flag + ": digit text has base " + std::to_string(x.base()) +
                         ", expected " + std::to_string(base));
      return x;
    }
    const ExactRational r = parse_rational(s);
    if (r < 0 || r >= 1) throw UsageError(flag + ": value " + s + " must lie in [0, 1)");
    return from_rational(r.get_num(), r.get_den(), base, depth);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

// Coordinates separated by '|'.
DigitVector parse_vector(const std::string& s, int base, std::size_t depth,
                         const std::string& flag) {
  DigitVector v;
  for (const auto& part : split_on(s, '|')) v.push_back(parse_value(part, base, depth, flag));
  return v;
}

Alphabet parse_alphabet(const std::string& s) {
  Alphabet w;
  for (const auto& part : split_on(s, ',')) {
    try {
      const long d = std::stol(part);
      if (d < 0 || d > kMaxBase) throw std::out_of_range("digit");
      w.push_back(static_cast<Digit>(d));
    } catch (const std::exception&) {
      throw UsageError("--W: '" + s + "' is not a comma-separated digit list");
    }
  }
  return w;
}

ExactRational parse_flag_rational(const std::string& s, const std::string& flag) {
  try {
    return parse_rational(s);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

// "b^h" or a decimal integer.
std::vector<BigInt> parse_Q_list(const std::vector<std::string>& items) {
  std::vector<BigInt> Qs;
  for (const auto& item : items) {
    for (const auto& s : split_on(item, ',')) {
      try {
        if (const auto caret = s.find('^'); caret != std::string::npos) {
          Qs.push_back(ipow(std::stoul(s.substr(0, caret)), std::stoul(s.substr(caret + 1))));
        } else {
          BigInt q;
          if (q.set_str(s, 10) != 0) throw std::invalid_argument(s);
          Qs.push_back(q);
        }
      } catch (const std::exception&) {
        throw UsageError("--Q: '" + s + "' is neither an integer nor of the form b^h");
      }
    }
  }
  return Qs;
}

Json read_document(std::istream& in, const std::string& path) {
  try {
    if (path.empty() || path == "-") return Json::parse(in);
    std::ifstream f(path);
    if (!f) throw UsageError("--input: cannot open '" + path + "'");
    return Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("construction document is not valid JSON: ") + e.what());
  }
}

MissingDigitSpec spec_from_flags(const std::string& spec_text, int base,
                                 const std::vector<std::string>& W) {
  try {
    if (!spec_text.empty()) return spec_from_text(spec_text);
    if (W.empty()) throw UsageError("--W: at least one alphabet is required");
    std::vector<Alphabet> ws;
    for (const auto& w : W) ws.push_back(parse_alphabet(w));
    return make_spec(base, std::move(ws));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("--W/--spec: ") + e.what());
  }
}

struct EstimateBundle {
  std::vector<ExponentEstimate> x1_uniform;
  std::optional<ExponentEstimate> x0_ordinary;
  Json liouville = Json::array();
};

EstimateBundle estimate_document(const SplitDocument& doc, ApproxMode mode,
                                 const std::optional<ExactRational>& w_ref) {
  EstimateBundle b;
  const SplitPlan& plan = doc.plan;
  const SplitResult& r = doc.result;
  if (plan.kind == PlanKind::liouville) {
    for (int part = 0; part <= 1; ++part) {
      for (std::size_t s = 1; s <= plan.targets.size(); ++s) {
        const auto Qs = certificate_Q_ladder(r, plan, part, static_cast<int>(s));
        Json row = {{"part", part}, {"target", s}};
        if (Qs.empty()) {
          row["estimate"] = nullptr;
        } else {
          row["estimate"] = to_json(exponent_ladder(part == 0 ? r.x0 : r.x1,
                                                    plan.targets[s - 1], Qs, mode,
                                                    w_ref.value_or(0)));
        }
        b.liouville.push_back(row);
      }
    }
    return b;
  }
  const auto Qs = checkpoint_Q_ladder(plan.ladder, plan.base, plan.depth);
  if (Qs.empty()) throw UsageError("depth too small for any checkpoint");
  const ExactRational w1 = w_ref.value_or(plan.y1);
  if (plan.targets.empty()) {
    b.x1_uniform.push_back(exponent_ladder(r.x1, {}, Qs, mode, w1));
  } else {
    for (const auto& t : plan.targets) b.x1_uniform.push_back(exponent_ladder(r.x1, t, Qs, mode, w1));
  }
  const auto Q0 = certificate_Q_ladder(r, plan, 0);
  if (!Q0.empty())
    b.x0_ordinary = exponent_ladder(r.x0, {}, Q0, mode, w_ref.value_or(plan.ladder.nu0 - 1));
  return b;
}

void strip_records(Json& j) {
  if (j.is_object()) {
    j.erase("records");
    for (auto& [k, v] : j.items()) strip_records(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_records(v);
  }
}

std::string table_text(const std::vector<TableRow>& rows, bool csv) {
  std::ostringstream os;
  if (csv) {
    os << "formula,value,exact,validity,error\n";
    for (const auto& r : rows) {
      os << r.formula << ',';
      if (r.result) {
        os << std::setprecision(15) << r.result->value << ','
           << (r.result->exact ? to_string(*r.result->exact) : "") << ",\""
           << r.result->validity << "\",";
      } else {
        os << ",,,\"" << r.error << '"';
      }
      os << '\n';
    }
    return os.str();
  }
  os << std::left << std::setw(14) << "formula" << std::setw(20) << "value" << "note\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(14) << r.formula;
    if (r.result) {
      std::ostringstream v;
      v << std::setprecision(12) << r.result->value;
      os << std::setw(20) << v.str() << r.result->validity;
    } else {
      os << std::setw(20) << "-" << r.error;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Digit constructions, exponent estimates and dimension bounds"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indented JSON; aligned text for bounds table");

  // construct split
  auto* construct = app.add_subcommand("construct", "Digit-splitting constructions");
  construct->require_subcommand(1);
  auto* split_cmd = construct->add_subcommand("split", "Split xi into x0 + x1 along a ladder");
  std::string kind = "homogeneous";
  std::size_t m = 1, depth = 2000, M = 8;
  int base = 3;
  std::string nu0_s = "2", nu1_s, growth_s = "1";
  std::optional<unsigned long long> seed;
  std::vector<std::string> xi_s, theta_s, W_s;
  bool swap = false;
  split_cmd->add_option("--kind", kind, "homogeneous|inhomogeneous|multi|liouville|cantor")
      ->capture_default_str();
  split_cmd->add_option("--m", m, "Dimension")->capture_default_str();
  split_cmd->add_option("--b", base, "Base")->capture_default_str();
  split_cmd->add_option("--M", M, "Initial block length")->capture_default_str();
  split_cmd->add_option("--nu0", nu0_s, "Ratio nu0 (rational)")->capture_default_str();
  split_cmd->add_option("--nu1", nu1_s, "Ratio nu1 (rational; multi defaults to k/(k-1))");
  split_cmd->add_option("--growth", growth_s, "Liouville ratio growth per interval")
      ->capture_default_str();
  split_cmd->add_option("--depth", depth, "Digits rendered")->capture_default_str();
  split_cmd->add_option("--seed", seed, "Seed for a random xi");
  split_cmd->add_option("--xi", xi_s, "xi coordinates, '|'-separated (rational or digit text)");
  split_cmd->add_option("--theta", theta_s, "One target per flag, coordinates '|'-separated");
  split_cmd->add_option("--W", W_s, "Cantor alphabet per coordinate, e.g. 0,2");
  split_cmd->add_flag("--swap", swap, "Exchange the roles of x0 and x1");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Exponent estimates");
  std::string input_path, mode_s = "b_ary", w_ref_s;
  std::vector<std::string> x_s, Q_s;
  std::string est_theta_s;
  double tolerance = 0.02;
  bool brief = false;
  estimate->add_option("--input", input_path, "Construction document (default: stdin)");
  estimate->add_option("--mode", mode_s, "b_ary|all_q")->capture_default_str();
  estimate->add_option("--w-ref", w_ref_s, "Reference exponent for c(Q)");
  estimate->add_option("--x", x_s, "Direct mode: point, coordinates '|'-separated");
  estimate->add_option("--theta", est_theta_s, "Direct mode: target");
  estimate->add_option("--Q", Q_s, "Direct mode: Q ladder, integers or b^h, comma-separated");
  estimate->add_option("--b", base, "Direct mode: base")->capture_default_str();
  estimate->add_option("--depth", depth, "Direct mode: digits for rational inputs")
      ->capture_default_str();
  estimate->add_option("--tolerance", tolerance, "Claim tolerance")->capture_default_str();
  estimate->add_flag("--brief", brief, "Omit per-Q records");

  // verify
  auto* verify = app.add_subcommand("verify", "Recheck a construction document");
  bool with_exponents = false;
  verify->add_option("--input", input_path, "Construction document (default: stdin)");
  verify->add_flag("--exponents", with_exponents, "Also check claimed exponents");
  verify->add_option("--tolerance", tolerance, "Claim tolerance")->capture_default_str();

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Dimension bounds");
  bounds->require_subcommand(1);
  auto* beval = bounds->add_subcommand("eval", "Evaluate one formula");
  std::string formula;
  std::optional<long> bm, bk, terms;
  std::string w_s, tau_s, bnu1_s, bnu0_s;
  std::optional<int> bb;
  std::vector<double> d_list;
  beval->add_option("formula", formula, "Formula id (see README), khr or falconer")->required();
  beval->add_option("--m", bm, "Dimension");
  beval->add_option("--k", bk, "Number of targets");
  beval->add_option("--w", w_s, "Exponent (rational)");
  beval->add_option("--tau", tau_s, "Exponent tau (rational)");
  beval->add_option("--b", bb, "Base");
  beval->add_option("--W", W_s, "Alphabet per coordinate, e.g. 0,2");
  beval->add_option("--d", d_list, "Weights d_i");
  beval->add_option("--nu0", bnu0_s, "Ratio nu0 (falconer)");
  beval->add_option("--nu1", bnu1_s, "Ratio nu1 (falconer)");
  beval->add_option("--terms", terms, "Ladder terms (falconer)");
  auto* btable = bounds->add_subcommand("table", "All (m, w) formulas");
  long tm = 2;
  std::string tw_s;
  bool csv = false;
  btable->add_option("--m", tm, "Dimension")->required();
  btable->add_option("--w", tw_s, "Exponent (rational)")->required();
  btable->add_flag("--csv", csv, "CSV rows instead of JSON");

  // cantor
  auto* cantor = app.add_subcommand("cantor", "Missing-digit sets");
  cantor->require_subcommand(1);
  std::string spec_s, op_s = "plus";
  std::size_t witnesses = 32;
  const auto spec_flags = [&](CLI::App* c) {
    c->add_option("--b", base, "Base")->capture_default_str();
    c->add_option("--W", W_s, "Alphabet per coordinate, e.g. 0,2");
    c->add_option("--spec", spec_s, "Spec text b=..;W1=..");
  };
  auto* cmember = cantor->add_subcommand("member", "Membership of a point");
  spec_flags(cmember);
  cmember->add_option("--x", x_s, "Point, coordinates '|'-separated")->required();
  cmember->add_option("--depth", depth, "Digits for rational inputs")->capture_default_str();
  auto* csample = cantor->add_subcommand("sample", "Seeded sample from the natural measure");
  spec_flags(csample);
  csample->add_option("--depth", depth, "Digits")->capture_default_str();
  csample->add_option("--seed", seed, "Seed")->required();
  auto* cdims = cantor->add_subcommand("dims", "Dimensions log|W_i|/log b");
  spec_flags(cdims);
  auto* ccover = cantor->add_subcommand("cover", "Finite-resolution sumset cover check");
  spec_flags(ccover);
  ccover->add_option("--op", op_s, "plus|minus")->capture_default_str();
  ccover->add_option("--depth", depth, "Resolution b^-depth")->required();
  ccover->add_option("--witnesses", witnesses, "Maximum gaps listed")->capture_default_str();

  // reverse-demo
  auto* reverse = app.add_subcommand("reverse-demo", "Two-target uniform exponent check");
  std::size_t samples = 50;
  double tol = 0.05;
  std::vector<std::size_t> R_list;
  std::size_t rdepth = 5100;
  reverse->add_option("--depth", rdepth, "Digits of theta1 and xi")->capture_default_str();
  reverse->add_option("--samples", samples, "Random xi")->capture_default_str();
  reverse->add_option("--seed", seed, "Seed")->required();
  reverse->add_option("--tol", tol, "Tolerance")->capture_default_str();
  reverse->add_option("--R", R_list, "Exponents R of Q = 3^R (default: geometric)");

  // Global flags such as --pretty may follow the subcommand.
  const auto fall = [](auto& self, CLI::App* a) -> void {
    for (CLI::App* sub : a->get_subcommands({})) {
      sub->fallthrough();
      self(self, sub);
    }
  };
  fall(fall, &app);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*split_cmd) {
      PlanParams p;
      p.kind = plan_kind_from_string(kind);
      p.base = base;
      p.m = m;
      p.depth = depth;
      p.M = M;
      p.nu0 = parse_flag_rational(nu0_s, "--nu0");
      if (!nu1_s.empty()) p.nu1 = parse_flag_rational(nu1_s, "--nu1");
      p.growth = parse_flag_rational(growth_s, "--growth");
      p.swap_parts = swap;
      for (const auto& t : theta_s) p.targets.push_back(parse_vector(t, base, depth, "--theta"));
      for (const auto& w : W_s) p.alphabets.push_back(parse_alphabet(w));
      SplitPlan plan;
      try {
        plan = make_plan(p);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      DigitVector xi;
      if (!xi_s.empty()) {
        if (xi_s.size() != 1) throw UsageError("--xi: give coordinates '|'-separated in one flag");
        xi = parse_vector(xi_s.front(), base, depth, "--xi");
      } else if (!seed) {
        throw UsageError("--seed: required when --xi is not given (no wall-clock seeding)");
      } else if (p.kind == PlanKind::cantor) {
        xi = sample(make_spec(base, plan.alphabets), depth, *seed);
      } else {
        xi = random_vector(base, m, depth, *seed);
      }
      SplitResult result;
      try {
        result = split(xi, plan);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      Json doc = split_document(p, plan, xi, result);
      doc["inputs"]["seed"] = seed ? Json(*seed) : Json(nullptr);
      emit(out, doc, pretty);
      return doc["certificates_failed"].get<std::size_t>() == 0 ? kExitOk : kExitFailed;
    }

    if (*estimate) {
      const ApproxMode mode = approx_mode_from_string(mode_s);
      std::optional<ExactRational> w_ref;
      if (!w_ref_s.empty()) w_ref = parse_flag_rational(w_ref_s, "--w-ref");
      if (!x_s.empty()) {
        if (x_s.size() != 1) throw UsageError("--x: give coordinates '|'-separated in one flag");
        if (Q_s.empty()) throw UsageError("--Q: required in direct mode");
        const DigitVector x = parse_vector(x_s.front(), base, depth, "--x");
        DigitVector theta;
        if (!est_theta_s.empty()) theta = parse_vector(est_theta_s, base, depth, "--theta");
        Json j = to_json(exponent_ladder(x, theta, parse_Q_list(Q_s), mode, w_ref.value_or(0)));
        if (brief) strip_records(j);
        emit(out, j, pretty);
        return kExitOk;
      }
      const SplitDocument doc = parse_split_document(read_document(in, input_path));
      const EstimateBundle est = estimate_document(doc, mode, w_ref);
      Json j = Json::object();
      j["kind"] = to_string(doc.plan.kind);
      Json x1 = Json::array();
      for (const auto& e : est.x1_uniform) x1.push_back(to_json(e));
      j["x1_uniform"] = x1;
      j["x0_ordinary"] = est.x0_ordinary ? to_json(*est.x0_ordinary) : Json(nullptr);
      if (doc.plan.kind == PlanKind::liouville) {
        j["liouville"] = est.liouville;
      } else {
        j["claims"] = to_json(verify_exponent_claims(doc.result, doc.plan, est.x1_uniform,
                                                     est.x0_ordinary, tolerance));
      }
      if (brief) strip_records(j);
      emit(out, j, pretty);
      return kExitOk;
    }

    if (*verify) {
      const SplitDocument doc = parse_split_document(read_document(in, input_path));
      const SplitReport report = verify_split(doc.result, doc.xi, doc.plan);
      Json j = {{"split", to_json(report)}};
      bool ok = report.all_pass;
      if (with_exponents && doc.plan.kind != PlanKind::liouville) {
        const EstimateBundle est = estimate_document(doc, ApproxMode::b_ary, std::nullopt);
        const ClaimReport claims = verify_exponent_claims(doc.result, doc.plan, est.x1_uniform,
                                                          est.x0_ordinary, tolerance);
        j["claims"] = to_json(claims);
        ok = ok && claims.all_pass;
      }
      j["all_pass"] = ok;
      emit(out, j, pretty);
      return ok ? kExitOk : kExitFailed;
    }

    if (*beval) {
      BoundResult r;
      if (formula == "khr") {
        if (w_s.empty()) throw UsageError("--w: required for khr");
        std::vector<double> d = d_list;
        if (d.empty()) {
          if (!bb || W_s.empty()) throw UsageError("khr needs --d or --b with --W");
          std::vector<long> sizes;
          for (const auto& w : W_s) sizes.push_back(static_cast<long>(parse_alphabet(w).size()));
          d = weights_from_sizes(*bb, sizes);
        }
        r = maximize_khr(parse_flag_rational(w_s, "--w").get_d(), d);
      } else if (formula == "falconer") {
        if (bnu0_s.empty() || bnu1_s.empty()) throw UsageError("falconer needs --nu0 and --nu1");
        r = falconer_liminf(parse_flag_rational(bnu0_s, "--nu0"),
                            parse_flag_rational(bnu1_s, "--nu1"),
                            d_list.empty() ? std::vector<double>{1.0} : d_list,
                            static_cast<std::size_t>(terms.value_or(50)));
      } else {
        BoundParams p;
        p.m = bm;
        p.k = bk;
        if (!w_s.empty()) p.w = parse_flag_rational(w_s, "--w");
        if (!tau_s.empty()) p.tau = parse_flag_rational(tau_s, "--tau");
        p.b = bb;
        for (const auto& w : W_s) p.alphabet_sizes.push_back(static_cast<long>(parse_alphabet(w).size()));
        r = evaluate_closed_form(formula, p);
      }
      emit(out, to_json(r), pretty);
      return kExitOk;
    }

    if (*btable) {
      const auto rows = bounds_table(tm, parse_flag_rational(tw_s, "--w"));
      if (csv || pretty) {
        out << table_text(rows, csv);
        return kExitOk;
      }
      Json j = Json::array();
      for (const auto& r : rows) {
        if (r.result) {
          j.push_back(to_json(*r.result));
        } else {
          j.push_back({{"formula", r.formula}, {"error", r.error}});
        }
      }
      emit(out, j, pretty);
      return kExitOk;
    }

    if (*cmember || *csample || *cdims || *ccover) {
      const MissingDigitSpec spec = spec_from_flags(spec_s, base, W_s);
      if (*cmember) {
        if (x_s.size() != 1) throw UsageError("--x: give coordinates '|'-separated in one flag");
        const DigitVector x = parse_vector(x_s.front(), spec.base, depth, "--x");
        emit(out, {{"spec", to_text(spec)}, {"member", membership(x, spec)}}, pretty);
        return kExitOk;
      }
      if (*csample) {
        Json xs = Json::array();
        for (const auto& x : sample(spec, depth, *seed)) xs.push_back(to_text(x));
        emit(out, {{"spec", to_text(spec)}, {"seed", *seed}, {"x", xs}}, pretty);
        return kExitOk;
      }
      if (*cdims) {
        const Dims d = dims(spec);
        emit(out, {{"spec", to_text(spec)}, {"d", d.d}, {"dim_K", d.dim_K}}, pretty);
        return kExitOk;
      }
      const CoverResult r = sumset_cover_check(spec, sum_op_from_string(op_s), depth, witnesses);
      Json j = to_json(r);
      j["spec"] = to_text(spec);
      emit(out, j, pretty);
      return r.covered ? kExitOk : kExitFailed;
    }

    if (*reverse) {
      const auto Rs = R_list.empty() ? default_reverse_ladder(rdepth) : R_list;
      const ReverseReport r = reverse_demo(rdepth, Rs, samples, *seed, tol);
      emit(out, to_json(r), pretty);
      return r.all_pass ? kExitOk : kExitFailed;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace dioph
