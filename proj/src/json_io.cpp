#include "dioph/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace dioph {

Json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return nullptr;
  return v;
}

namespace {

Json rational(const ExactRational& r) { return to_string(r); }

Json texts(const DigitVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_text(x));
  return a;
}

DigitVector parse_texts(const Json& a) {
  if (!a.is_array()) throw std::invalid_argument("expected an array of digit strings");
  DigitVector out;
  for (const auto& t : a) out.push_back(from_text(t.get<std::string>()));
  return out;
}

Json role_json(const Role& r) {
  return {{"owner", r.owner}, {"target", r.target}};
}

}  // namespace

Json to_json(const IntervalLadder& ladder) {
  Json ivs = Json::array();
  for (const Interval& iv : ladder.intervals)
    ivs.push_back({{"j", iv.j}, {"g", iv.g}, {"h", iv.h}, {"role", role_json(iv.role)}});
  return {{"M", ladder.M},
          {"schedule", to_string(ladder.schedule.kind)},
          {"k", ladder.schedule.k},
          {"nu0", rational(ladder.nu0)},
          {"nu1", rational(ladder.nu1)},
          {"growth", rational(ladder.growth)},
          {"Lambda", rational(ladder.Lambda)},
          {"intervals", ivs}};
}

Json to_json(const Certificate& c) {
  return {{"part", c.part},       {"j", c.j},
          {"h", c.h},             {"h_next", c.h_next},
          {"target", c.target},   {"bound", rational(c.bound)},
          {"measured", rational(c.measured)},
          {"uncertainty", rational(c.uncertainty)},
          {"pass", c.pass}};
}

Json to_json(const SplitReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries)
    entries.push_back({{"check", e.check}, {"pass", e.pass}, {"detail", e.detail}});
  std::size_t failed = 0;
  for (const auto& e : report.entries) failed += e.pass ? 0 : 1;
  return {{"all_pass", report.all_pass},
          {"reconstruction_ok", report.reconstruction_ok},
          {"alphabet_ok", report.alphabet_ok},
          {"checks", report.entries.size()},
          {"failed", failed},
          {"entries", entries}};
}

Json to_json(const ApproxRecord& r) {
  Json p = Json::array();
  for (const auto& v : r.p_best) p.push_back(v.get_str());
  return {{"Q", r.Q.get_str()},
          {"q_best", r.q_best.get_str()},
          {"N", r.N},
          {"p_best", p},
          {"err", rational(r.err)},
          {"log_err", number(log_value(r.err))},
          {"uncertainty", rational(r.uncertainty)},
          {"c_of_Q", number(r.c_of_Q)}};
}

Json to_json(const ExponentEstimate& e) {
  Json recs = Json::array();
  for (const auto& r : e.records) recs.push_back(to_json(r));
  return {{"mode", to_string(e.mode)},
          {"m", e.m},
          {"w_ref", rational(e.w_ref)},
          {"uniform_lower", number(e.uniform_lower)},
          {"ordinary_lower", number(e.ordinary_lower)},
          {"truncation_uncertainty", number(e.truncation_uncertainty)},
          {"c_nonincreasing_tail", e.c_nonincreasing_tail},
          {"rational", e.rational},
          {"records", recs}};
}

Json to_json(const ClaimReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"claim", c.claim},
                      {"claimed", number(c.claimed)},
                      {"measured", number(c.measured)},
                      {"tolerance", number(c.tolerance)},
                      {"pass", c.pass}});
  return {{"all_pass", r.all_pass}, {"checks", checks}};
}

Json to_json(const ReverseReport& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"label", s.label},
                       {"trivial", s.trivial},
                       {"w1_uniform", number(s.w1_uniform)},
                       {"w2_uniform", number(s.w2_uniform)},
                       {"w1_ordinary", number(s.w1_ordinary)},
                       {"w2_ordinary", number(s.w2_ordinary)},
                       {"sum", number(s.w1_uniform + s.w2_uniform)},
                       {"sum_ok", s.sum_ok},
                       {"pp1_ok", s.pp1_ok},
                       {"prop_ok", s.prop_ok}});
  std::string head1, head2;
  for (std::size_t i = 1; i <= std::min<std::size_t>(8, r.theta1.depth()); ++i) {
    head1 += static_cast<char>('0' + r.theta1.at(i));
    head2 += static_cast<char>('0' + r.theta2.at(i));
  }
  return {{"depth", r.depth},
          {"tolerance", number(r.tolerance)},
          {"theta1_prefix", head1},
          {"theta2_prefix", head2},
          {"all_pass", r.all_pass},
          {"samples", samples}};
}

Json to_json(const CoverResult& r) {
  Json gaps = Json::array();
  for (const auto& [a, z] : r.witness_gaps) gaps.push_back({rational(a), rational(z)});
  return {{"op", to_string(r.op)},
          {"depth", r.depth},
          {"target", {rational(r.target_lo), rational(r.target_hi)}},
          {"intervals", r.intervals},
          {"uncovered", r.uncovered},
          {"covered", r.covered},
          {"witness_gaps", gaps}};
}

Json to_json(const BoundResult& r) {
  Json params = Json::object();
  const BoundParams& p = r.params;
  if (p.m) params["m"] = *p.m;
  if (p.k) params["k"] = *p.k;
  if (p.w) params["w"] = rational(*p.w);
  if (p.tau) params["tau"] = rational(*p.tau);
  if (p.b) params["b"] = *p.b;
  if (!p.alphabet_sizes.empty()) params["W_sizes"] = p.alphabet_sizes;
  if (!p.d.empty()) params["d"] = p.d;
  if (p.nu0) params["nu0"] = rational(*p.nu0);
  if (p.nu1) params["nu1"] = rational(*p.nu1);
  if (p.terms) params["terms"] = *p.terms;
  Json j = {{"formula", r.formula},
            {"value", number(r.value)},
            {"params", params},
            {"validity", r.validity}};
  if (r.exact) j["exact"] = rational(*r.exact);
  if (r.argmax) j["argmax"] = number(*r.argmax);
  if (r.reference) {
    j["reference"] = number(*r.reference);
    j["distance"] = number(std::fabs(r.value - *r.reference));
  }
  if (!r.flags.empty()) j["flags"] = r.flags;
  return j;
}

Json split_document(const PlanParams& params, const SplitPlan& plan, const DigitVector& xi,
                    const SplitResult& result) {
  Json targets = Json::array();
  for (const auto& t : plan.targets) targets.push_back(texts(t));
  Json alphabets = Json::array();
  for (const auto& w : plan.alphabets) alphabets.push_back(w);
  Json inputs = {{"kind", to_string(plan.kind)},
                 {"base", plan.base},
                 {"m", plan.m},
                 {"depth", plan.depth},
                 {"M", params.M},
                 {"nu0", rational(params.nu0)},
                 {"growth", rational(params.growth)},
                 {"swap_parts", params.swap_parts},
                 {"xi", texts(xi)},
                 {"targets", targets},
                 {"alphabets", alphabets}};
  if (params.nu1) inputs["nu1"] = rational(*params.nu1);

  Json certs = Json::array();
  std::size_t failed = 0;
  for (const auto& c : result.certificates) {
    certs.push_back(to_json(c));
    failed += c.pass ? 0 : 1;
  }
  Json claimed = {{"x1_uniform", rational(result.claimed.x1_uniform)},
                  {"x0_ordinary", result.claimed.x0_ordinary
                                      ? Json(rational(*result.claimed.x0_ordinary))
                                      : Json("inf")}};
  return {{"inputs", inputs},
          {"ladder", to_json(plan.ladder)},
          {"y0", rational(plan.y0)},
          {"y1", rational(plan.y1)},
          {"x0", texts(result.x0)},
          {"x1", texts(result.x1)},
          {"carries", result.carries},
          {"certificates", certs},
          {"certificates_failed", failed},
          {"claimed_exponents", claimed}};
}

SplitDocument parse_split_document(const Json& doc) {
  try {
    const Json& in = doc.at("inputs");
    SplitDocument out;
    PlanParams& p = out.params;
    p.kind = plan_kind_from_string(in.at("kind").get<std::string>());
    p.base = in.at("base").get<int>();
    p.m = in.at("m").get<std::size_t>();
    p.depth = in.at("depth").get<std::size_t>();
    p.M = in.at("M").get<std::size_t>();
    p.nu0 = parse_rational(in.at("nu0").get<std::string>());
    if (in.contains("nu1")) p.nu1 = parse_rational(in.at("nu1").get<std::string>());
    p.growth = parse_rational(in.at("growth").get<std::string>());
    p.swap_parts = in.at("swap_parts").get<bool>();
    for (const auto& t : in.at("targets")) p.targets.push_back(parse_texts(t));
    for (const auto& w : in.at("alphabets")) p.alphabets.push_back(w.get<Alphabet>());
    out.xi = parse_texts(in.at("xi"));
    out.plan = make_plan(p);

    SplitResult& r = out.result;
    r.x0 = parse_texts(doc.at("x0"));
    r.x1 = parse_texts(doc.at("x1"));
    r.carries = doc.at("carries").get<std::vector<int>>();
    for (const auto& c : doc.at("certificates")) {
      Certificate cert;
      cert.part = c.at("part").get<int>();
      cert.j = c.at("j").get<std::size_t>();
      cert.h = c.at("h").get<std::size_t>();
      cert.h_next = c.at("h_next").get<std::size_t>();
      cert.target = c.at("target").get<int>();
      cert.bound = parse_rational(c.at("bound").get<std::string>());
      cert.measured = parse_rational(c.at("measured").get<std::string>());
      cert.uncertainty = parse_rational(c.at("uncertainty").get<std::string>());
      cert.pass = c.at("pass").get<bool>();
      r.certificates.push_back(cert);
    }
    const Json& cl = doc.at("claimed_exponents");
    r.claimed.x1_uniform = parse_rational(cl.at("x1_uniform").get<std::string>());
    if (cl.at("x0_ordinary") != "inf")
      r.claimed.x0_ordinary = parse_rational(cl.at("x0_ordinary").get<std::string>());
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed construction document: ") + e.what());
  }
}

}  // namespace dioph
