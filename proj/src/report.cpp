#include "realtopo/report.hpp"

#include "realtopo/dsl.hpp"

namespace realtopo {

namespace {

std::string str(const Rational& q) { return to_string(q); }

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(str(q));
  return out;
}

RealSet parse_normalized(std::string_view text) { return normalize(parse_dsl(text).to_set()); }

std::string interval_text(const IntervalAtom& iv) {
  RealSet s;
  s.intervals.push_back(iv);
  return print(s);
}

}  // namespace

Json selection_json(const SelectionSet& s) {
  Json j;
  j["points"] = rationals(s.points);
  Json fams = Json::array();
  for (const auto& f : s.families) {
    Json e;
    e["terms"] = f.seq.describe();
    e["start"] = f.start;
    e["limit"] = str(f.limit);
    Json first = Json::array();
    for (std::int64_t n = f.start; n < f.start + 3; ++n) first.push_back(str(f.seq.value(n)));
    e["first"] = first;
    e["host"] = print(f.host);
    fams.push_back(e);
  }
  j["families"] = fams;
  j["accumulationPoints"] = rationals(s.accumulation_points());
  j["compact"] = s.compact();
  return j;
}

Json transversal_json(const Transversal& t) {
  Json j;
  j["kind"] = "transversal";
  j["selector"] = to_string(t.selector.policy);
  Json sel = selection_json(t.set);
  for (auto& [k, v] : sel.items()) j[k] = v;
  return j;
}

Json alternating_json(const AlternatingWitness& w) {
  Json j;
  j["direction"] = w.direction == AlternatingWitness::Direction::Increasing ? "increasing" : "decreasing";
  j["evenTermsInX"] = print(w.evenTerms);
  j["oddTermsOutsideX"] = print(w.oddTerms);
  j["limit"] = str(w.limit);
  j["limitInX"] = w.limitInX;
  return j;
}

Json cover_json(const RealSet& x, const DisjointOpenCover& cover) {
  Json j;
  j["kind"] = "cover";
  Json finite = Json::array();
  for (const auto& m : cover.finiteMembers) finite.push_back(print(m));
  j["finiteMembers"] = finite;
  Json fams = Json::array();
  for (const auto& f : cover.familyMembers) {
    Json e;
    e["lower"] = print(f.lower);
    e["upper"] = print(f.upper);
    e["start"] = f.start;
    if (f.nonemptyWitness) e["nonemptyWitness"] = print(*f.nonemptyWitness);
    fams.push_back(e);
  }
  j["familyMembers"] = fams;
  CoverReport r = verify_cover(x, cover);
  j["verified"] = {{"covers", r.covers},
                   {"disjoint", r.disjoint},
                   {"openInX", r.openInX},
                   {"infinitelyManyNonempty", r.infinitelyManyNonempty},
                   {"finiteSubcover", r.finiteSubcover.has_value()}};
  SurjectionOntoN f(x, cover);
  Json values = Json::array();
  for (std::int64_t n = 1; n <= 5; ++n) values.push_back({{"n", n}, {"point", str(f.point_with_value(n))}});
  j["surjectionOntoN"] = {{"description", "finite members map to 1..m in order, family members follow by index"},
                          {"values", values}};
  return j;
}

Json analyze(std::string_view text) {
  RealSet x = parse_normalized(text);
  ComponentList comps = components(x);
  GccVerdict gcc = decide_gcc_transversal(x);
  SequenceVerdict seq = decide_gcc_sequences(x);
  if (gcc.verdict != seq.verdict) throw VerdictFailure("GCC deciders disagree on " + print(x));
  CccVerdict ccc = decide_ccc(x);

  Json j;
  j["input"] = std::string(text);
  j["normalized"] = print(x);
  j["components"] = {{"finite", comps.finiteComponents.size()}, {"families", comps.schemaFamilies.size()}};
  j["gcc"] = gcc.verdict;
  j["ccc"] = ccc.verdict;
  if (gcc.verdict) {
    j["witness"] = transversal_json(gcc.transversal);
  } else {
    Json w = cover_json(x, witness_non_gcc_cover(x));
    if (seq.witness) w["alternating"] = alternating_json(*seq.witness);
    j["witness"] = w;
  }
  j["closure"] = print(closure(x));
  j["checks"] = {{"corollary1", corollary1_holds(x, gcc.verdict)}, {"corollary2", corollary2_holds(x, gcc.verdict)}};
  return j;
}

Json witness_report(std::string_view text, WitnessKind kind) {
  RealSet x = parse_normalized(text);
  Json j;
  switch (kind) {
    case WitnessKind::Gcc: {
      GccVerdict v = decide_gcc_transversal(x);
      if (!v.verdict) throw VerdictFailure("not GCC: no compact transversal");
      j = transversal_json(v.transversal);
      j["violations"] = transversal_violations(x, v.transversal);
      break;
    }
    case WitnessKind::Ccc: {
      CccVerdict v = decide_ccc(x);
      if (!v.verdict || !v.witnessK) throw VerdictFailure("not CCC: no compact set meets every component");
      KWitnessReport r = check_k_witness(x, *v.witnessK);
      j["kind"] = "compact-transversal";
      j["K"] = selection_json(*v.witnessK);
      j["report"] = {{"compact", r.compact}, {"subset", r.subset}, {"meetsEveryComponent", r.meetsEveryComponent}};
      break;
    }
    case WitnessKind::NonGcc: {
      SequenceVerdict v = decide_gcc_sequences(x);
      if (v.verdict) throw VerdictFailure("GCC: no disjoint open cover without a finite subcover");
      j = cover_json(x, witness_non_gcc_cover(x));
      if (v.witness) j["alternating"] = alternating_json(*v.witness);
      break;
    }
  }
  return j;
}

namespace {

SurjectionPlan plan_for(std::string_view text) {
  RealSet x = parse_normalized(text);
  try {
    return SurjectionPlan(x);
  } catch (const NotGcc& e) {
    throw VerdictFailure(e.what());
  }
}

}  // namespace

Json surjection_eval(std::string_view text, const Rational& a, const Rational& y) {
  SurjectionPlan plan = plan_for(text);
  Rational v;
  try {
    v = plan.eval(a, y);
  } catch (const std::domain_error& e) {
    throw VerdictFailure(e.what());
  }
  Json j;
  j["a"] = str(a);
  j["y"] = str(y);
  j["value"] = str(v);
  if (auto rule = plan.rule_at(a)) j["rule"] = to_string(rule->kind);
  return j;
}

Json surjection_preimage(std::string_view text, const Rational& target) {
  SurjectionPlan plan = plan_for(text);
  std::pair<Rational, Rational> ay;
  try {
    ay = plan.solve_preimage(target);
  } catch (const NotMember& e) {
    throw VerdictFailure(e.what());
  }
  Json j;
  j["target"] = str(target);
  j["a"] = str(ay.first);
  j["y"] = str(ay.second);
  j["roundTrip"] = plan.eval(ay.first, ay.second) == target;
  return j;
}

Json surjection_cantor(std::string_view text, const std::string& bits) {
  SurjectionPlan plan = plan_for(text);
  CompactView view = compact_view(plan.domain().set);
  std::vector<IntervalAtom> brackets = cantor_brackets(view, bits);
  Json all = Json::array();
  for (const auto& b : brackets) all.push_back(interval_text(b));
  Json j;
  j["bits"] = bits;
  j["bracket"] = interval_text(brackets.back());
  j["brackets"] = all;
  return j;
}

Json planar_report(const PlanarConfig& cfg, std::int64_t closureChecks) {
  Json j;
  j["rule"] = to_string(cfg.heightRule);
  j["enumerationBound"] = cfg.enumerationBound;
  FixtureVerdict v = fixture_verdicts(cfg);
  j["gcc"] = v.gcc;
  j["ccc"] = v.ccc;
  auto trace = [](const std::vector<TraceStep>& steps) {
    Json out = Json::array();
    for (const auto& s : steps) out.push_back({{"claim", s.claim}, {"detail", s.detail}, {"ok", s.ok}});
    return out;
  };
  j["trace"] = {{"ccc", trace(v.cccTrace)}, {"gcc", trace(v.gccTrace)}};
  std::int64_t failures = 0;
  for (std::int64_t n = 1; n <= closureChecks; ++n)
    if (!check_xn_in_closure_An(cfg, n)) ++failures;
  j["closureChecks"] = {{"upTo", closureChecks}, {"failures", failures}};
  j["collisions"] = Json::array();
  return j;
}

Json fuzz_json(const FuzzSpec& spec, const FuzzSummary& s) {
  Json j;
  j["seed"] = spec.seed;
  j["trials"] = s.trials;
  j["passed"] = s.passed;
  j["failed"] = s.failed;
  j["unnormalizable"] = s.unnormalizable;
  j["gccCases"] = s.gcc;
  j["nonGccCases"] = s.nonGcc;
  Json props = Json::object();
  for (const auto& [name, t] : s.properties)
    props[name] = {{"pass", t.pass}, {"fail", t.fail}, {"skipped", t.skipped}};
  j["properties"] = props;
  Json fails = Json::array();
  for (const auto& f : s.failures)
    fails.push_back({{"trial", f.trial},
                     {"seed", f.seed},
                     {"property", f.property},
                     {"detail", f.detail},
                     {"input", f.input},
                     {"shrunk", f.shrunk}});
  j["failures"] = fails;
  return j;
}

}  // namespace realtopo
