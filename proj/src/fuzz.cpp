#include "realtopo/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "realtopo/dsl.hpp"
#include "realtopo/gcc.hpp"
#include "realtopo/maps.hpp"

namespace realtopo {

SchemaAtom SchemaGene::schema() const {
  auto seq = [&](const Rational& s) { return MobiusSeq::from_limit_form(limit, Rational(side) / period, s); };
  const Rational nearShift = far + width;
  if (points) return SchemaAtom::points(seq(far), start);
  if (side > 0) return SchemaAtom::intervals(seq(nearShift), nearClosed, seq(far), farClosed, start);
  return SchemaAtom::intervals(seq(far), farClosed, seq(nearShift), nearClosed, start);
}

RealSet FuzzCase::raw() const {
  RealSet r;
  r.intervals = intervals;
  for (const auto& p : points) r.points.push_back({p});
  for (const auto& g : schemas) r.schemas.push_back(g.schema());
  return r;
}

std::string FuzzCase::dsl() const { return print(raw()); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::int64_t index) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(index));
}

namespace {

// Only raw engine output is used, so sequences are identical across standard
// libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::uint64_t next() { return g_(); }
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(g_() % static_cast<std::uint64_t>(n)); }
  bool coin() { return (g_() & 1) != 0; }
  bool chance(int num, int den) { return below(den) < num; }
  /// k/den with |k/den| <= mag.
  Rational grid(int mag, int den) { return make_rational(below(2 * mag * den + 1) - mag * den, den); }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(below(static_cast<int>(v.size())))];
  }

 private:
  std::mt19937_64 g_;
};

const std::vector<Rational>& periods() {
  static const std::vector<Rational> v{1, 2, make_rational(1, 2), make_rational(3, 2), make_rational(1, 3)};
  return v;
}

const std::vector<Rational>& shifts() {
  static const std::vector<Rational> v{0, make_rational(1, 4), make_rational(1, 3), make_rational(1, 2)};
  return v;
}

const std::vector<Rational>& widths() {
  static const std::vector<Rational> v{make_rational(1, 4), make_rational(1, 2), make_rational(2, 3),
                                       make_rational(3, 4), 1};
  return v;
}

IntervalAtom random_interval(Rng& rng, int mag) {
  static const std::vector<Rational> lengths{make_rational(1, 4), make_rational(1, 2), 1, 2};
  Rational lo = rng.grid(mag, 4);
  Rational hi = lo + rng.pick(lengths);
  Bound lower = Bound::at(lo, rng.coin());
  Bound upper = Bound::at(hi, rng.coin());
  if (rng.chance(1, 8)) lower = Bound::neg_inf();
  if (rng.chance(1, 8)) upper = Bound::pos_inf();
  return {lower, upper};
}

SchemaGene random_schema(Rng& rng, int mag) {
  SchemaGene g;
  g.limit = rng.grid(mag, 2);
  g.side = rng.coin() ? 1 : -1;
  g.period = rng.pick(periods());
  g.points = rng.chance(1, 3);
  g.far = rng.pick(shifts());
  g.width = rng.pick(widths());
  g.nearClosed = rng.coin();
  g.farClosed = rng.coin();
  g.start = 1 + rng.below(3);
  return g;
}

}  // namespace

FuzzCase generate_case(const FuzzSpec& spec, std::uint64_t trialSeed) {
  Rng rng(trialSeed);
  FuzzCase c;
  int atoms = spec.minAtoms + rng.below(spec.maxAtoms - spec.minAtoms + 1);
  int schemas = spec.minSchemas;
  if (rng.coin()) schemas = std::max(spec.minSchemas, 1 + rng.below(std::max(1, spec.maxSchemas)));
  schemas = std::min(schemas, std::max(spec.maxSchemas, spec.minSchemas));
  for (int i = 0; i < atoms; ++i) {
    if (rng.coin())
      c.points.push_back(rng.grid(spec.magnitude, 4));
    else
      c.intervals.push_back(random_interval(rng, spec.magnitude));
  }
  for (int i = 0; i < schemas; ++i) {
    SchemaGene g = random_schema(rng, spec.magnitude);
    if (rng.coin()) c.points.push_back(g.limit);
    c.schemas.push_back(std::move(g));
  }
  return c;
}

// ---------------------------------------------------------------------------

Deciders Deciders::standard() {
  return {[](const RealSet& x) { return decide_gcc_transversal(x).verdict; },
          [](const RealSet& x) { return decide_gcc_sequences(x).verdict; }};
}

Deciders Deciders::mutated() {
  return {[](const RealSet& x) { return decide_gcc_transversal(x).verdict; },
          [](const RealSet& x) {
            RealSet y = x;
            std::erase_if(y.schemas, [](const SchemaAtom& s) { return s.kind == SchemaAtom::Kind::PointFamily; });
            return decide_gcc_sequences(y).verdict;
          }};
}

RealSet component_closure_union(const RealSet& x) {
  ComponentList comps = components(x);
  RealSet raw;
  for (const auto& c : comps.finiteComponents) {
    if (const auto* iv = std::get_if<IntervalAtom>(&c)) {
      IntervalAtom closed = *iv;
      if (closed.lower.finite()) closed.lower.closed = true;
      if (closed.upper.finite()) closed.upper.closed = true;
      raw.intervals.push_back(closed);
    } else {
      raw.points.push_back(std::get<PointAtom>(c));
    }
  }
  // Piecewise closure only: limits come in through other components or not
  // at all.
  for (const auto& f : comps.schemaFamilies) {
    SchemaAtom s = f.schema;
    s.leftClosed = true;
    s.rightClosed = true;
    raw.schemas.push_back(s);
  }
  return normalize(raw);
}

bool corollary1_holds(const RealSet& x, bool gcc) {
  return !gcc || semantic_equal(closure(x), component_closure_union(x));
}

bool corollary2_holds(const RealSet& x, bool gcc) {
  bool defects = !local_connectedness_defects(complement(x)).empty();
  if (gcc) return !defects;
  return defects || !predicates(x).bounded;
}

namespace {

using Status = PropertyOutcome::Status;

bool is_gcc(const RealSet& x) { return decide_gcc_transversal(x).verdict; }

PLMap random_map(Rng& rng) {
  static const std::vector<Rational> slopes{-2, -1, make_rational(-1, 2), 0, make_rational(1, 2), 1, 2, 3};
  int breaks = rng.below(4);
  std::vector<Rational> bps;
  while (static_cast<int>(bps.size()) < breaks) {
    Rational b = rng.grid(4, 2);
    if (std::find(bps.begin(), bps.end(), b) == bps.end()) bps.push_back(b);
  }
  std::sort(bps.begin(), bps.end());
  std::vector<AffinePiece> pieces;
  pieces.push_back({rng.pick(slopes), rng.grid(3, 2)});
  for (const auto& b : bps) {
    Rational slope = rng.pick(slopes);
    Rational y = pieces.back().at(b);
    pieces.push_back({slope, y - slope * b});
  }
  return PLMap(bps, pieces);
}

// Points of closure(X) outside X: open interval ends and open piece ends of
// the first few pieces of each schema.
std::vector<Rational> boundary_candidates(const RealSet& x) {
  std::vector<Rational> out;
  for (const auto& iv : x.intervals) {
    if (iv.lower.finite() && !iv.lower.closed) out.push_back(iv.lower.value);
    if (iv.upper.finite() && !iv.upper.closed) out.push_back(iv.upper.value);
  }
  for (const auto& s : x.schemas) {
    if (s.kind == SchemaAtom::Kind::PointFamily) continue;
    for (std::int64_t n = s.start; n < s.start + 4; ++n) {
      IntervalAtom p = s.piece(n);
      if (!p.lower.closed) out.push_back(p.lower.value);
      if (!p.upper.closed) out.push_back(p.upper.value);
    }
  }
  std::erase_if(out, [&](const Rational& q) { return member(x, q); });
  return out;
}

class Battery {
 public:
  Battery(const RealSet& x, const std::optional<RealSet>& partner, std::uint64_t seed, const Deciders& deciders,
          const BatteryOptions& options)
      : x_(x), partner_(partner), rng_(seed), deciders_(deciders), options_(options) {}

  std::vector<PropertyOutcome> run() {
    check("normalize-idempotent", [&] { return expect(normalize(x_) == x_, "second normalization differs"); });
    check("decider-agreement", [&] { return agreement(); });
    if (options_.decidersOnly) return out_;
    check("policy-invariance", [&] { return policies(); });
    if (gcc_) {
      check("ccc-witness", [&] { return ccc_witness(); });
      check("corollary1", [&] {
        return expect(semantic_equal(closure(x_), component_closure_union(x_)),
                      "closure differs from the union of component closures");
      });
    } else {
      check("cover-witness", [&] { return cover_witness(); });
    }
    check("corollary2", [&] { return corollary2(); });
    if (gcc_) {
      std::vector<PLMap> maps;
      for (int i = 0; i < options_.maps; ++i) maps.push_back(random_map(rng_));
      if (!x_.empty()) check("corollary3", [&] { return corollary3(maps); });
      check("prop1.2-image", [&] { return images(maps); });
      check("prop1.3-split", [&] { return splits(); });
      check("prop1.4-closure", [&] { return closures(); });
      check("prop1.5-union", [&] { return unions(); });
    }
    return out_;
  }

 private:
  struct Result {
    Status status;
    std::string detail;
  };

  static Result expect(bool ok, const std::string& why) { return {ok ? Status::Pass : Status::Fail, ok ? "" : why}; }
  static Result skip(const std::string& why) { return {Status::Skipped, why}; }

  template <typename F>
  void check(const std::string& name, F&& f) {
    Result r{Status::Pass, ""};
    try {
      r = f();
    } catch (const Unnormalizable& e) {
      r = skip(std::string("unnormalizable: ") + e.what());
    } catch (const std::exception& e) {
      r = {Status::Fail, std::string("exception: ") + e.what()};
    }
    out_.push_back({name, r.status, r.detail});
  }

  Result agreement() {
    gcc_ = deciders_.transversal(x_);
    bool seq = deciders_.sequences(x_);
    if (gcc_ != seq)
      return expect(false, std::string("transversal says ") + (gcc_ ? "GCC" : "not GCC") + ", sequences disagree");
    if (!gcc_) {
      auto v = decide_gcc_sequences(x_);
      if (!v.witness || !verify_alternating(x_, *v.witness)) return expect(false, "alternating witness fails");
    }
    return expect(true, "");
  }

  Result policies() {
    std::vector<Selector> selectors{{SelectorPolicy::Midpoint, 0}, {SelectorPolicy::LeftmostProbe, 0}};
    for (int i = 0; i < options_.policySeeds; ++i)
      selectors.push_back({SelectorPolicy::SeededRandom, static_cast<std::uint64_t>(i) * 7919 + 1});
    for (const auto& sel : selectors) {
      if (decide_gcc_transversal(x_, sel).verdict != gcc_)
        return expect(false, "verdict changes under " + to_string(sel.policy));
      auto bad = transversal_violations(x_, build_transversal(x_, sel));
      if (!bad.empty()) return expect(false, to_string(sel.policy) + ": " + bad.front());
    }
    return expect(true, "");
  }

  Result ccc_witness() {
    auto v = decide_ccc(x_);
    if (!v.verdict || !v.witnessK) return expect(false, "GCC set without a CCC witness");
    auto r = check_k_witness(x_, *v.witnessK);
    if (!r.compact) return expect(false, "K is not compact");
    if (!r.subset) return expect(false, "K is not inside X");
    return expect(r.meetsEveryComponent, "K misses a component");
  }

  Result cover_witness() {
    if (decide_ccc(x_).verdict) return expect(false, "non-GCC set reported CCC");
    auto cover = witness_non_gcc_cover(x_);
    auto r = verify_cover(x_, cover);
    if (!r.covers) return expect(false, "cover misses a point");
    if (!r.disjoint) return expect(false, "cover members overlap");
    if (!r.openInX) return expect(false, "a member is not open in X");
    if (!r.infinitelyManyNonempty) return expect(false, "nonempty members not certified infinite");
    if (r.finiteSubcover) return expect(false, "cover has a finite subcover");
    SurjectionOntoN f(x_, cover);
    for (std::int64_t n = 1; n <= 6; ++n)
      if (f.evaluate(f.point_with_value(n)) != n) return expect(false, "surjection misses " + std::to_string(n));
    return expect(true, "");
  }

  Result corollary2() {
    bool defects = !local_connectedness_defects(complement(x_)).empty();
    if (gcc_) return expect(!defects, "complement of a GCC set has a local connectedness defect");
    if (!predicates(x_).bounded) return skip("unbounded non-GCC set: no claim");
    return expect(defects, "bounded non-GCC set with a locally connected complement");
  }

  Result corollary3(const std::vector<PLMap>& maps) {
    for (const auto& m : maps) {
      auto rep = extremum_report(m, x_);
      RealSet y = pushforward(m, x_);
      for (int side : {1, -1}) {
        const ExtremeValue& e = side > 0 ? rep.sup : rep.inf;
        if (e.infinite) {
          if (!e.unboundedInterval) return expect(false, "unbounded image without an unbounded interval");
          continue;
        }
        if (e.attained) {
          if (!member(y, e.value)) return expect(false, "extremum reported attained but not in the image");
          continue;
        }
        if (!e.intervalContained || !e.epsilon) return expect(false, "extremum neither attained nor approached by an interval");
        IntervalAtom band = side > 0 ? IntervalAtom::open(e.value - *e.epsilon, e.value)
                                     : IntervalAtom::open(e.value, e.value + *e.epsilon);
        if (!semantic_subset(RealSet::of(band), y)) return expect(false, "reported interval is not in the image");
      }
    }
    return expect(true, "");
  }

  Result images(const std::vector<PLMap>& maps) {
    for (const auto& m : maps)
      if (!is_gcc(pushforward(m, x_))) return expect(false, "image of a GCC set is not GCC");
    return expect(true, "");
  }

  Result splits() {
    RealSet cl = closure(x_);
    std::vector<Rational> cuts;
    for (int k = -24; k <= 24; ++k) {
      Rational c = make_rational(k, 4);
      if (!member(cl, c)) cuts.push_back(c);
    }
    if (cuts.empty()) return skip("no cut outside the closure");
    for (int i = 0; i < options_.cuts; ++i) {
      auto [lo, hi] = split_clopen(x_, rng_.pick(cuts));
      if (!is_gcc(lo) || !is_gcc(hi)) return expect(false, "a clopen half is not GCC");
    }
    return expect(true, "");
  }

  Result closures() {
    if (!is_gcc(closure(x_))) return expect(false, "closure is not GCC");
    auto cands = boundary_candidates(x_);
    if (cands.empty()) return expect(true, "");
    RealSet extra;
    for (const auto& q : cands)
      if (rng_.coin()) extra.points.push_back({q});
    if (extra.points.empty()) extra.points.push_back({rng_.pick(cands)});
    return expect(is_gcc(set_union(x_, normalize(extra))), "adding boundary points breaks GCC");
  }

  Result unions() {
    if (!partner_) return skip("no partner set");
    if (!is_gcc(*partner_)) return skip("partner is not GCC");
    return expect(is_gcc(set_union(x_, *partner_)), "union of two GCC sets is not GCC");
  }

  const RealSet& x_;
  const std::optional<RealSet>& partner_;
  Rng rng_;
  const Deciders& deciders_;
  BatteryOptions options_;
  bool gcc_ = false;
  std::vector<PropertyOutcome> out_;
};

}  // namespace

std::vector<PropertyOutcome> run_battery(const RealSet& x, const std::optional<RealSet>& partner,
                                         std::uint64_t seed, const Deciders& deciders,
                                         const BatteryOptions& options) {
  return Battery(x, partner, seed, deciders, options).run();
}

// ---------------------------------------------------------------------------

FuzzCase shrink_case(const FuzzCase& c, const std::function<bool(const FuzzCase&)>& fails) {
  FuzzCase best = c;
  auto attempt = [&](const FuzzCase& candidate) {
    if (!fails(candidate)) return false;
    best = candidate;
    return true;
  };
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < best.intervals.size(); ++i) {
      FuzzCase t = best;
      t.intervals.erase(t.intervals.begin() + static_cast<std::ptrdiff_t>(i));
      if (attempt(t)) {
        progress = true;
        break;
      }
    }
    if (progress) continue;
    for (std::size_t i = 0; i < best.points.size(); ++i) {
      FuzzCase t = best;
      t.points.erase(t.points.begin() + static_cast<std::ptrdiff_t>(i));
      if (attempt(t)) {
        progress = true;
        break;
      }
    }
    if (progress) continue;
    for (std::size_t i = 0; i < best.schemas.size(); ++i) {
      FuzzCase t = best;
      t.schemas.erase(t.schemas.begin() + static_cast<std::ptrdiff_t>(i));
      if (attempt(t)) {
        progress = true;
        break;
      }
    }
    if (progress) continue;
    // Coefficients toward small canonical values.
    for (std::size_t i = 0; i < best.schemas.size() && !progress; ++i) {
      const SchemaGene& g = best.schemas[i];
      std::vector<std::function<void(SchemaGene&)>> edits;
      if (g.limit != 0) edits.push_back([](SchemaGene& s) { s.limit = 0; });
      if (g.period != 1) edits.push_back([](SchemaGene& s) { s.period = 1; });
      if (g.far != 0) edits.push_back([](SchemaGene& s) { s.far = 0; });
      if (g.width != make_rational(1, 2)) edits.push_back([](SchemaGene& s) { s.width = make_rational(1, 2); });
      if (g.start != 1) edits.push_back([](SchemaGene& s) { s.start = 1; });
      if (g.side != 1) edits.push_back([](SchemaGene& s) { s.side = 1; });
      for (const auto& edit : edits) {
        FuzzCase t = best;
        const Rational oldLimit = t.schemas[i].limit;
        edit(t.schemas[i]);
        // Keep a limit point attached to its schema.
        if (t.schemas[i].limit != oldLimit)
          for (auto& p : t.points)
            if (p == oldLimit) p = t.schemas[i].limit;
        if (attempt(t)) {
          progress = true;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < best.points.size() && !progress; ++i) {
      if (best.points[i] == 0) continue;
      FuzzCase t = best;
      t.points[i] = 0;
      progress = attempt(t);
    }
    for (std::size_t i = 0; i < best.intervals.size() && !progress; ++i) {
      FuzzCase t = best;
      IntervalAtom& iv = t.intervals[i];
      if (iv.lower.finite() && iv.upper.finite() && (iv.lower.value != 0 || iv.upper.value != 1)) {
        iv.lower.value = 0;
        iv.upper.value = 1;
        progress = attempt(t);
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

namespace {

struct TrialResult {
  bool unnormalizable = false;
  bool gcc = false;
  std::vector<PropertyOutcome> outcomes;
  std::vector<FuzzFailure> failures;
};

std::optional<RealSet> try_normalize(const FuzzCase& c) {
  try {
    return normalize(c.raw());
  } catch (const Unnormalizable&) {
    return std::nullopt;
  } catch (const InvalidSchema&) {
    return std::nullopt;
  }
}

bool property_fails(const std::vector<PropertyOutcome>& outcomes, const std::string& name) {
  return std::any_of(outcomes.begin(), outcomes.end(),
                     [&](const PropertyOutcome& o) { return o.name == name && o.status == Status::Fail; });
}

TrialResult run_trial(const FuzzSpec& spec, std::int64_t index, const Deciders& deciders,
                      const BatteryOptions& battery) {
  TrialResult r;
  const std::uint64_t seed = trial_seed(spec.seed, index);
  FuzzCase c = generate_case(spec, seed);
  std::optional<RealSet> x;
  try {
    x = normalize(c.raw());
  } catch (const Unnormalizable&) {
    r.unnormalizable = true;
    return r;
  } catch (const InvalidSchema& e) {
    r.outcomes.push_back({"generator-valid", Status::Fail, e.what()});
    r.failures.push_back({index, seed, "generator-valid", e.what(), c.dsl(), c.dsl()});
    return r;
  }
  std::optional<RealSet> partner = try_normalize(generate_case(spec, splitmix64(seed ^ 0x5bd1e995ULL)));
  r.outcomes = run_battery(*x, partner, seed, deciders, battery);
  for (const auto& o : r.outcomes) {
    if (o.name == "decider-agreement" && o.status == Status::Pass) r.gcc = decide_gcc_transversal(*x).verdict;
    if (o.status != Status::Fail) continue;
    FuzzCase small = shrink_case(c, [&](const FuzzCase& t) {
      auto y = try_normalize(t);
      return y && property_fails(run_battery(*y, partner, seed, deciders, battery), o.name);
    });
    r.failures.push_back({index, seed, o.name, o.detail, c.dsl(), small.dsl()});
  }
  return r;
}

}  // namespace

FuzzSummary fuzz_run(const FuzzSpec& spec, const FuzzRunOptions& options) {
  FuzzSummary summary;
  summary.trials = std::max<std::int64_t>(0, spec.trials);
  std::vector<TrialResult> results(static_cast<std::size_t>(summary.trials));
  const Deciders deciders = options.mutate ? Deciders::mutated() : Deciders::standard();

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t i = next++; i < summary.trials; i = next++)
      results[static_cast<std::size_t>(i)] = run_trial(spec, i, deciders, options.battery);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto& r : results) {
    if (r.unnormalizable) {
      ++summary.unnormalizable;
      continue;
    }
    bool failed = false;
    for (const auto& o : r.outcomes) {
      auto& tally = summary.properties[o.name];
      switch (o.status) {
        case Status::Pass: ++tally.pass; break;
        case Status::Fail: ++tally.fail; failed = true; break;
        case Status::Skipped: ++tally.skipped; break;
      }
    }
    failed ? ++summary.failed : ++summary.passed;
    r.gcc ? ++summary.gcc : ++summary.nonGcc;
    for (auto& f : r.failures) summary.failures.push_back(std::move(f));
  }
  return summary;
}

}  // namespace realtopo
