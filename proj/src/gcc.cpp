#include "realtopo/gcc.hpp"

#include <algorithm>
#include <random>

#include "realtopo/detail/reciprocal.hpp"

namespace realtopo {

std::string to_string(SelectorPolicy p) {
  switch (p) {
    case SelectorPolicy::Midpoint:
      return "midpoint";
    case SelectorPolicy::LeftmostProbe:
      return "leftmost-probe";
    case SelectorPolicy::SeededRandom:
      return "seeded-random";
  }
  return "?";
}

namespace {

RealSet point_family(const MobiusSeq& m, std::int64_t start = 1) {
  RealSet r;
  r.schemas.push_back(SchemaAtom::points(m, start));
  return normalize(r);
}

// seq(n) >= lo(n) for every n >= start, with equality allowed only if `allowEqual`.
bool dominates(const RatSeq& seq, const RatSeq& lo, bool allowEqual, std::int64_t start) {
  RatSeq d = RatSeq::difference(seq, lo);
  if (d.zero()) return allowEqual;
  return d.positive_from(start);
}

/// seq(n) lies in host.piece(n) for every n >= start.
bool inside_pieces(const RatSeq& seq, const SchemaAtom& host, std::int64_t start) {
  RatSeq l(host.left), r(host.right);
  if (host.kind == SchemaAtom::Kind::PointFamily) return RatSeq::difference(seq, l).zero();
  return dominates(seq, l, host.leftClosed, start) && dominates(r, seq, host.rightClosed, start);
}

bool inside_open_pieces(const RatSeq& seq, const SchemaAtom& host, std::int64_t start) {
  if (host.kind == SchemaAtom::Kind::PointFamily) return false;
  return dominates(seq, RatSeq(host.left), false, start) && dominates(RatSeq(host.right), seq, false, start);
}

class Weights {
 public:
  explicit Weights(Selector s) : s_(s), rng_(s.seed) {}

  Rational next() {
    switch (s_.policy) {
      case SelectorPolicy::Midpoint:
        return Rational(1, 2);
      case SelectorPolicy::LeftmostProbe:
        return Rational(1, 4);
      case SelectorPolicy::SeededRandom:
        break;
    }
    std::uniform_int_distribution<long> d(1, 1023);
    return make_rational(d(rng_), 1024);
  }

 private:
  Selector s_;
  std::mt19937_64 rng_;
};

Rational interior_point(const IntervalAtom& iv, const Rational& t) {
  Rational stretch = t / (1 - t);  // in (0, inf)
  if (iv.lower.finite() && iv.upper.finite()) return iv.lower.value + t * (iv.upper.value - iv.lower.value);
  if (iv.lower.finite()) return iv.lower.value + stretch;
  if (iv.upper.finite()) return iv.upper.value - 1 / stretch;
  return stretch - 1 / stretch;
}

}  // namespace

// ---------------------------------------------------------------------------

bool SelectionSet::contains(const Rational& q) const {
  if (std::find(points.begin(), points.end(), q) != points.end()) return true;
  for (const auto& f : families) {
    if (q == f.limit) continue;
    if (!f.seq.indices_of(q, f.start).empty()) return true;
  }
  return false;
}

bool SelectionSet::compact() const {
  return std::all_of(families.begin(), families.end(), [&](const SelectedFamily& f) { return contains(f.limit); });
}

std::vector<Rational> SelectionSet::accumulation_points() const {
  std::vector<Rational> out;
  for (const auto& f : families) out.push_back(f.limit);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Transversal build_transversal(const RealSet& x, Selector selector) {
  Transversal t;
  t.selector = selector;
  Weights weights(selector);
  ComponentList comps = components(x);
  for (const auto& c : comps.finiteComponents) {
    ComponentSelection sel;
    sel.component = c;
    if (auto* p = std::get_if<PointAtom>(&c)) {
      sel.boundary.push_back(p->value);
    } else {
      const auto& iv = std::get<IntervalAtom>(c);
      if (iv.lower.finite() && iv.lower.closed) sel.boundary.push_back(iv.lower.value);
      if (iv.upper.finite() && iv.upper.closed) sel.boundary.push_back(iv.upper.value);
      sel.interior = interior_point(iv, weights.next());
    }
    t.set.points.insert(t.set.points.end(), sel.boundary.begin(), sel.boundary.end());
    if (sel.interior) t.set.points.push_back(*sel.interior);
    t.finite.push_back(std::move(sel));
  }
  for (const auto& fam : comps.schemaFamilies) {
    const SchemaAtom& s = fam.schema;
    FamilySelection sel;
    sel.schema = s;
    if (s.kind == SchemaAtom::Kind::PointFamily) {
      sel.boundary.emplace_back(s.left);
    } else {
      if (s.leftClosed) sel.boundary.emplace_back(s.left);
      if (s.rightClosed) sel.boundary.emplace_back(s.right);
      sel.interior = RatSeq::blend(RatSeq(s.left), RatSeq(s.right), weights.next());
    }
    for (const auto& b : sel.boundary) t.set.families.push_back({b, s.start, s.limit(), s});
    if (sel.interior) t.set.families.push_back({*sel.interior, s.start, s.limit(), s});
    t.families.push_back(std::move(sel));
  }
  std::sort(t.set.points.begin(), t.set.points.end());
  return t;
}

std::vector<std::string> transversal_violations(const RealSet& x, const Transversal& t) {
  std::vector<std::string> out;
  ComponentList comps = components(x);
  if (comps.finiteComponents.size() != t.finite.size() || comps.schemaFamilies.size() != t.families.size()) {
    out.push_back("component count mismatch");
    return out;
  }
  for (std::size_t i = 0; i < t.finite.size(); ++i) {
    const auto& sel = t.finite[i];
    if (!(sel.component == comps.finiteComponents[i])) out.push_back("finite component " + std::to_string(i) + " differs");
    std::size_t count = sel.boundary.size() + (sel.interior ? 1 : 0);
    if (count > 3) out.push_back("more than 3 points selected");
    if (auto* p = std::get_if<PointAtom>(&sel.component)) {
      if (sel.boundary != std::vector<Rational>{p->value} || sel.interior) out.push_back("singleton not selected as itself");
      continue;
    }
    const auto& iv = std::get<IntervalAtom>(sel.component);
    std::vector<Rational> expected;
    if (iv.lower.finite() && iv.lower.closed) expected.push_back(iv.lower.value);
    if (iv.upper.finite() && iv.upper.closed) expected.push_back(iv.upper.value);
    if (sel.boundary != expected) out.push_back("boundary selection is not C minus its interior");
    IntervalAtom open = iv;
    open.lower.closed = open.upper.closed = false;
    if (!sel.interior || !open.contains(*sel.interior)) out.push_back("no interior point selected");
  }
  for (std::size_t i = 0; i < t.families.size(); ++i) {
    const auto& sel = t.families[i];
    const SchemaAtom& s = sel.schema;
    if (!(s == comps.schemaFamilies[i].schema)) out.push_back("family " + std::to_string(i) + " differs");
    std::vector<RatSeq> expected;
    if (s.kind == SchemaAtom::Kind::PointFamily) {
      expected.emplace_back(s.left);
    } else {
      if (s.leftClosed) expected.emplace_back(s.left);
      if (s.rightClosed) expected.emplace_back(s.right);
    }
    bool same = expected.size() == sel.boundary.size();
    for (std::size_t j = 0; same && j < expected.size(); ++j)
      same = RatSeq::difference(expected[j], sel.boundary[j]).zero();
    if (!same) out.push_back("family boundary selection is not the closed endpoints");
    bool wantInterior = s.kind == SchemaAtom::Kind::IntervalFamily;
    if (wantInterior != sel.interior.has_value()) out.push_back("family interior selection missing or extra");
    if (sel.interior && !inside_open_pieces(*sel.interior, s, s.start)) out.push_back("family interior selection leaves the pieces");
  }
  return out;
}

GccVerdict decide_gcc_transversal(const RealSet& x, Selector selector) {
  GccVerdict v;
  v.transversal = build_transversal(x, selector);
  v.verdict = v.transversal.set.compact();
  return v;
}

// ---------------------------------------------------------------------------

SequenceVerdict decide_gcc_sequences(const RealSet& x) {
  SequenceVerdict out;
  std::optional<RealSet> rest;
  for (const auto& s : x.schemas) {
    const Rational limit = s.limit();
    const int side = s.side();
    if (member(x, limit)) continue;
    if (!rest) rest = complement(x);
    const SchemaAtom* gapSchema = nullptr;
    for (const auto& c : rest->schemas)
      if (c.limit() == limit && c.side() == side) gapSchema = &c;
    if (!gapSchema) throw std::logic_error("complement has no gaps at an accumulation point of X");

    detail::USchema us = detail::to_u(s), uc = detail::to_u(*gapSchema);
    const Rational period = us.loSlope;
    if (uc.loSlope != period || !us.periodic() || !uc.periodic())
      throw std::logic_error("set and complement disagree on the period");
    // u = 1/|x - limit|: odd terms sit mid-gap, even terms mid-piece
    Rational midS = (us.loOffset + us.hiOffset) / 2, midC = (uc.loOffset + uc.hiOffset) / 2;
    std::int64_t delta = to_index(floor_of((midC - midS) / period)) + 1;
    auto oddU = [&](std::int64_t k) -> Rational { return period * k + midC; };
    auto evenU = [&](std::int64_t k) -> Rational { return period * (k + delta) + midS; };
    auto at = [&](const Rational& u) -> Rational { return limit + side / u; };
    std::int64_t k0 = std::max<std::int64_t>(1, 1 - delta);
    for (;;) {
      std::int64_t k = k0 - 1;
      if (oddU(k) <= 0 || evenU(k) <= 0) break;
      if (member(x, at(oddU(k))) || !member(x, at(evenU(k)))) break;
      k0 = k;
    }
    AlternatingWitness w;
    w.direction = side > 0 ? AlternatingWitness::Direction::Decreasing : AlternatingWitness::Direction::Increasing;
    w.limit = limit;
    w.limitInX = false;
    w.oddTerms = MobiusSeq::from_limit_form(limit, side / period, oddU(k0 - 1) / period);
    w.evenTerms = MobiusSeq::from_limit_form(limit, side / period, evenU(k0 - 1) / period);
    out.verdict = false;
    out.witness = w;
    return out;
  }
  out.verdict = true;
  return out;
}

bool verify_alternating(const RealSet& x, const AlternatingWitness& w) {
  const auto& e = w.evenTerms;
  const auto& o = w.oddTerms;
  if (e.constant() || o.constant()) return false;
  if (e.limit() != w.limit || o.limit() != w.limit) return false;
  if (member(x, w.limit) != w.limitInX) return false;
  RatSeq even(e), odd(o), nextOdd(o.reindexed(1));
  bool down = w.direction == AlternatingWitness::Direction::Decreasing;
  bool ordered = down ? dominates(odd, even, false, 1) && dominates(even, nextOdd, false, 1)
                      : dominates(even, odd, false, 1) && dominates(nextOdd, even, false, 1);
  if (!ordered) return false;
  return semantic_subset(point_family(e), x) && intersect(point_family(o), x).empty();
}

// ---------------------------------------------------------------------------

CccVerdict decide_ccc(const RealSet& x) {
  CccVerdict v;
  Transversal t = build_transversal(x);
  v.verdict = t.set.compact();
  if (v.verdict) v.witnessK = std::move(t.set);
  return v;
}

KWitnessReport check_k_witness(const RealSet& x, const SelectionSet& k) {
  KWitnessReport r;
  r.compact = k.compact();
  r.subset = std::all_of(k.points.begin(), k.points.end(), [&](const Rational& p) { return member(x, p); });
  for (const auto& f : k.families) {
    bool hosted = std::find(x.schemas.begin(), x.schemas.end(), f.host) != x.schemas.end();
    if (!hosted || f.start < f.host.start || !inside_pieces(f.seq, f.host, f.start)) r.subset = false;
  }
  r.meetsEveryComponent = true;
  ComponentList comps = components(x);
  for (const auto& c : comps.finiteComponents) {
    bool hit = std::any_of(k.points.begin(), k.points.end(), [&](const Rational& p) {
      if (auto* pt = std::get_if<PointAtom>(&c)) return pt->value == p;
      return std::get<IntervalAtom>(c).contains(p);
    });
    if (!hit) r.meetsEveryComponent = false;
  }
  for (const auto& fam : comps.schemaFamilies) {
    bool hit = std::any_of(k.families.begin(), k.families.end(), [&](const SelectedFamily& f) {
      return f.host == fam.schema && f.start <= fam.schema.start && inside_pieces(f.seq, fam.schema, fam.schema.start);
    });
    if (!hit) r.meetsEveryComponent = false;
  }
  return r;
}

// ---------------------------------------------------------------------------

SchemaAtom CoverFamily::template_schema() const { return SchemaAtom::intervals(lower, false, upper, false, start); }

DisjointOpenCover witness_non_gcc_cover(const RealSet& x) {
  SequenceVerdict sv = decide_gcc_sequences(x);
  if (sv.verdict) throw NotApplicable("set is GCC; every disjoint open cover has a finite subcover");
  const AlternatingWitness& w = *sv.witness;
  const Rational first = w.oddTerms.value(1);
  DisjointOpenCover cover;
  CoverFamily fam;
  fam.nonemptyWitness = w.evenTerms;
  IntervalAtom below, above;
  if (w.direction == AlternatingWitness::Direction::Decreasing) {
    below = {Bound::neg_inf(), Bound::at(w.limit, false)};
    above = {Bound::at(first, false), Bound::pos_inf()};
    fam.lower = w.oddTerms.reindexed(1);
    fam.upper = w.oddTerms;
  } else {
    below = {Bound::neg_inf(), Bound::at(first, false)};
    above = {Bound::at(w.limit, false), Bound::pos_inf()};
    fam.lower = w.oddTerms;
    fam.upper = w.oddTerms.reindexed(1);
  }
  for (const auto& window : {below, above}) {
    RealSet m = intersect(x, RealSet::of(window));
    if (!m.empty()) cover.finiteMembers.push_back(std::move(m));
  }
  cover.familyMembers.push_back(fam);
  return cover;
}

namespace {

RealSet template_union(const CoverFamily& f) {
  RealSet r;
  r.schemas.push_back(f.template_schema());
  return normalize(r);
}

bool accumulates_at(const RealSet& s, const Rational& limit, int side) {
  for (const auto& sc : s.schemas)
    if (sc.limit() == limit && sc.side() == side) return true;
  for (const auto& iv : s.intervals) {
    bool reachesUp = !iv.upper.finite() || (side > 0 ? iv.upper.value > limit : iv.upper.value >= limit);
    bool reachesDown = !iv.lower.finite() || (side > 0 ? iv.lower.value <= limit : iv.lower.value < limit);
    if (reachesUp && reachesDown) return true;
  }
  return false;
}

Rational any_point(const RealSet& s) {
  if (!s.points.empty()) return s.points.front().value;
  if (!s.intervals.empty()) {
    const auto& iv = s.intervals.front();
    if (iv.lower.finite() && iv.upper.finite()) return (iv.lower.value + iv.upper.value) / 2;
    if (iv.lower.finite()) return iv.lower.value + 1;
    if (iv.upper.finite()) return iv.upper.value - 1;
    return 0;
  }
  const auto& sc = s.schemas.front();
  return (sc.left.value(sc.start) + sc.right.value(sc.start)) / 2;
}

bool open_in(const RealSet& x, const RealSet& m) {
  if (!semantic_subset(m, x)) return false;
  return intersect(m, closure(intersect(x, complement(m)))).empty();
}

RealSet piece_in(const RealSet& x, const CoverFamily& f, std::int64_t k) {
  return intersect(x, RealSet::of(IntervalAtom::open(f.lower.value(k), f.upper.value(k))));
}

// Indices k >= start with U_k nonempty, when there are finitely many.
std::optional<std::vector<std::int64_t>> nonempty_indices(const RealSet& x, const CoverFamily& f, const RealSet& hit) {
  const Rational limit = f.lower.limit();
  const int side = sgn(f.lower.gap());
  if (accumulates_at(hit, limit, side)) return std::nullopt;
  std::vector<std::int64_t> out;
  if (hit.empty()) return out;
  IntervalAtom near = side > 0 ? IntervalAtom{Bound::at(limit, false), Bound::pos_inf()}
                               : IntervalAtom{Bound::neg_inf(), Bound::at(limit, false)};
  RealSet onSide = intersect(closure(hit), RealSet::of(near));
  if (onSide.empty()) return out;
  // pieces closer to the limit than `edge` cannot meet `hit`
  Rational edge = side > 0 ? *infimum(onSide) : *supremum(onSide);
  constexpr std::int64_t kCap = 1'000'000;
  for (std::int64_t k = f.start;; ++k) {
    if (k - f.start > kCap) throw Unnormalizable("cover family has too many candidate members");
    if (side > 0 ? f.upper.value(k) <= edge : f.lower.value(k) >= edge) break;
    if (!piece_in(x, f, k).empty()) out.push_back(k);
  }
  return out;
}

bool family_certified_nonempty(const RealSet& x, const CoverFamily& f) {
  if (!f.nonemptyWitness) return false;
  RatSeq w(*f.nonemptyWitness);
  return dominates(w, RatSeq(f.lower), false, f.start) && dominates(RatSeq(f.upper), w, false, f.start) &&
         semantic_subset(point_family(*f.nonemptyWitness, f.start), x);
}

}  // namespace

CoverReport verify_cover(const RealSet& x, const DisjointOpenCover& cover) {
  CoverReport r;
  std::vector<RealSet> sets = cover.finiteMembers;
  std::vector<RealSet> famSets;
  r.disjoint = true;
  for (const auto& f : cover.familyMembers) {
    detail::USchema u = detail::to_u(f.template_schema());
    if (!u.periodic() || u.hiOffset - u.loOffset > u.loSlope) r.disjoint = false;  // pieces overlap
    famSets.push_back(intersect(template_union(f), x));
    sets.push_back(famSets.back());
  }
  RealSet all = RealSet::empty_set();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (!intersect(sets[i], sets[j]).empty()) r.disjoint = false;
    all = set_union(all, sets[i]);
  }
  r.covers = semantic_subset(x, all);
  r.openInX = std::all_of(cover.finiteMembers.begin(), cover.finiteMembers.end(),
                          [&](const RealSet& m) { return open_in(x, m); });
  for (std::size_t f = 0; f < cover.familyMembers.size(); ++f) {
    const CoverFamily& fam = cover.familyMembers[f];
    if (family_certified_nonempty(x, fam) ||
        accumulates_at(famSets[f], fam.lower.limit(), sgn(fam.lower.gap())))
      r.infinitelyManyNonempty = true;
  }
  if (r.covers && r.disjoint && r.openInX && !r.infinitelyManyNonempty) {
    std::vector<CoverIndex> sub;
    for (std::size_t i = 0; i < cover.finiteMembers.size(); ++i)
      if (!cover.finiteMembers[i].empty()) sub.push_back({false, i, 0});
    bool finite = true;
    for (std::size_t f = 0; f < cover.familyMembers.size() && finite; ++f) {
      auto idx = nonempty_indices(x, cover.familyMembers[f], famSets[f]);
      if (!idx) {
        finite = false;
        break;
      }
      for (auto k : *idx) sub.push_back({true, f, k});
    }
    if (finite) r.finiteSubcover = std::move(sub);
  }
  return r;
}

std::optional<CoverIndex> locate_in_cover(const RealSet& x, const DisjointOpenCover& cover, const Rational& q) {
  if (!member(x, q)) return std::nullopt;
  for (std::size_t i = 0; i < cover.finiteMembers.size(); ++i)
    if (member(cover.finiteMembers[i], q)) return CoverIndex{false, i, 0};
  for (std::size_t f = 0; f < cover.familyMembers.size(); ++f) {
    auto k = detail::piece_index_containing(detail::to_u(cover.familyMembers[f].template_schema()), q);
    if (k) return CoverIndex{true, f, *k};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

SurjectionOntoN::SurjectionOntoN(RealSet x, DisjointOpenCover cover) : x_(std::move(x)), cover_(std::move(cover)) {
  if (cover_.familyMembers.empty()) throw std::invalid_argument("a surjection onto N needs an infinite family");
  for (const auto& f : cover_.familyMembers)
    if (!family_certified_nonempty(x_, f)) throw std::invalid_argument("cover family lacks a nonemptiness witness");
  for (std::size_t i = 0; i < cover_.finiteMembers.size(); ++i)
    if (!cover_.finiteMembers[i].empty()) finiteOrder_.push_back(i);
}

std::int64_t SurjectionOntoN::evaluate(const Rational& q) const {
  if (!member(x_, q)) throw std::domain_error(to_string(q) + " is not in X");
  auto at = locate_in_cover(x_, cover_, q);
  if (!at) throw std::logic_error("cover misses " + to_string(q));
  const auto m = static_cast<std::int64_t>(finiteOrder_.size());
  if (!at->family) {
    auto it = std::find(finiteOrder_.begin(), finiteOrder_.end(), at->member);
    return (it - finiteOrder_.begin()) + 1;
  }
  const auto families = static_cast<std::int64_t>(cover_.familyMembers.size());
  const auto& f = cover_.familyMembers[at->member];
  return m + (at->index - f.start) * families + static_cast<std::int64_t>(at->member) + 1;
}

Rational SurjectionOntoN::point_with_value(std::int64_t n) const {
  if (n < 1) throw std::domain_error("values are positive integers");
  const auto m = static_cast<std::int64_t>(finiteOrder_.size());
  if (n <= m) return any_point(cover_.finiteMembers[finiteOrder_[n - 1]]);
  const auto families = static_cast<std::int64_t>(cover_.familyMembers.size());
  std::int64_t j = n - m - 1;
  const auto& f = cover_.familyMembers[j % families];
  return f.nonemptyWitness->value(f.start + j / families);
}

RealSet SurjectionOntoN::preimage(std::int64_t n) const {
  if (n < 1) return RealSet::empty_set();
  const auto m = static_cast<std::int64_t>(finiteOrder_.size());
  if (n <= m) return cover_.finiteMembers[finiteOrder_[n - 1]];
  const auto families = static_cast<std::int64_t>(cover_.familyMembers.size());
  std::int64_t j = n - m - 1;
  const auto& f = cover_.familyMembers[j % families];
  return piece_in(x_, f, f.start + j / families);
}

SurjectionOntoN cover_to_surjection(const RealSet& x, const DisjointOpenCover& cover) { return {x, cover}; }

// ---------------------------------------------------------------------------

namespace {

Bound end_at(const ChainEnd& e, std::int64_t n, bool lower) {
  switch (e.kind) {
    case ChainEnd::Kind::Infinite:
      return lower ? Bound::neg_inf() : Bound::pos_inf();
    case ChainEnd::Kind::Fixed:
      return Bound::at(e.fixed, e.closed);
    case ChainEnd::Kind::Moving:
      break;
  }
  return Bound::at(e.moving.value(n), e.closed);
}

Bound end_limit(const ChainEnd& e, bool lower) {
  if (e.kind != ChainEnd::Kind::Moving || e.moving.constant()) return end_at(e, 1, lower);
  // strictly monotone toward the limit, so the limit itself survives
  return Bound::at(e.moving.limit(), true);
}

RealSet window_in(const RealSet& x, const Bound& lo, const Bound& hi) {
  IntervalAtom w{lo, hi};
  if (w.empty()) return RealSet::empty_set();
  return intersect(x, RealSet::of(w));
}

bool monotone_end(const ChainEnd& e, bool lower, std::int64_t start) {
  if (e.kind != ChainEnd::Kind::Moving || e.moving.constant()) return true;
  if (Rational(start) + e.moving.shift() <= 0) return false;  // pole or sign flip in range
  return lower ? e.moving.gap() < 0 : e.moving.gap() > 0;
}

}  // namespace

RealSet ClopenChain::term(const RealSet& x, std::int64_t n) const {
  return window_in(x, end_at(lower, n, true), end_at(upper, n, false));
}

bool clopen_in(const RealSet& x, const RealSet& s) {
  if (!semantic_subset(s, x)) return false;
  RealSet rest = intersect(x, complement(s));
  return intersect(closure(s), rest).empty() && intersect(closure(rest), s).empty();
}

ChainReport validate_chain(const RealSet& x, const ClopenChain& chain, std::int64_t terms) {
  ChainReport r;
  r.decreasing = chain.start >= 1 && monotone_end(chain.lower, true, chain.start) &&
                 monotone_end(chain.upper, false, chain.start);
  r.allClopen = r.allNonempty = true;
  for (std::int64_t n = chain.start; n < chain.start + terms; ++n) {
    RealSet f = chain.term(x, n);
    if (f.empty()) r.allNonempty = false;
    if (!clopen_in(x, f)) r.allClopen = false;
    ++r.checkedTerms;
  }
  return r;
}

RealSet clopen_chain_intersection(const RealSet& x, const ClopenChain& chain) {
  return window_in(x, end_limit(chain.lower, true), end_limit(chain.upper, false));
}

std::pair<RealSet, RealSet> split_clopen(const RealSet& x, const Rational& c) {
  if (member(closure(x), c)) throw InvalidCut(to_string(c) + " lies in the closure of X");
  return {intersect(x, RealSet::of({Bound::neg_inf(), Bound::at(c, false)})),
          intersect(x, RealSet::of({Bound::at(c, false), Bound::pos_inf()}))};
}

}  // namespace realtopo
