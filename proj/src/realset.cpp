#include "realtopo/realset.hpp"

#include <algorithm>

#include "realtopo/detail/reciprocal.hpp"

namespace realtopo {

using detail::USchema;

bool IntervalAtom::empty() const {
  if (!lower.finite() || !upper.finite()) {
    return lower.kind == Bound::Kind::PosInf || upper.kind == Bound::Kind::NegInf;
  }
  if (lower.value < upper.value) return false;
  if (lower.value > upper.value) return true;
  return !(lower.closed && upper.closed);
}

bool IntervalAtom::contains(const Rational& q) const {
  if (lower.finite() && (q < lower.value || (q == lower.value && !lower.closed))) return false;
  if (lower.kind == Bound::Kind::PosInf) return false;
  if (upper.finite() && (q > upper.value || (q == upper.value && !upper.closed))) return false;
  if (upper.kind == Bound::Kind::NegInf) return false;
  return true;
}

SchemaAtom SchemaAtom::points(MobiusSeq seq, std::int64_t start) {
  SchemaAtom s;
  s.kind = Kind::PointFamily;
  s.left = seq;
  s.right = std::move(seq);
  s.start = start;
  return s;
}

SchemaAtom SchemaAtom::intervals(MobiusSeq left, bool leftClosed, MobiusSeq right, bool rightClosed, std::int64_t start) {
  SchemaAtom s;
  s.kind = Kind::IntervalFamily;
  s.left = std::move(left);
  s.leftClosed = leftClosed;
  s.right = std::move(right);
  s.rightClosed = rightClosed;
  s.start = start;
  return s;
}

int SchemaAtom::side() const { return sgn(left.gap()); }

IntervalAtom SchemaAtom::piece(std::int64_t n) const {
  if (kind == Kind::PointFamily) return IntervalAtom::point(left.value(n));
  return {Bound::at(left.value(n), leftClosed), Bound::at(right.value(n), rightClosed)};
}

RealSet RealSet::empty_set() {
  RealSet r;
  r.normalForm = true;
  return r;
}

RealSet RealSet::real_line() { return of(IntervalAtom::real_line()); }

RealSet RealSet::of(const IntervalAtom& iv) {
  RealSet r;
  if (iv.degenerate() && !iv.empty())
    r.points.push_back({iv.lower.value});
  else if (!iv.empty())
    r.intervals.push_back(iv);
  r.normalForm = true;
  return r;
}

RealSet RealSet::of_point(const Rational& p) { return of(IntervalAtom::point(p)); }

RealSet& RealSet::append(const RealSet& other) {
  intervals.insert(intervals.end(), other.intervals.begin(), other.intervals.end());
  points.insert(points.end(), other.points.begin(), other.points.end());
  schemas.insert(schemas.end(), other.schemas.begin(), other.schemas.end());
  normalForm = false;
  return *this;
}

// ---------------------------------------------------------------------------

namespace {

RealSet from_spans(const std::vector<IntervalAtom>& spans) {
  RealSet r;
  for (const auto& s : spans) {
    if (s.degenerate())
      r.points.push_back({s.lower.value});
    else
      r.intervals.push_back(s);
  }
  return r;
}

Rational first_piece_anchor(const SchemaAtom& s) { return s.left.value(s.start); }

}  // namespace

RealSet normalize(const RealSet& raw) {
  if (raw.normalForm) return raw;
  detail::Decomposition dec = detail::decompose(raw);
  std::vector<IntervalAtom> finite = std::move(dec.finite);

  std::vector<SchemaAtom> schemas;
  for (const auto& key : dec.keys) {
    for (const auto& comp : key.window) {
      USchema u;
      u.limit = key.limit;
      u.side = key.side;
      u.loSlope = u.hiSlope = key.period;
      u.loOffset = comp.lower.value - key.period;
      u.hiOffset = comp.upper.value - key.period;
      u.loClosed = comp.lower.closed;
      u.hiClosed = comp.upper.closed;
      u.start = 1;
      // pull matching components below the cut back into the family
      for (;;) {
        Rational lower = u.lo(0);
        if (lower <= 0) break;
        IntervalAtom candidate = detail::piece_x(u, 0);
        auto it = std::find(finite.begin(), finite.end(), candidate);
        if (it == finite.end()) break;
        finite.erase(it);
        u.loOffset -= key.period;
        u.hiOffset -= key.period;
      }
      schemas.push_back(detail::from_u(u));
    }
  }
  std::sort(schemas.begin(), schemas.end(), [](const SchemaAtom& a, const SchemaAtom& b) {
    if (a.limit() != b.limit()) return a.limit() < b.limit();
    if (a.side() != b.side()) return a.side() < b.side();
    return first_piece_anchor(a) < first_piece_anchor(b);
  });

  RealSet out = from_spans(finite);
  out.schemas = std::move(schemas);
  out.normalForm = true;
  return out;
}

bool member(const RealSet& x, const Rational& q) {
  for (const auto& iv : x.intervals)
    if (iv.contains(q)) return true;
  for (const auto& p : x.points)
    if (p.value == q) return true;
  for (const auto& s : x.schemas)
    if (detail::piece_index_containing(detail::to_u(s), q)) return true;
  return false;
}

RealSet closure(const RealSet& x) {
  RealSet r;
  for (auto iv : x.intervals) {
    if (iv.lower.finite()) iv.lower.closed = true;
    if (iv.upper.finite()) iv.upper.closed = true;
    r.intervals.push_back(iv);
  }
  r.points = x.points;
  for (auto s : x.schemas) {
    s.leftClosed = s.rightClosed = true;
    r.points.push_back({s.limit()});
    r.schemas.push_back(s);
  }
  return normalize(r);
}

RealSet interior(const RealSet& x) {
  RealSet r;
  for (auto iv : x.intervals) {
    iv.lower.closed = iv.upper.closed = false;
    r.intervals.push_back(iv);
  }
  for (auto s : x.schemas) {
    if (s.kind == SchemaAtom::Kind::PointFamily) continue;
    s.leftClosed = s.rightClosed = false;
    r.schemas.push_back(s);
  }
  return normalize(r);
}

ComponentList components(const RealSet& x) {
  ComponentList out;
  std::vector<IntervalAtom> spans = x.intervals;
  for (const auto& p : x.points) spans.push_back(IntervalAtom::point(p.value));
  spans = detail::sweep(std::move(spans));
  for (const auto& s : spans) {
    if (s.degenerate())
      out.finiteComponents.emplace_back(PointAtom{s.lower.value});
    else
      out.finiteComponents.emplace_back(s);
  }
  for (const auto& s : x.schemas) {
    ComponentFamily f;
    f.schema = s;
    f.singletonPieces = s.kind == SchemaAtom::Kind::PointFamily;
    f.leftClosed = s.leftClosed;
    f.rightClosed = s.rightClosed;
    out.schemaFamilies.push_back(f);
  }
  return out;
}

RealSet set_union(const RealSet& x, const RealSet& y) {
  RealSet r = x;
  r.append(y);
  return normalize(r);
}

RealSet complement(const RealSet& x) {
  detail::Decomposition dec = detail::decompose(x);
  std::vector<IntervalAtom> blocked = dec.finite;
  RealSet raw;
  for (const auto& key : dec.keys) {
    Rational edge = Rational(1) / key.cut;
    blocked.push_back(key.side > 0 ? IntervalAtom::open(key.limit, key.limit + edge)
                                   : IntervalAtom::open(key.limit - edge, key.limit));
    // complement of the pattern inside one window [cut, cut + period)
    std::vector<IntervalAtom> holes;
    Bound from = Bound::at(key.cut, true);
    for (const auto& c : key.window) {
      IntervalAtom h{from, Bound::at(c.lower.value, !c.lower.closed)};
      if (!h.empty()) holes.push_back(h);
      from = Bound::at(c.upper.value, !c.upper.closed);
    }
    IntervalAtom tail{from, Bound::at(key.cut + key.period, false)};
    if (!tail.empty()) holes.push_back(tail);
    for (const auto& h : holes) {
      USchema u;
      u.limit = key.limit;
      u.side = key.side;
      u.loSlope = u.hiSlope = key.period;
      u.loOffset = h.lower.value - key.period;
      u.hiOffset = h.upper.value - key.period;
      u.loClosed = h.lower.closed;
      u.hiClosed = h.upper.closed;
      u.start = 1;
      raw.schemas.push_back(detail::from_u(u));
    }
  }
  for (const auto& s : detail::complement_spans(detail::sweep(std::move(blocked)))) {
    if (s.degenerate())
      raw.points.push_back({s.lower.value});
    else
      raw.intervals.push_back(s);
  }
  return normalize(raw);
}

RealSet complement_in(const RealSet& x, const IntervalAtom& window) {
  return complement(set_union(x, complement(RealSet::of(window))));
}

RealSet intersect(const RealSet& x, const RealSet& y) {
  if (x.empty() || y.empty()) return RealSet::empty_set();
  return complement(set_union(complement(x), complement(y)));
}

bool semantic_subset(const RealSet& x, const RealSet& y) {
  if (x.empty()) return true;
  RealSet u = set_union(complement(x), y);
  return u == RealSet::real_line();
}

bool semantic_equal(const RealSet& x, const RealSet& y) { return semantic_subset(x, y) && semantic_subset(y, x); }

Predicates predicates(const RealSet& x) {
  Predicates p;
  p.bounded = true;
  p.closed = true;
  for (const auto& iv : x.intervals) {
    if (!iv.lower.finite() || !iv.upper.finite()) p.bounded = false;
    if ((iv.lower.finite() && !iv.lower.closed) || (iv.upper.finite() && !iv.upper.closed)) p.closed = false;
  }
  for (const auto& s : x.schemas) {
    if (s.kind == SchemaAtom::Kind::IntervalFamily && !(s.leftClosed && s.rightClosed)) p.closed = false;
    if (!member(x, s.limit())) p.closed = false;
  }
  p.compact = p.bounded && p.closed;
  return p;
}

std::vector<Rational> local_connectedness_defects(const RealSet& y) {
  std::vector<Rational> out;
  for (const auto& s : y.schemas)
    if (member(y, s.limit())) out.push_back(s.limit());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Rational> supremum(const RealSet& x) {
  std::optional<Rational> best;
  auto consider = [&](const Rational& v) {
    if (!best || v > *best) best = v;
  };
  for (const auto& iv : x.intervals) {
    if (!iv.upper.finite()) return std::nullopt;
    consider(iv.upper.value);
  }
  for (const auto& p : x.points) consider(p.value);
  for (const auto& s : x.schemas) consider(s.side() < 0 ? s.limit() : s.right.value(s.start));
  return best;
}

std::optional<Rational> infimum(const RealSet& x) {
  std::optional<Rational> best;
  auto consider = [&](const Rational& v) {
    if (!best || v < *best) best = v;
  };
  for (const auto& iv : x.intervals) {
    if (!iv.lower.finite()) return std::nullopt;
    consider(iv.lower.value);
  }
  for (const auto& p : x.points) consider(p.value);
  for (const auto& s : x.schemas) consider(s.side() > 0 ? s.limit() : s.left.value(s.start));
  return best;
}

std::vector<AccumulationKey> accumulation_keys(const RealSet& x) {
  std::vector<AccumulationKey> out;
  for (const auto& s : x.schemas) {
    AccumulationKey k{s.limit(), s.side()};
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  }
  return out;
}

}  // namespace realtopo
