#include "realtopo/detail/reciprocal.hpp"

#include <algorithm>
#include <map>

namespace realtopo::detail {

namespace {

constexpr std::size_t kMaxArcs = 20000;
constexpr std::size_t kMaxExpansion = 2'000'000;

struct SlopeOffset {
  Rational slope, offset;
};

// Möbius endpoint L + K/(n + d)  ->  u = (n + d) / |K|
SlopeOffset endpoint_to_u(const MobiusSeq& m) {
  Rational k = abs(m.gap());
  return {Rational(1) / k, m.shift() / k};
}

MobiusSeq u_to_endpoint(const Rational& limit, int side, const Rational& slope, const Rational& offset) {
  return MobiusSeq(limit * slope, limit * offset + side, slope, offset);
}

void check_endpoint(const MobiusSeq& m, std::int64_t start) {
  if (m.constant()) throw InvalidSchema("schema endpoint sequence is constant");
  if (Rational(start) + m.shift() <= 0)
    throw InvalidSchema("schema endpoint sequence has a pole at or beyond the start index");
}

int compare_lower(const Bound& a, const Bound& b) {
  auto rank = [](const Bound& x) { return x.kind == Bound::Kind::NegInf ? 0 : x.kind == Bound::Kind::Finite ? 1 : 2; };
  if (rank(a) != rank(b)) return rank(a) < rank(b) ? -1 : 1;
  if (!a.finite()) return 0;
  if (a.value != b.value) return a.value < b.value ? -1 : 1;
  if (a.closed != b.closed) return a.closed ? -1 : 1;
  return 0;
}

int compare_upper(const Bound& a, const Bound& b) {
  auto rank = [](const Bound& x) { return x.kind == Bound::Kind::NegInf ? 0 : x.kind == Bound::Kind::Finite ? 1 : 2; };
  if (rank(a) != rank(b)) return rank(a) < rank(b) ? -1 : 1;
  if (!a.finite()) return 0;
  if (a.value != b.value) return a.value < b.value ? -1 : 1;
  if (a.closed != b.closed) return a.closed ? 1 : -1;
  return 0;
}

// next starts no later than where cur ends (overlap or touching with a closed end)
bool joins(const Bound& curUpper, const Bound& nextLower) {
  if (curUpper.kind == Bound::Kind::PosInf || nextLower.kind == Bound::Kind::NegInf) return true;
  if (nextLower.value < curUpper.value) return true;
  return nextLower.value == curUpper.value && (nextLower.closed || curUpper.closed);
}

Bound flip(const Bound& b) {
  Bound r = b;
  r.closed = !b.closed;
  return r;
}

// -------------------------------------------------------------------------
// periodic pattern in u-coordinates

bool covers_mod(const std::vector<IntervalAtom>& arcs, const Rational& t, const Rational& period) {
  for (const auto& a : arcs) {
    if (a.contains(t)) return true;
    if (t == 0 && a.contains(period)) return true;
  }
  return false;
}

struct Pattern {
  bool full = false;
  Rational period;
  Rational gapPoint;
  std::vector<IntervalAtom> components;  // in [gapPoint, gapPoint + period)
};

Pattern shifted_window(std::vector<IntervalAtom> comps, const Rational& shift) {
  Pattern p;
  for (auto& c : comps) {
    c.lower.value += shift;
    c.upper.value += shift;
  }
  p.components = std::move(comps);
  return p;
}

Pattern build_pattern(const std::vector<const USchema*>& schemas) {
  Pattern pat;
  Rational period = schemas.front()->loSlope;
  for (const auto* s : schemas) period = rational_lcm(period, s->loSlope);
  pat.period = period;

  std::vector<IntervalAtom> arcs;
  for (const auto* s : schemas) {
    const Rational& step = s->loSlope;
    Rational width = s->hiOffset - s->loOffset;
    if (width > step || (width == step && (s->loClosed || s->hiClosed))) {
      pat.full = true;
      return pat;
    }
    Rational copies = period / step;
    if (copies.get_den() != 1 || copies > kMaxArcs || arcs.size() > kMaxArcs)
      throw Unnormalizable("combined period of same-limit schemas is too large");
    long count = copies.get_num().get_si();
    for (long j = 0; j < count; ++j) {
      Rational lo = s->loOffset + step * j;
      Rational hi = s->hiOffset + step * j;
      Rational shift = Rational(floor_of(lo / period)) * period;
      lo -= shift;
      hi -= shift;
      if (hi < period || (hi == period && !s->hiClosed)) {
        arcs.push_back({Bound::at(lo, s->loClosed), Bound::at(hi, s->hiClosed)});
      } else {
        arcs.push_back({Bound::at(lo, s->loClosed), Bound::at(period, false)});
        arcs.push_back({Bound::at(0, true), Bound::at(hi - period, s->hiClosed)});
      }
    }
  }
  arcs = sweep(std::move(arcs));

  std::vector<Rational> marks{Rational(0), period};
  for (const auto& a : arcs) {
    marks.push_back(a.lower.value);
    marks.push_back(a.upper.value);
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  std::vector<Rational> candidates;
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    candidates.push_back(marks[i]);
    candidates.push_back((marks[i] + marks[i + 1]) / 2);
  }
  std::optional<Rational> gap;
  for (const auto& c : candidates) {
    if (c >= period) continue;
    if (!covers_mod(arcs, c, period)) {
      gap = c;
      break;
    }
  }
  if (!gap) {
    pat.full = true;
    return pat;
  }
  pat.gapPoint = *gap;

  std::vector<IntervalAtom> comps;
  for (auto a : arcs) {
    if (a.upper.value <= *gap) {
      a.lower.value += period;
      a.upper.value += period;
    }
    comps.push_back(a);
  }
  comps = sweep(std::move(comps));

  // reduce to the minimal period
  const std::size_t k = comps.size();
  for (std::size_t d = k; d >= 2; --d) {
    if (k % d != 0) continue;
    Rational q = period / static_cast<long>(d);
    std::vector<IntervalAtom> moved;
    for (auto c : comps) {
      c.lower.value += q;
      c.upper.value += q;
      if (c.lower.value >= *gap + period) {
        c.lower.value -= period;
        c.upper.value -= period;
      }
      moved.push_back(c);
    }
    moved = sweep(std::move(moved));
    if (moved == comps) {
      period = q;
      std::vector<IntervalAtom> reduced;
      for (const auto& c : comps)
        if (c.lower.value < *gap + period) reduced.push_back(c);
      comps = std::move(reduced);
      break;
    }
  }
  pat.period = period;
  pat.components = std::move(comps);
  return pat;
}

}  // namespace

// ---------------------------------------------------------------------------

USchema to_u(const SchemaAtom& s) {
  if (s.start < 1) throw InvalidSchema("schema start index must be positive");
  check_endpoint(s.left, s.start);
  USchema u;
  u.start = s.start;
  u.limit = s.left.limit();
  u.side = sgn(s.left.gap());
  auto l = endpoint_to_u(s.left);
  if (s.kind == SchemaAtom::Kind::PointFamily) {
    u.loSlope = u.hiSlope = l.slope;
    u.loOffset = u.hiOffset = l.offset;
    u.loClosed = u.hiClosed = true;
    return u;
  }
  check_endpoint(s.right, s.start);
  if (s.right.limit() != u.limit) throw InvalidSchema("schema endpoints converge to different limits");
  if (sgn(s.right.gap()) != u.side) throw InvalidSchema("schema endpoints approach the limit from different sides");
  auto r = endpoint_to_u(s.right);
  // above the limit the x-left endpoint is the one nearer the limit (larger u)
  if (u.side > 0) {
    u.loSlope = r.slope;
    u.loOffset = r.offset;
    u.loClosed = s.rightClosed;
    u.hiSlope = l.slope;
    u.hiOffset = l.offset;
    u.hiClosed = s.leftClosed;
  } else {
    u.loSlope = l.slope;
    u.loOffset = l.offset;
    u.loClosed = s.leftClosed;
    u.hiSlope = r.slope;
    u.hiOffset = r.offset;
    u.hiClosed = s.rightClosed;
  }
  if (u.hiSlope < u.loSlope || u.hi(u.start) <= u.lo(u.start))
    throw InvalidSchema("schema pieces need left(n) < right(n) for every n >= start");
  return u;
}

SchemaAtom from_u(const USchema& u) {
  MobiusSeq lo = u_to_endpoint(u.limit, u.side, u.loSlope, u.loOffset);
  if (u.loSlope == u.hiSlope && u.loOffset == u.hiOffset) return SchemaAtom::points(lo, u.start);
  MobiusSeq hi = u_to_endpoint(u.limit, u.side, u.hiSlope, u.hiOffset);
  if (u.side > 0) return SchemaAtom::intervals(hi, u.hiClosed, lo, u.loClosed, u.start);
  return SchemaAtom::intervals(lo, u.loClosed, hi, u.hiClosed, u.start);
}

IntervalAtom u_span_to_x(const Rational& limit, int side, const IntervalAtom& s) {
  Rational near = limit + Rational(side) / s.upper.value;
  Rational far = limit + Rational(side) / s.lower.value;
  if (side > 0) return {Bound::at(near, s.upper.closed), Bound::at(far, s.lower.closed)};
  return {Bound::at(far, s.lower.closed), Bound::at(near, s.upper.closed)};
}

IntervalAtom piece_x(const USchema& u, std::int64_t n) {
  return u_span_to_x(u.limit, u.side, {Bound::at(u.lo(n), u.loClosed), Bound::at(u.hi(n), u.hiClosed)});
}

std::vector<IntervalAtom> sweep(std::vector<IntervalAtom> spans) {
  spans.erase(std::remove_if(spans.begin(), spans.end(), [](const IntervalAtom& s) { return s.empty(); }), spans.end());
  std::sort(spans.begin(), spans.end(),
            [](const IntervalAtom& a, const IntervalAtom& b) { return compare_lower(a.lower, b.lower) < 0; });
  std::vector<IntervalAtom> out;
  for (auto& s : spans) {
    if (!out.empty() && joins(out.back().upper, s.lower)) {
      if (compare_upper(s.upper, out.back().upper) > 0) out.back().upper = s.upper;
    } else {
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<IntervalAtom> complement_spans(const std::vector<IntervalAtom>& swept) {
  std::vector<IntervalAtom> out;
  Bound from = Bound::neg_inf();
  for (const auto& s : swept) {
    if (s.lower.kind != Bound::Kind::NegInf) {
      IntervalAtom gap{from, flip(s.lower)};
      if (!gap.empty()) out.push_back(gap);
    }
    if (s.upper.kind == Bound::Kind::PosInf) return out;
    from = flip(s.upper);
  }
  out.push_back({from, Bound::pos_inf()});
  return out;
}

std::optional<std::int64_t> piece_index_containing(const USchema& u, const Rational& x) {
  Rational diff = x - u.limit;
  if (sgn(diff) != u.side) return std::nullopt;
  Rational t = Rational(1) / abs(diff);
  Integer nmax = floor_of((t - u.loOffset) / u.loSlope);
  if (nmax < u.start) return std::nullopt;
  for (int back = 0; back < 2; ++back) {
    Integer n = nmax - back;
    if (n < u.start) break;
    std::int64_t idx = to_index(n);
    IntervalAtom span{Bound::at(u.lo(idx), u.loClosed), Bound::at(u.hi(idx), u.hiClosed)};
    if (span.contains(t)) return idx;
  }
  if (!u.periodic()) {
    // widening pieces may overlap; fall back to the full candidate range
    Integer nmin = ceil_of((t - u.hiOffset) / u.hiSlope);
    if (nmin < u.start) nmin = u.start;
    for (Integer n = nmin; n <= nmax; ++n) {
      std::int64_t idx = to_index(n);
      IntervalAtom span{Bound::at(u.lo(idx), u.loClosed), Bound::at(u.hi(idx), u.hiClosed)};
      if (span.contains(t)) return idx;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Decomposition decompose(const RealSet& raw) {
  std::vector<IntervalAtom> finite = raw.intervals;
  for (const auto& p : raw.points) finite.push_back(IntervalAtom::point(p.value));
  std::vector<USchema> us;
  for (const auto& s : raw.schemas) us.push_back(to_u(s));

  Decomposition out;
  if (us.empty()) {
    out.finite = sweep(std::move(finite));
    return out;
  }

  std::vector<Rational> limits;
  for (const auto& u : us) limits.push_back(u.limit);
  std::sort(limits.begin(), limits.end());
  limits.erase(std::unique(limits.begin(), limits.end()), limits.end());
  Rational eps = 1;
  for (std::size_t i = 0; i + 1 < limits.size(); ++i) eps = min_of(eps, (limits[i + 1] - limits[i]) / 4);
  const Rational base = Rational(1) / eps;

  std::size_t expanded = 0;
  auto expand_until = [&](const USchema& u, std::int64_t& next, auto&& keep_going) {
    while (keep_going(u.lo(next))) {
      finite.push_back(piece_x(u, next));
      ++next;
      if (++expanded > kMaxExpansion) throw Unnormalizable("too many explicit pieces");
    }
  };

  std::vector<std::int64_t> next(us.size());
  for (std::size_t i = 0; i < us.size(); ++i) {
    next[i] = us[i].start;
    expand_until(us[i], next[i], [&](const Rational& lo) { return lo <= base; });
  }

  std::map<std::pair<Rational, int>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < us.size(); ++i) groups[{us[i].limit, us[i].side}].push_back(i);

  for (const auto& [key, members] : groups) {
    const Rational& limit = key.first;
    const int side = key.second;

    Rational reach = base;
    std::optional<Rational> cover;
    for (const auto& s : finite) {
      if (s.empty()) continue;
      if (side > 0) {
        bool startsBelow = s.lower.kind == Bound::Kind::NegInf || s.lower.value <= limit;
        bool endsAbove = s.upper.kind == Bound::Kind::PosInf || s.upper.value > limit;
        if (startsBelow && endsAbove) {
          Rational c = s.upper.finite() ? Rational(1) / (s.upper.value - limit) : Rational(0);
          cover = cover ? min_of(*cover, c) : c;
        } else if (s.lower.finite() && s.lower.value > limit) {
          reach = max_of(reach, Rational(1) / (s.lower.value - limit));
        }
      } else {
        bool startsBelow = s.lower.kind == Bound::Kind::NegInf || s.lower.value < limit;
        bool endsAbove = s.upper.kind == Bound::Kind::PosInf || s.upper.value >= limit;
        if (startsBelow && endsAbove) {
          Rational c = s.lower.finite() ? Rational(1) / (limit - s.lower.value) : Rational(0);
          cover = cover ? min_of(*cover, c) : c;
        } else if (s.upper.finite() && s.upper.value < limit) {
          reach = max_of(reach, Rational(1) / (limit - s.upper.value));
        }
      }
    }

    std::vector<const USchema*> periodic;
    for (std::size_t i : members) {
      const USchema& u = us[i];
      if (u.periodic()) {
        periodic.push_back(&u);
        continue;
      }
      // widening pieces: from N0 on, consecutive pieces overlap
      Rational bound = (u.loSlope + u.loOffset - u.hiOffset) / (u.hiSlope - u.loSlope);
      std::int64_t n0 = std::max<std::int64_t>(next[i], to_index(floor_of(bound)) + 1);
      Rational c = u.lo(n0);
      cover = cover ? min_of(*cover, c) : c;
    }

    Rational regular = 0;
    for (std::size_t i : members) regular = max_of(regular, us[i].hi(next[i]));
    Pattern pattern;
    if (!periodic.empty()) {
      pattern = build_pattern(periodic);
      if (pattern.full) cover = cover ? min_of(*cover, regular) : regular;
    }

    if (cover) {
      for (std::size_t i : members)
        expand_until(us[i], next[i], [&](const Rational& lo) { return lo <= *cover; });
      IntervalAtom region = side > 0
                                ? IntervalAtom{Bound::at(limit, false), *cover == 0 ? Bound::pos_inf() : Bound::at(limit + 1 / *cover, false)}
                                : IntervalAtom{*cover == 0 ? Bound::neg_inf() : Bound::at(limit - 1 / *cover, false), Bound::at(limit, false)};
      finite.push_back(region);
      continue;
    }

    Rational floorAt = max_of(reach, regular);
    Integer k = floor_of((floorAt - pattern.gapPoint) / pattern.period) + 1;
    Rational cut = pattern.gapPoint + Rational(k) * pattern.period;
    for (std::size_t i : members)
      expand_until(us[i], next[i], [&](const Rational& lo) { return lo < cut; });

    KeyPattern kp;
    kp.limit = limit;
    kp.side = side;
    kp.period = pattern.period;
    kp.cut = cut;
    kp.window = shifted_window(pattern.components, cut - pattern.gapPoint).components;
    out.keys.push_back(std::move(kp));
  }

  out.finite = sweep(std::move(finite));
  return out;
}

}  // namespace realtopo::detail
