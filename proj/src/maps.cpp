#include "realtopo/maps.hpp"

#include <stdexcept>

namespace realtopo {

PLMap::PLMap(std::vector<Rational> breakpoints, std::vector<AffinePiece> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (pieces_.size() != breakpoints_.size() + 1) throw std::invalid_argument("PLMap needs one piece per gap");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i]))
      throw std::invalid_argument("PLMap breakpoints must increase strictly");
    if (pieces_[i].at(breakpoints_[i]) != pieces_[i + 1].at(breakpoints_[i]))
      throw std::invalid_argument("PLMap is discontinuous at " + to_string(breakpoints_[i]));
  }
}

PLMap PLMap::affine(const Rational& slope, const Rational& offset) { return PLMap({}, {{slope, offset}}); }

PLMap PLMap::abs_around(const Rational& center) { return PLMap({center}, {{-1, center}, {1, -center}}); }

IntervalAtom PLMap::domain(std::size_t i) const {
  Bound lo = i == 0 ? Bound::neg_inf() : Bound::at(breakpoints_[i - 1], true);
  Bound hi = i == breakpoints_.size() ? Bound::pos_inf() : Bound::at(breakpoints_[i], true);
  return {lo, hi};
}

Rational eval_map(const PLMap& m, const Rational& q) {
  const auto& bp = m.breakpoints();
  std::size_t i = 0;
  while (i < bp.size() && q > bp[i]) ++i;
  return m.pieces()[i].at(q);
}

namespace {

Bound map_bound(const Bound& b, const AffinePiece& f) {
  if (!b.finite()) {
    bool up = (b.kind == Bound::Kind::PosInf) == (f.slope > 0);
    return up ? Bound::pos_inf() : Bound::neg_inf();
  }
  return Bound::at(f.at(b.value), b.closed);
}

}  // namespace

RealSet affine_image(const RealSet& x, const AffinePiece& f) {
  if (x.empty()) return RealSet::empty_set();
  if (f.slope == 0) return RealSet::of_point(f.offset);
  RealSet r;
  for (const auto& iv : x.intervals) {
    Bound lo = map_bound(iv.lower, f), hi = map_bound(iv.upper, f);
    r.intervals.push_back(f.slope > 0 ? IntervalAtom{lo, hi} : IntervalAtom{hi, lo});
  }
  for (const auto& p : x.points) r.points.push_back({f.at(p.value)});
  for (const auto& s : x.schemas) {
    MobiusSeq l = s.left.affine(f.slope, f.offset), rr = s.right.affine(f.slope, f.offset);
    if (s.kind == SchemaAtom::Kind::PointFamily)
      r.schemas.push_back(SchemaAtom::points(l, s.start));
    else if (f.slope > 0)
      r.schemas.push_back(SchemaAtom::intervals(l, s.leftClosed, rr, s.rightClosed, s.start));
    else
      r.schemas.push_back(SchemaAtom::intervals(rr, s.rightClosed, l, s.leftClosed, s.start));
  }
  return normalize(r);
}

RealSet pushforward(const PLMap& m, const RealSet& x) {
  RealSet raw;
  for (std::size_t i = 0; i < m.pieces().size(); ++i) {
    RealSet part = m.pieces().size() == 1 ? x : intersect(x, RealSet::of(m.domain(i)));
    raw.append(affine_image(part, m.pieces()[i]));
  }
  return normalize(raw);
}

namespace {

ExtremeValue sup_of(const RealSet& y) {
  ExtremeValue out;
  std::optional<Rational> best;
  auto consider = [&](const Rational& v) {
    if (!best || v > *best) best = v;
  };
  for (const auto& iv : y.intervals) {
    if (iv.upper.kind == Bound::Kind::PosInf) {
      out.infinite = true;
      out.unboundedInterval = true;
      return out;
    }
    consider(iv.upper.value);
  }
  for (const auto& p : y.points) consider(p.value);
  for (const auto& s : y.schemas) consider(s.side() > 0 ? s.right.value(s.start) : s.limit());
  out.value = *best;
  out.attained = member(y, out.value);
  if (!out.attained) {
    for (const auto& iv : y.intervals) {
      if (iv.upper.value != out.value) continue;
      out.intervalContained = true;
      out.epsilon = iv.lower.finite() ? out.value - iv.lower.value : Rational(1);
    }
    // The first piece of an upward schema can also end at the sup.
    for (const auto& s : y.schemas) {
      if (out.intervalContained || s.kind != SchemaAtom::Kind::IntervalFamily || s.side() < 0) continue;
      IntervalAtom first = s.piece(s.start);
      if (first.upper.value != out.value) continue;
      out.intervalContained = true;
      out.epsilon = first.upper.value - first.lower.value;
    }
  }
  return out;
}

}  // namespace

ExtremumReport extremum_report(const PLMap& m, const RealSet& x) {
  if (x.empty()) throw std::invalid_argument("extremum_report needs a nonempty set");
  RealSet y = pushforward(m, x);
  ExtremumReport r;
  r.sup = sup_of(y);
  r.inf = sup_of(affine_image(y, {-1, 0}));
  r.inf.value = -r.inf.value;
  return r;
}

}  // namespace realtopo
