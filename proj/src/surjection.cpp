#include "realtopo/surjection.hpp"

#include <algorithm>

#include "realtopo/detail/reciprocal.hpp"

namespace realtopo {

using Kind = ComponentSurjection::Kind;

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Open:
      return "open";
    case Kind::Closed:
      return "closed";
    case Kind::ClosedOpen:
      return "closed-open";
    case Kind::OpenClosed:
      return "open-closed";
    case Kind::OpenRayUp:
      return "open-ray-up";
    case Kind::ClosedRayUp:
      return "closed-ray-up";
    case Kind::OpenRayDown:
      return "open-ray-down";
    case Kind::ClosedRayDown:
      return "closed-ray-down";
    case Kind::FullLine:
      return "full-line";
    case Kind::Singleton:
      return "singleton";
  }
  return "?";
}

ComponentSurjection ComponentSurjection::onto(const IntervalAtom& c) {
  ComponentSurjection g;
  if (c.degenerate()) {
    g.kind = Kind::Singleton;
    g.a = g.b = c.lower.value;
    return g;
  }
  if (c.empty()) throw std::invalid_argument("no surjection onto an empty component");
  bool lo = c.lower.finite(), hi = c.upper.finite();
  if (lo) g.a = c.lower.value;
  if (hi) g.b = c.upper.value;
  if (lo && hi) {
    g.kind = c.lower.closed ? (c.upper.closed ? Kind::Closed : Kind::ClosedOpen)
                            : (c.upper.closed ? Kind::OpenClosed : Kind::Open);
  } else if (lo) {
    g.kind = c.lower.closed ? Kind::ClosedRayUp : Kind::OpenRayUp;
  } else if (hi) {
    g.kind = c.upper.closed ? Kind::ClosedRayDown : Kind::OpenRayDown;
  } else {
    g.kind = Kind::FullLine;
  }
  return g;
}

Rational ComponentSurjection::eval(const Rational& y) const {
  const Rational ay = abs(y);
  switch (kind) {
    case Kind::Open:
      return (a + b) / 2 + (b - a) / 2 * y / (1 + ay);
    case Kind::Closed: {
      Rational v = a + (b - a) * (y + 1) / 2;
      return min_of(b, max_of(a, v));
    }
    case Kind::ClosedOpen:
      return a + (b - a) * ay / (1 + ay);
    case Kind::OpenClosed:
      return b - (b - a) * ay / (1 + ay);
    case Kind::OpenRayUp:
      return y <= 0 ? Rational(a + 1 / (1 - y)) : Rational(a + 1 + y);
    case Kind::ClosedRayUp:
      return a + max_of(0, y);
    case Kind::OpenRayDown:
      return y >= 0 ? Rational(b - 1 / (1 + y)) : Rational(b - 1 + y);
    case Kind::ClosedRayDown:
      return b + min_of(0, y);
    case Kind::FullLine:
      return y;
    case Kind::Singleton:
      return a;
  }
  return a;
}

Rational ComponentSurjection::invert(const Rational& t) const {
  switch (kind) {
    case Kind::Open: {
      Rational s = (2 * t - a - b) / (b - a);
      return s / (1 - abs(s));
    }
    case Kind::Closed:
      return 2 * (t - a) / (b - a) - 1;
    case Kind::ClosedOpen: {
      Rational s = (t - a) / (b - a);
      return s / (1 - s);
    }
    case Kind::OpenClosed: {
      Rational s = (b - t) / (b - a);
      return s / (1 - s);
    }
    case Kind::OpenRayUp:
      return t >= a + 1 ? Rational(t - a - 1) : Rational(1 - 1 / (t - a));
    case Kind::ClosedRayUp:
      return t - a;
    case Kind::OpenRayDown:
      return t <= b - 1 ? Rational(t - b + 1) : Rational(1 / (b - t) - 1);
    case Kind::ClosedRayDown:
      return t - b;
    case Kind::FullLine:
      return t;
    case Kind::Singleton:
      return 0;
  }
  return 0;
}

IntervalAtom ComponentSurjection::image() const {
  switch (kind) {
    case Kind::Open:
      return IntervalAtom::open(a, b);
    case Kind::Closed:
      return IntervalAtom::closed(a, b);
    case Kind::ClosedOpen:
      return {Bound::at(a, true), Bound::at(b, false)};
    case Kind::OpenClosed:
      return {Bound::at(a, false), Bound::at(b, true)};
    case Kind::OpenRayUp:
      return {Bound::at(a, false), Bound::pos_inf()};
    case Kind::ClosedRayUp:
      return {Bound::at(a, true), Bound::pos_inf()};
    case Kind::OpenRayDown:
      return {Bound::neg_inf(), Bound::at(b, false)};
    case Kind::ClosedRayDown:
      return {Bound::neg_inf(), Bound::at(b, true)};
    case Kind::FullLine:
      return IntervalAtom::real_line();
    case Kind::Singleton:
      return IntervalAtom::point(a);
  }
  return IntervalAtom::point(a);
}

// ---------------------------------------------------------------------------

namespace {

bool is_value_of(const RatSeq& seq, std::int64_t start, const Rational& q, std::int64_t* index = nullptr) {
  auto idx = seq.indices_of(q, start);
  if (idx.empty()) return false;
  if (index) *index = idx.front();
  return true;
}

// Indices n >= start with seq(n) in [lo, hi], for a sequence strictly
// monotone toward `limit` (decreasing when `side` > 0).
struct IndexRange {
  std::int64_t first = 0;
  std::optional<std::int64_t> last;  // nullopt: unbounded
};

constexpr std::int64_t kIndexCap = std::int64_t{1} << 60;

// First n >= start with pred(n); pred is monotone and known to become true.
template <class Pred>
std::int64_t first_true(std::int64_t start, Pred pred) {
  if (pred(start)) return start;
  std::int64_t lo = start, step = 1;  // pred(lo) false
  for (;;) {
    std::int64_t probe = start + step;
    if (probe > kIndexCap) throw std::overflow_error("index search ran away");
    if (pred(probe)) {
      std::int64_t hi = probe;
      while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        (pred(mid) ? hi : lo) = mid;
      }
      return hi;
    }
    lo = probe;
    step *= 2;
  }
}

std::optional<IndexRange> indices_within(const SelectedFamily& f, const Rational& lo, const Rational& hi) {
  const int side = f.host.side();
  const Rational& limit = f.limit;
  auto g = [&](std::int64_t n) -> Rational { return f.seq.value(n); };
  IndexRange r;
  if (side > 0) {
    if (!(limit < hi) && !(g(f.start) <= hi)) return std::nullopt;
    r.first = first_true(f.start, [&](std::int64_t n) { return g(n) <= hi; });
    if (!(limit >= lo)) r.last = first_true(f.start, [&](std::int64_t n) { return g(n) < lo; }) - 1;
  } else {
    if (!(limit > lo) && !(g(f.start) >= lo)) return std::nullopt;
    r.first = first_true(f.start, [&](std::int64_t n) { return g(n) >= lo; });
    if (!(limit <= hi)) r.last = first_true(f.start, [&](std::int64_t n) { return g(n) > hi; }) - 1;
  }
  if (r.last && *r.last < r.first) return std::nullopt;
  return r;
}

}  // namespace

SurjectionPlan::SurjectionPlan(const RealSet& x) : x_(x) {
  GccVerdict v = decide_gcc_transversal(x);
  if (!v.verdict) throw NotGcc("set is not GCC; no surjection from a compact times a connected space");
  t_ = std::move(v.transversal);
}

std::optional<SurjectionPlan::Located> SurjectionPlan::locate(const Rational& a) const {
  for (const auto& sel : t_.finite) {
    if (std::find(sel.boundary.begin(), sel.boundary.end(), a) != sel.boundary.end())
      return Located{Role::Constant, IntervalAtom::point(a)};
    if (sel.interior && *sel.interior == a)
      return Located{Role::Interior, std::get<IntervalAtom>(sel.component)};
  }
  for (const auto& sel : t_.families) {
    const SchemaAtom& s = sel.schema;
    for (const auto& b : sel.boundary)
      if (is_value_of(b, s.start, a)) return Located{Role::Constant, IntervalAtom::point(a)};
    std::int64_t n = 0;
    if (sel.interior && is_value_of(*sel.interior, s.start, a, &n)) return Located{Role::Interior, s.piece(n)};
  }
  return std::nullopt;
}

Rational SurjectionPlan::eval(const Rational& a, const Rational& y) const {
  auto loc = locate(a);
  if (!loc) throw std::domain_error(to_string(a) + " is not in the transversal");
  if (loc->role == Role::Constant) return a;
  return ComponentSurjection::onto(loc->component).eval(y);
}

std::optional<ComponentSurjection> SurjectionPlan::rule_at(const Rational& a) const {
  auto loc = locate(a);
  if (!loc) throw std::domain_error(to_string(a) + " is not in the transversal");
  if (loc->role == Role::Constant) return std::nullopt;
  return ComponentSurjection::onto(loc->component);
}

std::pair<Rational, Rational> SurjectionPlan::solve_preimage(const Rational& target) const {
  if (!member(x_, target)) throw NotMember(to_string(target) + " is not in X");
  for (const auto& sel : t_.finite) {
    bool inside = std::visit(
        [&](const auto& c) {
          if constexpr (std::is_same_v<std::decay_t<decltype(c)>, PointAtom>)
            return c.value == target;
          else
            return c.contains(target);
        },
        sel.component);
    if (!inside) continue;
    if (std::find(sel.boundary.begin(), sel.boundary.end(), target) != sel.boundary.end()) return {target, 0};
    return {*sel.interior, ComponentSurjection::onto(std::get<IntervalAtom>(sel.component)).invert(target)};
  }
  for (const auto& sel : t_.families) {
    const SchemaAtom& s = sel.schema;
    auto n = detail::piece_index_containing(detail::to_u(s), target);
    if (!n) continue;
    IntervalAtom piece = s.piece(*n);
    bool boundary = s.kind == SchemaAtom::Kind::PointFamily || (piece.lower.closed && piece.lower.value == target) ||
                    (piece.upper.closed && piece.upper.value == target);
    if (boundary) return {target, 0};
    return {sel.interior->value(*n), ComponentSurjection::onto(piece).invert(target)};
  }
  throw std::logic_error("member of X outside every component");
}

SurjectionPlan build_surjection(const RealSet& x) { return SurjectionPlan(x); }

Rational eval_surjection(const SurjectionPlan& plan, const Rational& a, const Rational& y) { return plan.eval(a, y); }

std::pair<Rational, Rational> solve_preimage(const SurjectionPlan& plan, const Rational& target) {
  return plan.solve_preimage(target);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Rational> transversal_samples(const SelectionSet& a, const GridSpec& grid) {
  std::vector<Rational> out = a.points;
  for (const auto& f : a.families) {
    for (auto off : grid.familyIndices) out.push_back(f.seq.value(f.start + off));
    out.push_back(f.limit);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Rational> neighbours(const SelectionSet& a, const Rational& centre, const Rational& radius) {
  const Rational lo = centre - radius, hi = centre + radius;
  std::vector<Rational> out;
  for (const auto& p : a.points)
    if (lo <= p && p <= hi) out.push_back(p);
  for (const auto& f : a.families) {
    auto r = indices_within(f, lo, hi);
    if (!r) continue;
    std::vector<std::int64_t> picks{r->first, r->first + 1, r->first + 2};
    if (r->last) {
      picks.push_back(*r->last);
      picks.push_back(r->first + (*r->last - r->first) / 2);
    } else {
      for (std::int64_t far : {10, 1000, 1000000}) picks.push_back(r->first + far);
    }
    for (auto n : picks)
      if (!r->last || n <= *r->last) out.push_back(f.seq.value(n));
  }
  return out;
}

}  // namespace

std::vector<ContinuityViolation> continuity_samples(const SurjectionPlan& plan, const Rational& epsilon,
                                                    const GridSpec& grid) {
  std::vector<ContinuityViolation> out;
  const SelectionSet& a = plan.domain().set;
  for (const auto& point : transversal_samples(a, grid)) {
    for (const auto& y : grid.ys) {
      const Rational base = plan.eval(point, y);
      Rational delta = epsilon / grid.deltaDivisor;
      std::optional<ContinuityViolation> worst;
      bool settled = false;
      for (int i = 0; i <= grid.halvings && !settled; ++i, delta /= 2) {
        worst.reset();
        for (const auto& other : neighbours(a, point, delta)) {
          for (const Rational& dy : std::vector<Rational>{-delta, -delta / 2, 0, delta / 2, delta}) {
            Rational gap = abs(plan.eval(other, y + dy) - base);
            if (gap >= epsilon && (!worst || gap > worst->gap)) worst = ContinuityViolation{point, y, other, y + dy, gap};
          }
        }
        settled = !worst;
      }
      if (!settled) out.push_back(*worst);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

CompactView compact_view(const RealSet& a) {
  if (a.empty() || !predicates(a).compact) throw NotCompact("Cantor stage needs a nonempty compact set");
  CompactView v;
  v.contains = [a](const Rational& q) { return member(a, q); };
  v.max_in = [a](const Rational& lo, const Rational& hi) {
    return supremum(intersect(a, RealSet::of(IntervalAtom::closed(lo, hi))));
  };
  v.min_in = [a](const Rational& lo, const Rational& hi) {
    return infimum(intersect(a, RealSet::of(IntervalAtom::closed(lo, hi))));
  };
  v.lo = *infimum(a);
  v.hi = *supremum(a);
  return v;
}

CompactView compact_view(const SelectionSet& a) {
  if ((a.points.empty() && a.families.empty()) || !a.compact())
    throw NotCompact("Cantor stage needs a nonempty compact set");
  CompactView v;
  v.contains = [a](const Rational& q) { return a.contains(q); };
  // Along a family the extremes in a window sit at the ends of its index
  // range, or at the limit, which belongs to the set because it is compact.
  v.max_in = [a](const Rational& lo, const Rational& hi) {
    std::optional<Rational> best;
    auto consider = [&](const Rational& q) {
      if (!best || q > *best) best = q;
    };
    for (const auto& p : a.points)
      if (lo <= p && p <= hi) consider(p);
    for (const auto& f : a.families) {
      auto r = indices_within(f, lo, hi);
      if (!r) continue;
      if (f.host.side() > 0)
        consider(f.seq.value(r->first));
      else if (r->last)
        consider(f.seq.value(*r->last));
      else
        consider(f.limit);
    }
    return best;
  };
  v.min_in = [a](const Rational& lo, const Rational& hi) {
    std::optional<Rational> best;
    auto consider = [&](const Rational& q) {
      if (!best || q < *best) best = q;
    };
    for (const auto& p : a.points)
      if (lo <= p && p <= hi) consider(p);
    for (const auto& f : a.families) {
      auto r = indices_within(f, lo, hi);
      if (!r) continue;
      if (f.host.side() < 0)
        consider(f.seq.value(r->first));
      else if (r->last)
        consider(f.seq.value(*r->last));
      else
        consider(f.limit);
    }
    return best;
  };
  std::vector<Rational> ends = a.points;
  for (const auto& f : a.families) {
    ends.push_back(f.seq.value(f.start));
    ends.push_back(f.limit);
  }
  v.lo = *std::min_element(ends.begin(), ends.end());
  v.hi = *std::max_element(ends.begin(), ends.end());
  return v;
}

namespace {

// Split point inside the middle half of [lo, hi]: the middle of the widest
// gap seen by seven probes there, or the centre when every probe is in A.
Rational split_point(const CompactView& a, const Rational& lo, const Rational& hi) {
  const Rational w = hi - lo;
  const Rational w1 = lo + w / 4, w2 = hi - w / 4;
  std::optional<std::pair<Rational, Rational>> best;
  for (int j = 1; j <= 7; ++j) {
    Rational q = w1 + (w2 - w1) * j / 8;
    if (a.contains(q)) continue;
    Rational g1 = max_of(*a.max_in(lo, q), w1), g2 = min_of(*a.min_in(q, hi), w2);
    if (!best || g2 - g1 > best->second - best->first) best = std::make_pair(g1, g2);
  }
  if (!best) return (lo + hi) / 2;
  return (best->first + best->second) / 2;
}

void check_bits(const std::string& bits) {
  if (bits.find_first_not_of("01") != std::string::npos) throw std::invalid_argument("bits must be 0/1");
}

}  // namespace

std::vector<IntervalAtom> cantor_brackets(const CompactView& a, const std::string& bits) {
  check_bits(bits);
  Rational lo = a.lo, hi = a.hi;
  std::vector<IntervalAtom> out{IntervalAtom::closed(lo, hi)};
  for (char bit : bits) {
    if (lo != hi) {
      Rational c = split_point(a, lo, hi);
      if (bit == '0')
        hi = *a.max_in(lo, c);
      else
        lo = *a.min_in(c, hi);
    }
    out.push_back(IntervalAtom::closed(lo, hi));
  }
  return out;
}

IntervalAtom cantor_eval(const RealSet& a, const std::string& bits) { return cantor_brackets(compact_view(a), bits).back(); }

std::string cantor_address(const CompactView& a, const Rational& p, int depth) {
  if (!a.contains(p)) throw NotMember(to_string(p) + " is not in A");
  std::string bits;
  Rational lo = a.lo, hi = a.hi;
  for (int i = 0; i < depth; ++i) {
    if (lo == hi) {
      bits.push_back('0');
      continue;
    }
    Rational c = split_point(a, lo, hi);
    if (p <= c) {
      bits.push_back('0');
      hi = *a.max_in(lo, c);
    } else {
      bits.push_back('1');
      lo = *a.min_in(c, hi);
    }
  }
  return bits;
}

}  // namespace realtopo
