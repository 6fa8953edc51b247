#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "realtopo/rational.hpp"
#include "realtopo/sequence.hpp"

namespace realtopo {

/// Raised when a schema violates its own invariants (e.g. left >= right).
class InvalidSchema : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the engine cannot certify a canonical form. Never a wrong answer.
class Unnormalizable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Bound {
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

  Kind kind = Kind::Finite;
  Rational value;
  bool closed = false;

  static Bound neg_inf() { return {Kind::NegInf, 0, false}; }
  static Bound pos_inf() { return {Kind::PosInf, 0, false}; }
  static Bound at(Rational v, bool closed) { return {Kind::Finite, std::move(v), closed}; }
  bool finite() const { return kind == Kind::Finite; }

  friend bool operator==(const Bound& x, const Bound& y) {
    if (x.kind != y.kind) return false;
    return !x.finite() || (x.value == y.value && x.closed == y.closed);
  }
};

/// lower < upper in a normalized set; internal sweeps also use the degenerate
/// closed form [p, p] for points.
struct IntervalAtom {
  Bound lower;
  Bound upper;

  static IntervalAtom real_line() { return {Bound::neg_inf(), Bound::pos_inf()}; }
  static IntervalAtom closed(Rational lo, Rational hi) { return {Bound::at(std::move(lo), true), Bound::at(std::move(hi), true)}; }
  static IntervalAtom open(Rational lo, Rational hi) { return {Bound::at(std::move(lo), false), Bound::at(std::move(hi), false)}; }
  static IntervalAtom point(const Rational& p) { return closed(p, p); }

  bool empty() const;
  bool degenerate() const { return lower.finite() && upper.finite() && lower.value == upper.value; }
  bool contains(const Rational& q) const;
  friend bool operator==(const IntervalAtom& x, const IntervalAtom& y) {
    return x.lower == y.lower && x.upper == y.upper;
  }
};

struct PointAtom {
  Rational value;
  friend bool operator==(const PointAtom& x, const PointAtom& y) { return x.value == y.value; }
};

/// Infinite family of intervals or points indexed by n >= start, endpoints
/// given by Möbius sequences sharing one finite limit and approaching it from
/// one side.
struct SchemaAtom {
  enum class Kind : std::uint8_t { IntervalFamily, PointFamily };

  Kind kind = Kind::PointFamily;
  MobiusSeq left;
  bool leftClosed = true;
  MobiusSeq right;  // equals `left` for point families
  bool rightClosed = true;
  std::int64_t start = 1;

  static SchemaAtom points(MobiusSeq seq, std::int64_t start = 1);
  static SchemaAtom intervals(MobiusSeq left, bool leftClosed, MobiusSeq right, bool rightClosed, std::int64_t start = 1);

  Rational limit() const { return left.limit(); }
  /// +1 when pieces lie above the limit, -1 below.
  int side() const;
  IntervalAtom piece(std::int64_t n) const;

  friend bool operator==(const SchemaAtom& x, const SchemaAtom& y) {
    return x.kind == y.kind && x.left == y.left && x.leftClosed == y.leftClosed && x.right == y.right &&
           x.rightClosed == y.rightClosed && x.start == y.start;
  }
};

/// Finite union of atoms and schema families. Operations below expect (and
/// return) normal form unless stated otherwise.
struct RealSet {
  std::vector<IntervalAtom> intervals;
  std::vector<PointAtom> points;
  std::vector<SchemaAtom> schemas;
  bool normalForm = false;

  static RealSet empty_set();
  static RealSet real_line();
  static RealSet of(const IntervalAtom& iv);
  static RealSet of_point(const Rational& p);

  bool empty() const { return intervals.empty() && points.empty() && schemas.empty(); }
  /// Concatenate atoms without normalizing.
  RealSet& append(const RealSet& other);

  friend bool operator==(const RealSet& x, const RealSet& y) {
    return x.intervals == y.intervals && x.points == y.points && x.schemas == y.schemas;
  }
};

struct Predicates {
  bool bounded = false;
  bool closed = false;
  bool compact = false;
};

/// One member of a ComponentList: either a finite component or a schema whose
/// every piece is a component.
struct ComponentFamily {
  SchemaAtom schema;
  bool singletonPieces = false;
  bool leftClosed = false;
  bool rightClosed = false;
};

struct ComponentList {
  std::vector<std::variant<IntervalAtom, PointAtom>> finiteComponents;
  std::vector<ComponentFamily> schemaFamilies;

  std::size_t size_hint() const { return finiteComponents.size() + schemaFamilies.size(); }
};

RealSet normalize(const RealSet& raw);
bool member(const RealSet& x, const Rational& q);
RealSet closure(const RealSet& x);
RealSet interior(const RealSet& x);
ComponentList components(const RealSet& x);
RealSet set_union(const RealSet& x, const RealSet& y);
RealSet complement(const RealSet& x);
RealSet complement_in(const RealSet& x, const IntervalAtom& window);
RealSet intersect(const RealSet& x, const RealSet& y);
bool semantic_subset(const RealSet& x, const RealSet& y);
bool semantic_equal(const RealSet& x, const RealSet& y);
Predicates predicates(const RealSet& x);
std::vector<Rational> local_connectedness_defects(const RealSet& y);

/// Extremes of a normalized set; nullopt when empty or unbounded on that side.
std::optional<Rational> supremum(const RealSet& x);
std::optional<Rational> infimum(const RealSet& x);

/// Distinct (limit, side) accumulation keys of a normalized set's schemas.
struct AccumulationKey {
  Rational limit;
  int side = 1;
  friend bool operator==(const AccumulationKey& a, const AccumulationKey& b) {
    return a.limit == b.limit && a.side == b.side;
  }
};
std::vector<AccumulationKey> accumulation_keys(const RealSet& x);

}  // namespace realtopo
