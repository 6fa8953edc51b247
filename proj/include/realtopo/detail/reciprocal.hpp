#pragma once

// Reciprocal-distance coordinates: near an accumulation point L approached
// from side s, a real x is described by u = 1 / |x - L|. A Möbius endpoint
// L + K / (n + d) becomes the arithmetic progression (n + d) / |K|, so every
// schema turns into intervals [lo(n), hi(n)] with lo, hi linear in n, and
// finite unions of schemas sharing (L, s) become periodic in u.

#include <cstdint>
#include <optional>
#include <vector>

#include "realtopo/realset.hpp"

namespace realtopo::detail {

struct USchema {
  Rational limit;
  int side = 1;
  Rational loSlope, loOffset;
  bool loClosed = true;
  Rational hiSlope, hiOffset;
  bool hiClosed = true;
  std::int64_t start = 1;

  Rational lo(std::int64_t n) const { return loSlope * n + loOffset; }
  Rational hi(std::int64_t n) const { return hiSlope * n + hiOffset; }
  bool periodic() const { return loSlope == hiSlope; }
};

/// Validates the schema invariants; throws InvalidSchema.
USchema to_u(const SchemaAtom& s);
SchemaAtom from_u(const USchema& u);

IntervalAtom u_span_to_x(const Rational& limit, int side, const IntervalAtom& uspan);
IntervalAtom piece_x(const USchema& u, std::int64_t n);

/// Union of spans as sorted, disjoint, non-adjacent spans (points kept as
/// degenerate closed spans).
std::vector<IntervalAtom> sweep(std::vector<IntervalAtom> spans);
/// Complement in R of swept spans.
std::vector<IntervalAtom> complement_spans(const std::vector<IntervalAtom>& swept);

/// Index n >= start whose piece contains x, if any.
std::optional<std::int64_t> piece_index_containing(const USchema& u, const Rational& x);

/// Structure of a set in a one-sided neighborhood of an accumulation point
/// that is not fully covered: for u > cut the set coincides with the periodic
/// pattern whose components in [cut, cut + period) are listed.
struct KeyPattern {
  Rational limit;
  int side = 1;
  Rational period;
  Rational cut;
  std::vector<IntervalAtom> window;  // u-coordinates
};

struct Decomposition {
  std::vector<IntervalAtom> finite;  // swept, x-coordinates
  std::vector<KeyPattern> keys;
};

Decomposition decompose(const RealSet& raw);

}  // namespace realtopo::detail
