#pragma once

// Continuous piecewise-affine maps R -> R and exact images of RealSets.

#include <optional>
#include <vector>

#include "realtopo/realset.hpp"

namespace realtopo {

struct AffinePiece {
  Rational slope;
  Rational offset;
  Rational at(const Rational& x) const { return slope * x + offset; }
  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

/// pieces[i] applies on [breakpoints[i-1], breakpoints[i]]; the first and last
/// pieces extend to -inf and +inf.
class PLMap {
 public:
  /// Throws std::invalid_argument unless breakpoints are strictly increasing,
  /// there is one more piece than breakpoints, and neighbours agree at every
  /// breakpoint.
  PLMap(std::vector<Rational> breakpoints, std::vector<AffinePiece> pieces);

  static PLMap affine(const Rational& slope, const Rational& offset);
  static PLMap identity() { return affine(1, 0); }
  /// x -> |x - center|
  static PLMap abs_around(const Rational& center);

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  /// Closed domain of piece i.
  IntervalAtom domain(std::size_t i) const;

 private:
  std::vector<Rational> breakpoints_;
  std::vector<AffinePiece> pieces_;
};

Rational eval_map(const PLMap& m, const Rational& q);

/// Image of x under y -> slope*y + offset; slope may be zero.
RealSet affine_image(const RealSet& x, const AffinePiece& f);

RealSet pushforward(const PLMap& m, const RealSet& x);

/// One side (sup or inf) of m(X).
struct ExtremeValue {
  bool infinite = false;
  Rational value;  // meaningless when infinite
  bool attained = false;
  /// Finite and not attained: (a - eps, a) (or (a, a + eps) for inf) lies in m(X).
  bool intervalContained = false;
  std::optional<Rational> epsilon;
  /// Infinite: m(X) contains an unbounded interval on that side.
  bool unboundedInterval = false;
};

struct ExtremumReport {
  ExtremeValue sup;
  ExtremeValue inf;
};

/// X must be nonempty.
ExtremumReport extremum_report(const PLMap& m, const RealSet& x);

}  // namespace realtopo
