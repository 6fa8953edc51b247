#pragma once

// A continuous surjection A x R -> X for GCC sets X, where A is the compact
// transversal, together with the Cantor-set stage C -> A.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "realtopo/gcc.hpp"

namespace realtopo {

class NotGcc : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotMember : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotCompact : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Continuous map R onto one component, given by a piecewise-rational formula.
struct ComponentSurjection {
  enum class Kind : std::uint8_t {
    Open,           // (a,b)
    Closed,         // [a,b]
    ClosedOpen,     // [a,b)
    OpenClosed,     // (a,b]
    OpenRayUp,      // (a,inf)
    ClosedRayUp,    // [a,inf)
    OpenRayDown,    // (-inf,b)
    ClosedRayDown,  // (-inf,b]
    FullLine,
    Singleton,      // {a}
  };
  Kind kind = Kind::Singleton;
  Rational a, b;

  /// Throws std::invalid_argument for a degenerate interval.
  static ComponentSurjection onto(const IntervalAtom& component);

  Rational eval(const Rational& y) const;
  /// Some y with eval(y) == t; t must lie in image().
  Rational invert(const Rational& t) const;
  IntervalAtom image() const;
};

std::string to_string(ComponentSurjection::Kind k);

class SurjectionPlan {
 public:
  /// Throws NotGcc.
  explicit SurjectionPlan(const RealSet& x);

  const RealSet& space() const { return x_; }
  const Transversal& domain() const { return t_; }

  /// Throws std::domain_error if a is not in A.
  Rational eval(const Rational& a, const Rational& y) const;
  /// Rule attached to a point of A; nullopt for points mapped constantly.
  std::optional<ComponentSurjection> rule_at(const Rational& a) const;
  /// (a, y) with eval(a, y) == target. Throws NotMember.
  std::pair<Rational, Rational> solve_preimage(const Rational& target) const;

 private:
  RealSet x_;
  Transversal t_;

  enum class Role : std::uint8_t { Constant, Interior };
  struct Located {
    Role role;
    IntervalAtom component;
  };
  std::optional<Located> locate(const Rational& a) const;
};

SurjectionPlan build_surjection(const RealSet& x);
Rational eval_surjection(const SurjectionPlan& plan, const Rational& a, const Rational& y);
std::pair<Rational, Rational> solve_preimage(const SurjectionPlan& plan, const Rational& target);

struct GridSpec {
  std::vector<Rational> ys{-8, -1, Rational(-1, 3), 0, Rational(1, 2), 1, 7};
  std::vector<std::int64_t> familyIndices{0, 1, 2, 9, 99, 999};  // offsets from each family's start
  int halvings = 4;
  /// Initial radius is epsilon / deltaDivisor.
  long deltaDivisor = 16;
};

struct ContinuityViolation {
  Rational a, y;
  Rational otherA, otherY;
  Rational gap;
};

/// Points (a, y) on the grid where no radius in the halving schedule keeps all
/// sampled neighbours (a', y') within epsilon.
std::vector<ContinuityViolation> continuity_samples(const SurjectionPlan& plan, const Rational& epsilon,
                                                    const GridSpec& grid = {});

// ---------------------------------------------------------------------------
// Cantor stage

/// The operations the Cantor stage needs from a compact set.
struct CompactView {
  std::function<bool(const Rational&)> contains;
  /// Largest / smallest point of the set inside [lo, hi], if any.
  std::function<std::optional<Rational>(const Rational&, const Rational&)> max_in;
  std::function<std::optional<Rational>(const Rational&, const Rational&)> min_in;
  Rational lo, hi;  // hull
};

/// Throws NotCompact.
CompactView compact_view(const RealSet& a);
CompactView compact_view(const SelectionSet& a);

/// Brackets after 0, 1, ..., bits.size() bits; each is the hull of the part
/// of A reached so far. Every character of `bits` must be '0' or '1'.
std::vector<IntervalAtom> cantor_brackets(const CompactView& a, const std::string& bits);
IntervalAtom cantor_eval(const RealSet& a, const std::string& bits);

/// A bit path of the given length whose brackets all contain p (p in A).
std::string cantor_address(const CompactView& a, const Rational& p, int depth);

}  // namespace realtopo
