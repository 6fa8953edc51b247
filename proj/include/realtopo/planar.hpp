#pragma once

// The planar space X = {x_n} u (union of A_n) u {(0,0)}, where x_n = (1, 1/n)
// and A_n is the union of the rows [0,1] x {h(n,m)} for m >= n+1. X is GCC
// but not CCC. Everything here is exact rational arithmetic.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "realtopo/rational.hpp"

namespace realtopo {

enum class HeightRule : std::uint8_t {
  PaperLiteral,   // h(n,m) = 1/n + 1/m
  CollisionFree,  // h(n,m) = 1/(n + 1/m) = m/(nm + 1)
};

std::string to_string(HeightRule rule);

struct PlanarConfig {
  HeightRule heightRule = HeightRule::CollisionFree;
  std::int64_t enumerationBound = 50;

  /// Throws std::invalid_argument when enumerationBound < 1.
  void validate() const;
};

struct PlanarPoint {
  Rational x;
  Rational y;
};

Rational row_height(HeightRule rule, std::int64_t n, std::int64_t m);

/// Row index (n, m) with m >= n+1 whose height is y, if any. Under the
/// literal rule a height can belong to several rows; the one with the
/// smallest n is returned.
struct RowIndex {
  std::int64_t n = 0;
  std::int64_t m = 0;
};
std::vector<RowIndex> rows_at_height(HeightRule rule, const Rational& y);

bool member_planar(const PlanarConfig& cfg, const PlanarPoint& p);

struct HeightCollision {
  std::int64_t n = 0;  // x_n sits on the row
  std::int64_t k = 0;
  std::int64_t m = 0;
  bool operator==(const HeightCollision&) const = default;
};

/// Triples with k < m <= bound and h(k,m) = 1/n.
std::vector<HeightCollision> detect_height_collisions(const PlanarConfig& cfg, std::int64_t bound);

/// Smallest m >= n+1 with |h(n,m) - 1/n| < 1/t.
std::int64_t closure_witness(HeightRule rule, std::int64_t n, const Integer& t);

/// Checks x_n in closure(A_n): for a ladder of epsilons 1/t the witness row
/// is in A_n, (1, h) is a member, and the gap is below epsilon. The gap is
/// also checked to shrink strictly with m.
bool check_xn_in_closure_An(const PlanarConfig& cfg, std::int64_t n);

/// Components of the truncation: origin, x_1..x_B and rows with n < m <= B.
std::int64_t truncated_component_count(const PlanarConfig& cfg);

struct TraceStep {
  std::string claim;
  std::string detail;
  bool ok = false;
};

struct FixtureVerdict {
  bool gcc = false;
  bool ccc = false;
  std::vector<TraceStep> cccTrace;
  std::vector<TraceStep> gccTrace;
};

class UnsupportedConfig : public std::runtime_error {
 public:
  UnsupportedConfig(const std::string& what, std::vector<HeightCollision> collisions)
      : std::runtime_error(what), collisions_(std::move(collisions)) {}
  const std::vector<HeightCollision>& collisions() const { return collisions_; }

 private:
  std::vector<HeightCollision> collisions_;
};

/// Verdicts with their supporting trace. The GCC half is a bounded check over
/// covers built from origin balls of radius 1/t, tails of A_k and single rows.
/// Throws UnsupportedConfig under the literal height rule, and
/// std::logic_error if a trace step fails.
FixtureVerdict fixture_verdicts(const PlanarConfig& cfg);

}  // namespace realtopo
