#pragma once

// Seeded random RealSets and the property battery run over them.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "realtopo/realset.hpp"

namespace realtopo {

/// A schema described by its shape in reciprocal coordinates: endpoints are
/// limit + side/(period*(n+s)) for s = far and s = far + width.
struct SchemaGene {
  Rational limit;
  int side = 1;
  Rational period = 1;
  bool points = false;
  Rational far = 0;
  Rational width = make_rational(1, 2);
  bool nearClosed = false;
  bool farClosed = false;
  std::int64_t start = 1;

  SchemaAtom schema() const;
};

struct FuzzCase {
  std::vector<IntervalAtom> intervals;
  std::vector<Rational> points;
  std::vector<SchemaGene> schemas;

  RealSet raw() const;
  std::string dsl() const;
};

struct FuzzSpec {
  std::uint64_t seed = 1;
  std::int64_t trials = 100;
  int minAtoms = 0;
  int maxAtoms = 3;
  int minSchemas = 0;
  int maxSchemas = 2;
  /// Endpoints and limits stay within [-magnitude, magnitude].
  int magnitude = 4;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t seed, std::int64_t index);

FuzzCase generate_case(const FuzzSpec& spec, std::uint64_t trialSeed);

/// Union of the closures of all components; schema families are closed
/// piece by piece, so a missing limit stays missing.
RealSet component_closure_union(const RealSet& x);

/// The corollary statements as implications on one normalized set:
/// GCC => closure(X) equals the union of component closures, and
/// GCC => R \ X is locally connected, bounded and R \ X locally connected => GCC.
bool corollary1_holds(const RealSet& x, bool gcc);
bool corollary2_holds(const RealSet& x, bool gcc);

/// Independent GCC deciders; mutation mode swaps in a broken one.
struct Deciders {
  std::function<bool(const RealSet&)> transversal;
  std::function<bool(const RealSet&)> sequences;

  static Deciders standard();
  /// The sequence decider ignores point families, so it calls fam{1/n} GCC.
  static Deciders mutated();
};

struct PropertyOutcome {
  std::string name;
  enum class Status : std::uint8_t { Pass, Fail, Skipped } status = Status::Pass;
  std::string detail;
};

struct BatteryOptions {
  int policySeeds = 10;
  int maps = 3;
  int cuts = 2;
  /// Only normalization and decider agreement.
  bool decidersOnly = false;
};

/// Runs every applicable check on a normalized set. `partner` feeds the
/// union check; `seed` drives the fuzzed maps, cuts and boundary points.
std::vector<PropertyOutcome> run_battery(const RealSet& x, const std::optional<RealSet>& partner,
                                         std::uint64_t seed, const Deciders& deciders,
                                         const BatteryOptions& options = {});

/// Smallest case found by dropping atoms, then schemas, then simplifying
/// coefficients, for which `fails` still holds.
FuzzCase shrink_case(const FuzzCase& c, const std::function<bool(const FuzzCase&)>& fails);

struct PropertyTally {
  std::int64_t pass = 0;
  std::int64_t fail = 0;
  std::int64_t skipped = 0;
};

struct FuzzFailure {
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  std::string property;
  std::string detail;
  std::string input;
  std::string shrunk;
};

struct FuzzSummary {
  std::int64_t trials = 0;
  std::int64_t passed = 0;
  std::int64_t failed = 0;
  std::int64_t unnormalizable = 0;
  std::int64_t gcc = 0;
  std::int64_t nonGcc = 0;
  std::map<std::string, PropertyTally> properties;
  std::vector<FuzzFailure> failures;
};

struct FuzzRunOptions {
  bool mutate = false;
  unsigned threads = 0;  // 0: hardware concurrency
  BatteryOptions battery;
};

FuzzSummary fuzz_run(const FuzzSpec& spec, const FuzzRunOptions& options = {});

}  // namespace realtopo
