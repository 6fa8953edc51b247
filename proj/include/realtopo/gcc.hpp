#pragma once

// GCC / CCC deciders and the witnesses that back their verdicts.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "realtopo/realset.hpp"

namespace realtopo {

class NotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidCut : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Transversals

enum class SelectorPolicy : std::uint8_t { Midpoint, LeftmostProbe, SeededRandom };

struct Selector {
  SelectorPolicy policy = SelectorPolicy::Midpoint;
  std::uint64_t seed = 0;  // SeededRandom only
};

std::string to_string(SelectorPolicy p);

/// Points seq(n), n >= start, chosen inside the pieces of `host` (a schema of
/// the source set, same indexing).
struct SelectedFamily {
  RatSeq seq;
  std::int64_t start = 1;
  Rational limit;
  SchemaAtom host;
};

/// Finitely many points plus finitely many convergent point families. Midpoint
/// selections are rational of degree 2 in n, so this is not a RealSet.
struct SelectionSet {
  std::vector<Rational> points;
  std::vector<SelectedFamily> families;

  bool contains(const Rational& q) const;
  /// Bounded always; closed iff every family limit is contained.
  bool compact() const;
  std::vector<Rational> accumulation_points() const;
};

struct ComponentSelection {
  std::variant<IntervalAtom, PointAtom> component;
  std::vector<Rational> boundary;  // C minus its interior in R
  std::optional<Rational> interior;
};

struct FamilySelection {
  SchemaAtom schema;
  std::vector<RatSeq> boundary;  // closed endpoints, or the point itself
  std::optional<RatSeq> interior;
};

struct Transversal {
  Selector selector;
  SelectionSet set;
  std::vector<ComponentSelection> finite;
  std::vector<FamilySelection> families;
};

Transversal build_transversal(const RealSet& x, Selector selector = {});

/// Empty when every component satisfies the selection rules.
std::vector<std::string> transversal_violations(const RealSet& x, const Transversal& t);

struct GccVerdict {
  bool verdict = false;
  Transversal transversal;
};

GccVerdict decide_gcc_transversal(const RealSet& x, Selector selector = {});

// ---------------------------------------------------------------------------
// Alternating sequences

/// x_{2k} = even(k) in X, x_{2k-1} = odd(k) outside X, k >= 1, strictly
/// monotone, converging to `limit`.
struct AlternatingWitness {
  enum class Direction : std::uint8_t { Increasing, Decreasing };
  Direction direction = Direction::Decreasing;
  MobiusSeq evenTerms;
  MobiusSeq oddTerms;
  Rational limit;
  bool limitInX = false;
};

struct SequenceVerdict {
  bool verdict = false;
  std::optional<AlternatingWitness> witness;
};

SequenceVerdict decide_gcc_sequences(const RealSet& x);

/// Symbolic check of every witness invariant (for all k, not a sample).
bool verify_alternating(const RealSet& x, const AlternatingWitness& w);

// ---------------------------------------------------------------------------
// CCC

struct CccVerdict {
  bool verdict = false;
  std::optional<SelectionSet> witnessK;
};

CccVerdict decide_ccc(const RealSet& x);

struct KWitnessReport {
  bool compact = false;
  bool subset = false;
  bool meetsEveryComponent = false;
  bool ok() const { return compact && subset && meetsEveryComponent; }
};

KWitnessReport check_k_witness(const RealSet& x, const SelectionSet& k);

// ---------------------------------------------------------------------------
// Disjoint open covers

/// U_k = (lower(k), upper(k)) intersected with X, for k >= start.
struct CoverFamily {
  MobiusSeq lower;
  MobiusSeq upper;
  std::int64_t start = 1;
  /// A point of U_k for every k >= start, when known.
  std::optional<MobiusSeq> nonemptyWitness;

  SchemaAtom template_schema() const;
};

struct DisjointOpenCover {
  std::vector<RealSet> finiteMembers;
  std::vector<CoverFamily> familyMembers;
};

DisjointOpenCover witness_non_gcc_cover(const RealSet& x);

struct CoverIndex {
  bool family = false;
  std::size_t member = 0;
  std::int64_t index = 0;  // family members only
  friend bool operator==(const CoverIndex&, const CoverIndex&) = default;
};

struct CoverReport {
  bool covers = false;
  bool disjoint = false;
  bool openInX = false;
  bool infinitelyManyNonempty = false;
  std::optional<std::vector<CoverIndex>> finiteSubcover;
};

CoverReport verify_cover(const RealSet& x, const DisjointOpenCover& cover);

/// The member of a cover that contains q, if any.
std::optional<CoverIndex> locate_in_cover(const RealSet& x, const DisjointOpenCover& cover, const Rational& q);

/// Continuous X -> {1, 2, ...}: nonempty finite members get 1..m in order, then
/// family members are numbered by index (interleaved when there are several).
class SurjectionOntoN {
 public:
  /// Throws std::invalid_argument unless every family carries a
  /// nonemptiness witness.
  SurjectionOntoN(RealSet x, DisjointOpenCover cover);

  /// Throws std::domain_error when q is not in X.
  std::int64_t evaluate(const Rational& q) const;
  /// A point of X mapped to n.
  Rational point_with_value(std::int64_t n) const;
  /// Members mapped to n, as a set.
  RealSet preimage(std::int64_t n) const;

  const DisjointOpenCover& cover() const { return cover_; }

 private:
  RealSet x_;
  DisjointOpenCover cover_;
  std::vector<std::size_t> finiteOrder_;
};

SurjectionOntoN cover_to_surjection(const RealSet& x, const DisjointOpenCover& cover);

// ---------------------------------------------------------------------------
// Clopen chains

struct ChainEnd {
  enum class Kind : std::uint8_t { Infinite, Fixed, Moving };
  Kind kind = Kind::Infinite;
  Rational fixed;
  MobiusSeq moving;
  bool closed = false;

  static ChainEnd infinite() { return {}; }
  static ChainEnd at(Rational v, bool closed) { return {Kind::Fixed, std::move(v), {}, closed}; }
  static ChainEnd seq(MobiusSeq m, bool closed) { return {Kind::Moving, 0, std::move(m), closed}; }
};

/// F_n = X intersected with the window between lower(n) and upper(n), n >= start.
struct ClopenChain {
  ChainEnd lower;
  ChainEnd upper;
  std::int64_t start = 1;

  RealSet term(const RealSet& x, std::int64_t n) const;
};

struct ChainReport {
  bool decreasing = false;
  bool allClopen = false;
  bool allNonempty = false;
  std::int64_t checkedTerms = 0;
};

/// `decreasing` is certified for all n; clopenness and nonemptiness are
/// checked on the first `terms` terms.
ChainReport validate_chain(const RealSet& x, const ClopenChain& chain, std::int64_t terms = 32);

RealSet clopen_chain_intersection(const RealSet& x, const ClopenChain& chain);

/// True iff s is both open and closed in X (s must be a subset of X).
bool clopen_in(const RealSet& x, const RealSet& s);

std::pair<RealSet, RealSet> split_clopen(const RealSet& x, const Rational& c);

}  // namespace realtopo
