#pragma once

// JSON renderings of verdicts, witnesses and fuzz summaries.

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "realtopo/fuzz.hpp"
#include "realtopo/gcc.hpp"
#include "realtopo/planar.hpp"
#include "realtopo/surjection.hpp"

namespace realtopo {

using Json = nlohmann::ordered_json;

/// A requested witness does not exist for this set, or two deciders disagree.
class VerdictFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Keys: input, normalized, components, gcc, ccc, witness, closure, checks.
/// Throws ParseError, InvalidSchema, Unnormalizable, VerdictFailure.
Json analyze(std::string_view text);

enum class WitnessKind { Gcc, NonGcc, Ccc };
Json witness_report(std::string_view text, WitnessKind kind);

Json transversal_json(const Transversal& t);
Json selection_json(const SelectionSet& s);
Json cover_json(const RealSet& x, const DisjointOpenCover& cover);
Json alternating_json(const AlternatingWitness& w);

Json surjection_eval(std::string_view text, const Rational& a, const Rational& y);
Json surjection_preimage(std::string_view text, const Rational& target);
Json surjection_cantor(std::string_view text, const std::string& bits);

/// Throws UnsupportedConfig for the literal rule.
Json planar_report(const PlanarConfig& cfg, std::int64_t closureChecks);

Json fuzz_json(const FuzzSpec& spec, const FuzzSummary& s);

}  // namespace realtopo
