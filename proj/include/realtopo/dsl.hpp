#pragma once

// Text format for RealSet expressions:
//
//   expr   := term ('|' term)* | 'empty'
//   term   := interval | point | family
//   interval := ('(' | '[') bound ',' bound (')' | ']')
//   bound  := rational | '-inf' | 'inf'
//   point  := '{' rational (',' rational)* '}'
//   family := 'fam' '(' 'n' '>=' int ')' '{' piece '}'
//   piece  := ('(' | '[') seq ',' seq (')' | ']') | '{' seq '}'
//   seq    := 'mob' '(' r ',' r ',' r ',' r ')' | sum of a constant and one c/(n+k) term
//
// e.g. "{0} | fam(n>=1){ (1/(n+1), 1/n) }".

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "realtopo/realset.hpp"

namespace realtopo {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : std::runtime_error("at " + std::to_string(position) + ": " + what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

using DslTerm = std::variant<IntervalAtom, PointAtom, SchemaAtom>;

struct DslExpression {
  std::string source;
  std::vector<DslTerm> terms;

  /// Raw (unnormalized) set.
  RealSet to_set() const;
};

DslExpression parse_dsl(std::string_view text);
MobiusSeq parse_sequence(std::string_view text);
/// Shorthand for parse_dsl(text).to_set().
RealSet parse_set(std::string_view text);

std::string print(const RealSet& x);
std::string print(const IntervalAtom& iv);
std::string print(const SchemaAtom& s);
std::string print(const MobiusSeq& m);

}  // namespace realtopo
