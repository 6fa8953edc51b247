#include <gtest/gtest.h>

#include "oracle.hpp"
#include "realtopo/dsl.hpp"
#include "realtopo/realset.hpp"

using namespace realtopo;

namespace {

RealSet N(const char* text) { return normalize(parse_set(text)); }
std::string P(const RealSet& x) { return print(x); }
Rational Q(const char* text) { return parse_rational(text); }

const char* kExample = "{0} | fam(n>=1){ (1/(n+1), 1/n) }";

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(to_string(Q("6/4")), "3/2");
  EXPECT_EQ(to_string(Q("-2")), "-2");
  EXPECT_EQ(rational_lcm(Q("1/2"), Q("1/3")), Rational(1));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(Mobius, CanonicalScaling) {
  MobiusSeq m(0, 2, 2, 2);  // 1/(n+1)
  EXPECT_EQ(m, MobiusSeq::from_limit_form(0, 1, 1));
  EXPECT_EQ(m.value(1), Q("1/2"));
  EXPECT_EQ(m.limit(), 0);
  EXPECT_THROW(MobiusSeq(1, 0, 0, 1), std::invalid_argument);
}

TEST(Dsl, RoundTripsNormalForms) {
  for (const char* text : {"(0,2)", "{0} | fam(n>=1){ (1/(n+1), 1/n) }", "fam(n>=1){ {1/n} }", "(-inf,0] | [1,inf)",
                           "empty"}) {
    RealSet x = N(text);
    EXPECT_EQ(N(P(x).c_str()), x) << text;
  }
  EXPECT_THROW(parse_set("(0,"), ParseError);
  EXPECT_THROW(parse_set("[1,0]"), ParseError);
  EXPECT_THROW(parse_set("(0,1) (2,3)"), ParseError);
}

TEST(Normalize, SpecExamples) {
  EXPECT_EQ(P(N("(0,1) | (1/2, 2)")), "(0,2)");
  EXPECT_EQ(P(N("fam(n>=1){ [1/(n+1), 1/n] }")), "(0,1]");
  EXPECT_EQ(N("fam(n>=1){ (1/(n+1), 1/n) }"), N("fam(n>=1){ (1/(n+1), 1/n) }"));
  EXPECT_EQ(P(N("fam(n>=1){ (1/(n+1), 1/n) }")), "fam(n>=1){ (1/(n+1), 1/n) }");
}

TEST(Normalize, StartIndexPulledDown) {
  EXPECT_EQ(P(N("fam(n>=2){ {1/n} } | {1}")), "fam(n>=1){ {1/n} }");
  EXPECT_EQ(P(N("fam(n>=3){ {1/n} }")), "fam(n>=1){ {1/(n+2)} }");
}

TEST(Normalize, RejectsBadSchemas) {
  EXPECT_THROW(N("fam(n>=1){ (1/n, 1/(n+1)) }"), InvalidSchema);
  EXPECT_THROW(N("fam(n>=1){ (1/n, 1+1/n) }"), InvalidSchema);
}

TEST(Normalize, EvenOddSplitMerges) {
  // 1/(2n) and 1/(2n-1) together are 1/n
  RealSet u = set_union(N("fam(n>=1){ {mob(0,1,2,0)} }"), N("fam(n>=1){ {mob(0,1,2,-1)} }"));
  EXPECT_EQ(u, N("fam(n>=1){ {1/n} }"));
}

TEST(Member, SpecExamples) {
  RealSet x = N(kExample);
  EXPECT_FALSE(member(x, Q("1/2")));
  EXPECT_TRUE(member(x, Q("0")));
  EXPECT_TRUE(member(x, Q("2/5")));
  EXPECT_FALSE(member(x, Q("-1/5")));
  EXPECT_FALSE(member(x, Q("1")));
}

TEST(Closure, SpecExamples) {
  EXPECT_EQ(P(closure(N("(0,1)"))), "[0,1]");
  EXPECT_EQ(P(closure(N(kExample))), "[0,1]");
  EXPECT_EQ(closure(N("fam(n>=1){ {1/n} }")), N("{0} | fam(n>=1){ {1/n} }"));
}

TEST(Interior, SpecExamples) {
  EXPECT_EQ(P(interior(N("[0,1] | {2}"))), "(0,1)");
  EXPECT_EQ(P(interior(N("(0,1)"))), "(0,1)");
  EXPECT_EQ(P(interior(N("fam(n>=1){ [1/(n+1), 1/n] }"))), "(0,1)");
}

TEST(Components, SpecExamples) {
  ComponentList a = components(N("(0,1) | {5} | [7,8]"));
  EXPECT_EQ(a.finiteComponents.size(), 3u);
  EXPECT_TRUE(a.schemaFamilies.empty());
  ComponentList b = components(N(kExample));
  ASSERT_EQ(b.finiteComponents.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<PointAtom>(b.finiteComponents[0]));
  ASSERT_EQ(b.schemaFamilies.size(), 1u);
  EXPECT_FALSE(b.schemaFamilies[0].singletonPieces);
  EXPECT_FALSE(b.schemaFamilies[0].leftClosed);
  EXPECT_EQ(components(N("(0,2)")).finiteComponents.size(), 1u);
}

TEST(Union, SpecExamples) {
  EXPECT_EQ(P(set_union(N("(0,1)"), N("{1}"))), "(0,1]");
  EXPECT_EQ(set_union(N("fam(n>=1){ {1/n} }"), N("{0}")), N("{0} | fam(n>=1){ {1/n} }"));
  // The n = 1 point is 1 itself, so the gaps fill to (0,1].
  RealSet u = set_union(N("fam(n>=1){ (1/(n+1),1/n) }"), N("fam(n>=1){ {1/n} }"));
  EXPECT_EQ(P(u), "(0,1]");
  EXPECT_TRUE(oracle::raw_member(parse_set("fam(n>=1){ {1/n} }"), 1));
}

TEST(Union, PointFamiliesInterleave) {
  RealSet u = set_union(N("fam(n>=1){ {1/n} }"), N("fam(n>=1){ {1/(n+1/2)} }"));
  EXPECT_EQ(P(u), "fam(n>=1){ {2/(n+1)} }");
}

TEST(ComplementIn, SpecExamples) {
  IntervalAtom line = IntervalAtom::real_line();
  EXPECT_EQ(P(complement_in(N("(0,1)"), line)), "(-inf,0] | [1,inf)");
  EXPECT_EQ(complement_in(N(kExample), IntervalAtom::closed(0, 1)), N("fam(n>=1){ {1/n} }"));
  EXPECT_TRUE(complement_in(N("[0,1]"), IntervalAtom::closed(0, 1)).empty());
}

TEST(Complement, OfPointFamily) {
  EXPECT_EQ(complement(N("fam(n>=1){ {1/n} }")), N("(-inf,0] | (1,inf) | fam(n>=1){ (1/(n+1),1/n) }"));
}

TEST(SemanticSubset, SpecExamples) {
  EXPECT_TRUE(semantic_subset(N("(0,1)"), N("[0,1]")));
  EXPECT_FALSE(semantic_subset(N("[0,1]"), N("(0,1)")));
  EXPECT_TRUE(semantic_subset(N("fam(n>=1){ (1/(n+1),1/n) }"), N("(0,1)")));
  EXPECT_TRUE(semantic_subset(RealSet::empty_set(), N("{3}")));
}

TEST(Predicates, SpecExamples) {
  Predicates a = predicates(N("[0,1]"));
  EXPECT_TRUE(a.bounded && a.closed && a.compact);
  Predicates b = predicates(N("{0} | fam(n>=1){ {1/n} }"));
  EXPECT_TRUE(b.bounded && b.closed && b.compact);
  Predicates c = predicates(N("fam(n>=1){ {1/n} }"));
  EXPECT_TRUE(c.bounded);
  EXPECT_FALSE(c.closed);
  EXPECT_FALSE(c.compact);
  EXPECT_FALSE(predicates(N("[0,inf)")).bounded);
}

TEST(Defects, SpecExamples) {
  EXPECT_EQ(local_connectedness_defects(N("{0} | fam(n>=1){ {1/n} }")), std::vector<Rational>{0});
  EXPECT_TRUE(local_connectedness_defects(N("[0,1]")).empty());
  EXPECT_TRUE(local_connectedness_defects(N("fam(n>=1){ {1/n} }")).empty());
}

TEST(Empty, LegalEverywhere) {
  RealSet e = RealSet::empty_set();
  EXPECT_TRUE(normalize(e).empty());
  EXPECT_TRUE(closure(e).empty());
  EXPECT_EQ(complement(e), RealSet::real_line());
  EXPECT_TRUE(intersect(e, N("(0,1)")).empty());
  EXPECT_TRUE(predicates(e).compact);
  EXPECT_EQ(P(e), "empty");
}

// ---------------------------------------------------------------------------
// Properties over a fixed corpus of raw inputs, checked against the
// brute-force interpretation.

namespace {

const std::vector<const char*> kCorpus = {
    "{0} | fam(n>=1){ (1/(n+1), 1/n) }",
    "fam(n>=1){ [1/(n+1), 1/n] }",
    "fam(n>=1){ {1/n} } | fam(n>=1){ {1/(n+1/2)} }",
    "fam(n>=1){ (1/(n+1),1/n) } | (1/3, 2/5]",
    "fam(n>=2){ [-1/n, -1/(n+1)) } | {0} | [1,2]",
    "fam(n>=1){ (mob(2,2,2,1), mob(2,1,2,0)) } | fam(n>=1){ {1-1/n} }",
    "fam(n>=1){ (2+1/(n+1/2), 2+1/n] } | fam(n>=1){ [2+1/(n+1), 2+1/(n+1/2)) }",
    "fam(n>=1){ (1/(n+1), 1/(n+1/3)) } | fam(n>=1){ (1/(n+2/3), 1/n) } | (-1,0)",
    "fam(n>=1){ [mob(1,0,2,1), mob(1,1,2,3)] }",
    "(-inf,-3) | {-3} | fam(n>=4){ (5-1/n, 5-1/(n+1)) } | [7,inf)",
};

std::vector<RealSet> corpus() {
  std::vector<RealSet> out;
  for (const char* text : kCorpus) out.push_back(parse_set(text));
  return out;
}

}  // namespace

TEST(Properties, NormalizePreservesMembership) {
  std::size_t seed = 1;
  for (const auto& raw : corpus()) {
    RealSet x = normalize(raw);
    for (const auto& q : oracle::probes(raw, seed++))
      ASSERT_EQ(member(x, q), oracle::raw_member(raw, q)) << print(raw) << " at " << to_string(q);
  }
}

TEST(Properties, NormalizeIdempotent) {
  for (const auto& raw : corpus()) {
    RealSet x = normalize(raw);
    RealSet again = x;
    again.normalForm = false;
    EXPECT_EQ(normalize(again), x) << print(raw);
  }
}

TEST(Properties, ClosureInteriorComplement) {
  std::size_t seed = 100;
  for (const auto& raw : corpus()) {
    RealSet x = normalize(raw);
    RealSet cl = closure(x), in = interior(x), co = complement(x);
    EXPECT_TRUE(semantic_subset(x, cl));
    EXPECT_TRUE(semantic_subset(in, x));
    EXPECT_EQ(closure(cl), cl);
    EXPECT_EQ(complement(co), x);
    EXPECT_TRUE(intersect(x, co).empty());
    EXPECT_EQ(set_union(x, co), RealSet::real_line());
    Predicates p = predicates(x);
    EXPECT_EQ(p.compact, p.bounded && p.closed);
    for (const auto& q : oracle::probes(raw, seed++)) {
      ASSERT_NE(member(x, q), member(co, q)) << print(x) << " at " << to_string(q);
      if (member(x, q)) ASSERT_TRUE(member(cl, q));
      if (member(in, q)) ASSERT_TRUE(member(x, q));
    }
  }
}

TEST(Properties, DeMorganOnWindow) {
  for (const auto& raw : corpus()) {
    RealSet x = normalize(raw);
    for (const IntervalAtom& w : {IntervalAtom::closed(0, 1), IntervalAtom::open(Q("-1/2"), 3),
                                  IntervalAtom::real_line()}) {
      RealSet twice = complement_in(complement_in(x, w), w);
      EXPECT_TRUE(semantic_equal(twice, intersect(x, RealSet::of(w)))) << print(x);
    }
  }
}

TEST(Properties, ComponentsPartition) {
  for (const auto& raw : corpus()) {
    RealSet x = normalize(raw);
    ComponentList c = components(x);
    RealSet all;
    std::vector<RealSet> parts;
    for (const auto& f : c.finiteComponents) {
      if (auto* iv = std::get_if<IntervalAtom>(&f))
        parts.push_back(RealSet::of(*iv));
      else
        parts.push_back(RealSet::of_point(std::get<PointAtom>(f).value));
    }
    for (const auto& fam : c.schemaFamilies) {
      RealSet s;
      s.schemas.push_back(fam.schema);
      parts.push_back(normalize(s));
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.size(); ++j) EXPECT_TRUE(intersect(parts[i], parts[j]).empty());
      all = set_union(all, parts[i]);
    }
    EXPECT_EQ(all, x);
  }
}
