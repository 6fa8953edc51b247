#include <gtest/gtest.h>

#include "oracle.hpp"
#include "realtopo/dsl.hpp"
#include "realtopo/gcc.hpp"

using namespace realtopo;

namespace {

RealSet N(const char* text) { return normalize(parse_set(text)); }
Rational Q(const char* text) { return parse_rational(text); }

const char* kExample = "{0} | fam(n>=1){ (1/(n+1), 1/n) }";
const char* kPieces = "fam(n>=1){ (1/(n+1), 1/n) }";

const std::vector<const char*> kSets = {
    kExample,
    kPieces,
    "[0,1]",
    "{0}",
    "(-inf,inf)",
    "fam(n>=1){ {1/n} }",
    "{0} | fam(n>=1){ {1/n} }",
    "{1} | {2} | {3}",
    "(0,1) | (2,3)",
    "fam(n>=1){ [-1/n, -1/(n+1)) } | fam(n>=1){ {1/n} } | {0}",
    "fam(n>=1){ [-1/n, -1/(n+1)) } | fam(n>=1){ {1/n} }",
    "fam(n>=1){ (2+1/(n+1), 2+1/(n+1/2)] } | (-inf,-4] | {2}",
    "fam(n>=1){ (2-1/n, 2-1/(n+1/2)) } | (3, 5)",
    "fam(n>=1){ (2-1/n, 2-1/(n+1/2)) } | [2, 5)",
    "fam(n>=1){ (1/(n+1), 1/(n+1/3)) } | fam(n>=1){ (1/(n+2/3), 1/n) }",
};

}  // namespace

TEST(Transversal, SpecExamples) {
  Transversal a = build_transversal(N("[0,1]"));
  EXPECT_EQ(a.set.points, (std::vector<Rational>{0, Q("1/2"), 1}));
  EXPECT_TRUE(a.set.families.empty());

  Transversal b = build_transversal(N("{0}"));
  EXPECT_EQ(b.set.points, std::vector<Rational>{0});

  Transversal c = build_transversal(N(kExample));
  EXPECT_EQ(c.set.points, std::vector<Rational>{0});
  ASSERT_EQ(c.set.families.size(), 1u);
  const RatSeq& mid = c.set.families[0].seq;
  for (long n = 1; n <= 50; ++n) EXPECT_EQ(mid.value(n), Rational(2 * n + 1, 2 * n * (n + 1)));
  EXPECT_EQ(c.set.accumulation_points(), std::vector<Rational>{0});
}

TEST(Transversal, RulesHoldForAllPolicies) {
  for (const char* text : kSets) {
    RealSet x = N(text);
    for (auto policy : {SelectorPolicy::Midpoint, SelectorPolicy::LeftmostProbe, SelectorPolicy::SeededRandom}) {
      Transversal t = build_transversal(x, {policy, 99});
      EXPECT_TRUE(transversal_violations(x, t).empty()) << text << " " << to_string(policy);
    }
  }
}

TEST(DecideGcc, SpecExamples) {
  EXPECT_TRUE(decide_gcc_transversal(N(kExample)).verdict);
  EXPECT_FALSE(decide_gcc_transversal(N(kPieces)).verdict);
  EXPECT_TRUE(decide_gcc_transversal(N("[0,1]")).verdict);

  SequenceVerdict s = decide_gcc_sequences(N(kPieces));
  EXPECT_FALSE(s.verdict);
  ASSERT_TRUE(s.witness);
  EXPECT_EQ(s.witness->limit, 0);
  EXPECT_FALSE(s.witness->limitInX);
  for (long k = 1; k <= 20; ++k) EXPECT_EQ(s.witness->oddTerms.value(k), Rational(1, k));
  EXPECT_TRUE(verify_alternating(N(kPieces), *s.witness));

  EXPECT_TRUE(decide_gcc_sequences(N(kExample)).verdict);
  EXPECT_TRUE(decide_gcc_sequences(N("{1} | {2} | {3}")).verdict);
}

TEST(DecideGcc, DecidersAgreeAndWitnessesVerify) {
  for (const char* text : kSets) {
    RealSet x = N(text);
    bool t = decide_gcc_transversal(x).verdict;
    SequenceVerdict s = decide_gcc_sequences(x);
    EXPECT_EQ(t, s.verdict) << text;
    if (!s.verdict) {
      EXPECT_TRUE(verify_alternating(x, *s.witness)) << text;
      // brute-force the first terms
      for (std::int64_t k = 1; k <= 30; ++k) {
        EXPECT_TRUE(member(x, s.witness->evenTerms.value(k)));
        EXPECT_FALSE(member(x, s.witness->oddTerms.value(k)));
      }
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed)
      EXPECT_EQ(decide_gcc_transversal(x, {SelectorPolicy::SeededRandom, seed}).verdict, t) << text;
  }
}

TEST(VerifyAlternating, RejectsBrokenWitness) {
  RealSet x = N(kPieces);
  AlternatingWitness w = *decide_gcc_sequences(x).witness;
  AlternatingWitness swapped = w;
  std::swap(swapped.evenTerms, swapped.oddTerms);
  EXPECT_FALSE(verify_alternating(x, swapped));
  AlternatingWitness claimIn = w;
  claimIn.limitInX = true;
  EXPECT_FALSE(verify_alternating(x, claimIn));
}

TEST(DecideCcc, SpecExamples) {
  CccVerdict a = decide_ccc(N(kExample));
  EXPECT_TRUE(a.verdict);
  ASSERT_TRUE(a.witnessK);
  EXPECT_TRUE(check_k_witness(N(kExample), *a.witnessK).ok());
  EXPECT_EQ(a.witnessK->accumulation_points(), std::vector<Rational>{0});

  EXPECT_FALSE(decide_ccc(N("fam(n>=1){ {1/n} }")).verdict);

  CccVerdict c = decide_ccc(N("(-inf,inf)"));
  EXPECT_TRUE(c.verdict);
  EXPECT_EQ(c.witnessK->points.size(), 1u);
}

TEST(DecideCcc, WitnessSoundAndAgreesWithGcc) {
  for (const char* text : kSets) {
    RealSet x = N(text);
    CccVerdict c = decide_ccc(x);
    EXPECT_EQ(c.verdict, decide_gcc_transversal(x).verdict) << text;
    if (c.verdict) EXPECT_TRUE(check_k_witness(x, *c.witnessK).ok()) << text;
  }
}

TEST(KWitness, DetectsBadWitness) {
  RealSet x = N(kExample);
  SelectionSet k = *decide_ccc(x).witnessK;
  SelectionSet noZero = k;
  noZero.points.clear();
  KWitnessReport r = check_k_witness(x, noZero);
  EXPECT_FALSE(r.compact);
  EXPECT_FALSE(r.meetsEveryComponent);
  SelectionSet outside = k;
  outside.points.push_back(Q("1/2"));
  EXPECT_FALSE(check_k_witness(x, outside).subset);
}

TEST(Cover, SpecExamples) {
  RealSet pieces = N(kPieces);
  DisjointOpenCover c = witness_non_gcc_cover(pieces);
  EXPECT_TRUE(c.finiteMembers.empty());
  ASSERT_EQ(c.familyMembers.size(), 1u);
  for (long k = 1; k <= 10; ++k) {
    EXPECT_EQ(c.familyMembers[0].lower.value(k), Rational(1, k + 1));
    EXPECT_EQ(c.familyMembers[0].upper.value(k), Rational(1, k));
  }
  CoverReport r = verify_cover(pieces, c);
  EXPECT_TRUE(r.covers && r.disjoint && r.openInX && r.infinitelyManyNonempty);
  EXPECT_FALSE(r.finiteSubcover);

  RealSet dots = N("fam(n>=1){ {1/n} }");
  DisjointOpenCover d = witness_non_gcc_cover(dots);
  CoverReport rd = verify_cover(dots, d);
  EXPECT_TRUE(rd.covers && rd.disjoint && rd.openInX && rd.infinitelyManyNonempty);
  // each member isolates exactly one point 1/k
  for (std::int64_t k = 1; k <= 10; ++k) {
    RealSet u = intersect(dots, RealSet::of(IntervalAtom::open(d.familyMembers[0].lower.value(k),
                                                               d.familyMembers[0].upper.value(k))));
    EXPECT_EQ(u, RealSet::of_point(Rational(1, k)));
  }

  EXPECT_THROW(witness_non_gcc_cover(N(kExample)), NotApplicable);
}

TEST(Cover, WitnessesForEveryNonGccSet) {
  for (const char* text : kSets) {
    RealSet x = N(text);
    if (decide_gcc_transversal(x).verdict) continue;
    CoverReport r = verify_cover(x, witness_non_gcc_cover(x));
    EXPECT_TRUE(r.covers && r.disjoint && r.openInX && r.infinitelyManyNonempty) << text;
  }
}

TEST(VerifyCover, SpecExamples) {
  RealSet unit = N("[0,1]");
  CoverReport a = verify_cover(unit, {{unit}, {}});
  EXPECT_TRUE(a.covers && a.disjoint && a.openInX);
  ASSERT_TRUE(a.finiteSubcover);
  EXPECT_EQ(a.finiteSubcover->size(), 1u);

  RealSet x = N(kExample);
  DisjointOpenCover c{{N("{0}")}, {CoverFamily{MobiusSeq(0, 1, 1, 1), MobiusSeq(0, 1, 1, 0), 1, std::nullopt}}};
  CoverReport b = verify_cover(x, c);
  EXPECT_TRUE(b.disjoint);
  EXPECT_TRUE(b.covers);
  EXPECT_FALSE(b.openInX);
}

TEST(VerifyCover, FiniteSubcoverOfGccSet) {
  // the family isolates -1 and -1/2; its later members are empty
  RealSet x = N("{-1} | {-1/2} | {0} | fam(n>=1){ {1/n} }");
  RealSet rest = intersect(x, RealSet::of(IntervalAtom::open(Q("-1/3"), 2)));
  CoverFamily fam{MobiusSeq::from_limit_form(0, -1, Q("-1/2")), MobiusSeq::from_limit_form(0, -1, Q("1/2")), 1,
                  std::nullopt};
  CoverReport r = verify_cover(x, {{rest}, {fam}});
  EXPECT_TRUE(r.covers);
  EXPECT_TRUE(r.disjoint);
  EXPECT_TRUE(r.openInX);
  EXPECT_FALSE(r.infinitelyManyNonempty);
  ASSERT_TRUE(r.finiteSubcover);
  std::vector<CoverIndex> expected{{false, 0, 0}, {true, 0, 1}, {true, 0, 2}};
  EXPECT_EQ(*r.finiteSubcover, expected);
}

TEST(VerifyCover, DetectsOverlapAndGaps) {
  RealSet x = N("[0,2]");
  EXPECT_FALSE(verify_cover(x, {{N("[0,1]"), N("[1,2]")}, {}}).disjoint);
  EXPECT_FALSE(verify_cover(x, {{N("[0,1)")}, {}}).covers);
}

TEST(SurjectionOntoN, SpecExamples) {
  RealSet x = N(kPieces);
  SurjectionOntoN f = cover_to_surjection(x, witness_non_gcc_cover(x));
  EXPECT_EQ(f.evaluate(Q("2/5")), 2);
  EXPECT_EQ(f.evaluate(Q("7/8")), 1);
  EXPECT_THROW(f.evaluate(Q("1/2")), std::domain_error);
  EXPECT_THROW(f.evaluate(0), std::domain_error);
}

TEST(SurjectionOntoN, HitsEveryIndexAndPreimagesAreClopen) {
  for (const char* text : kSets) {
    RealSet x = N(text);
    if (decide_gcc_transversal(x).verdict) continue;
    SurjectionOntoN f = cover_to_surjection(x, witness_non_gcc_cover(x));
    for (std::int64_t n = 1; n <= 12; ++n) {
      Rational p = f.point_with_value(n);
      EXPECT_EQ(f.evaluate(p), n) << text;
      RealSet pre = f.preimage(n);
      EXPECT_TRUE(member(pre, p));
      EXPECT_TRUE(clopen_in(x, pre)) << text << " n=" << n;
    }
    for (const auto& q : oracle::probes(x, 5))
      if (member(x, q)) EXPECT_TRUE(member(f.preimage(f.evaluate(q)), q)) << text;
  }
}

TEST(SurjectionOntoN, RequiresCertifiedFamilies) {
  RealSet x = N(kPieces);
  DisjointOpenCover c = witness_non_gcc_cover(x);
  c.familyMembers[0].nonemptyWitness.reset();
  EXPECT_THROW(cover_to_surjection(x, c), std::invalid_argument);
}

TEST(ClopenChain, SpecExamples) {
  RealSet unit = N("[0,1]");
  ClopenChain shrink{ChainEnd::at(0, true), ChainEnd::seq(MobiusSeq(0, 1, 1, 0), true), 1};
  EXPECT_EQ(clopen_chain_intersection(unit, shrink), N("{0}"));
  ChainReport sr = validate_chain(unit, shrink, 8);
  EXPECT_TRUE(sr.decreasing);
  EXPECT_FALSE(sr.allClopen);  // [0,1/n] is not open in [0,1] for n >= 2

  RealSet x = N(kExample);
  ClopenChain tails{ChainEnd::at(0, true), ChainEnd::seq(MobiusSeq(0, 1, 1, 0), false), 1};
  EXPECT_EQ(clopen_chain_intersection(x, tails), N("{0}"));
  ChainReport tr = validate_chain(x, tails, 16);
  EXPECT_TRUE(tr.decreasing && tr.allClopen && tr.allNonempty);
  EXPECT_EQ(tails.term(x, 2), N("{0} | fam(n>=1){ (1/(n+2), 1/(n+1)) }"));

  ClopenChain constant{ChainEnd::infinite(), ChainEnd::infinite(), 1};
  EXPECT_EQ(clopen_chain_intersection(x, constant), x);
}

TEST(ClopenChain, RejectsGrowingWindows) {
  ClopenChain growing{ChainEnd::at(0, true), ChainEnd::seq(MobiusSeq::from_limit_form(1, -1, 0), true), 1};
  EXPECT_FALSE(validate_chain(N("[0,1]"), growing, 4).decreasing);
}

TEST(SplitClopen, SpecExamples) {
  auto [a, b] = split_clopen(N("(0,1) | (2,3)"), Q("3/2"));
  EXPECT_EQ(a, N("(0,1)"));
  EXPECT_EQ(b, N("(2,3)"));
  EXPECT_THROW(split_clopen(N("[0,1]"), Q("1/2")), InvalidCut);
  auto [c, d] = split_clopen(N(kExample), 2);
  EXPECT_EQ(c, N(kExample));
  EXPECT_TRUE(d.empty());
  EXPECT_TRUE(clopen_in(N("(0,1) | (2,3)"), a));
}
