#include <gtest/gtest.h>

#include "realtopo/dsl.hpp"
#include "realtopo/fuzz.hpp"
#include "realtopo/gcc.hpp"

using namespace realtopo;

TEST(Fuzz, GenerationIsDeterministic) {
  FuzzSpec spec;
  for (std::int64_t i = 0; i < 50; ++i) {
    EXPECT_EQ(generate_case(spec, trial_seed(9, i)).dsl(), generate_case(spec, trial_seed(9, i)).dsl());
  }
  EXPECT_NE(trial_seed(9, 0), trial_seed(9, 1));
  EXPECT_NE(trial_seed(9, 0), trial_seed(10, 0));
}

TEST(Fuzz, SchemaAndLimitBias) {
  FuzzSpec spec;
  int withSchema = 0, schemas = 0, limitsIncluded = 0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    FuzzCase c = generate_case(spec, trial_seed(2, i));
    if (!c.schemas.empty()) ++withSchema;
    for (const auto& g : c.schemas) {
      ++schemas;
      if (std::find(c.points.begin(), c.points.end(), g.limit) != c.points.end()) ++limitsIncluded;
    }
  }
  EXPECT_NEAR(withSchema / double(n), 0.5, 0.05);
  EXPECT_NEAR(limitsIncluded / double(schemas), 0.5, 0.07);
}

TEST(Fuzz, GenesBuildValidSchemas) {
  SchemaGene g;
  g.limit = 0;
  g.period = 1;
  g.far = 0;
  g.width = 1;
  g.nearClosed = true;
  g.farClosed = true;
  // Touching closed chain: the union of [1/(n+1), 1/n] is (0,1].
  EXPECT_TRUE(semantic_equal(normalize(RealSet{{}, {}, {g.schema()}}), parse_set("(0,1]")));
  g.side = -1;
  g.points = true;
  EXPECT_TRUE(semantic_equal(normalize(RealSet{{}, {}, {g.schema()}}), parse_set("fam(n>=1){ {-1/n} }")));
}

TEST(Fuzz, EmptyRun) {
  FuzzSpec spec;
  spec.trials = 0;
  FuzzSummary s = fuzz_run(spec);
  EXPECT_EQ(s.trials, 0);
  EXPECT_EQ(s.failed, 0);
  EXPECT_TRUE(s.properties.empty());
}

TEST(Fuzz, BatteryPassesOnSeedOne) {
  FuzzSpec spec;
  spec.seed = 1;
  spec.trials = 100;
  FuzzSummary s = fuzz_run(spec);
  EXPECT_EQ(s.failed, 0);
  EXPECT_LT(s.unnormalizable, 1);
  EXPECT_GT(s.gcc, 0);
  EXPECT_GT(s.nonGcc, 0);
  for (const auto& f : s.failures) ADD_FAILURE() << f.property << ": " << f.detail << " on " << f.input;
}

TEST(Fuzz, MutationIsCaughtAndShrunk) {
  FuzzSpec spec;
  spec.seed = 1;
  spec.trials = 60;
  FuzzRunOptions options;
  options.mutate = true;
  FuzzSummary s = fuzz_run(spec, options);
  ASSERT_GT(s.failed, 0);
  for (const auto& f : s.failures) {
    EXPECT_EQ(f.property, "decider-agreement");
    // The minimal case is one point family without its limit.
    RealSet shrunk = normalize(parse_set(f.shrunk));
    EXPECT_TRUE(shrunk.intervals.empty());
    EXPECT_TRUE(shrunk.points.empty());
    ASSERT_EQ(shrunk.schemas.size(), 1u) << f.shrunk;
    EXPECT_EQ(shrunk.schemas[0].kind, SchemaAtom::Kind::PointFamily);
    EXPECT_FALSE(decide_gcc_transversal(shrunk).verdict);
  }
}

TEST(Fuzz, ShrinkKeepsFailing) {
  FuzzCase c = generate_case(FuzzSpec{}, trial_seed(4, 3));
  SchemaGene g;
  g.points = true;
  g.limit = make_rational(3, 2);
  g.period = 2;
  c.schemas.push_back(g);
  auto fails = [](const FuzzCase& t) {
    return std::any_of(t.schemas.begin(), t.schemas.end(), [](const SchemaGene& s) { return s.points; });
  };
  FuzzCase small = shrink_case(c, fails);
  EXPECT_TRUE(fails(small));
  EXPECT_TRUE(small.intervals.empty());
  EXPECT_TRUE(small.points.empty());
  ASSERT_EQ(small.schemas.size(), 1u);
  EXPECT_EQ(small.schemas[0].limit, 0);
  EXPECT_EQ(small.schemas[0].period, 1);
}

TEST(Corollaries, Examples) {
  RealSet gcc = normalize(parse_set("{0} | fam(n>=1){ (1/(n+1),1/n) }"));
  RealSet bad = normalize(parse_set("fam(n>=1){ (1/(n+1),1/n) }"));
  EXPECT_TRUE(semantic_equal(component_closure_union(gcc), parse_set("[0,1]")));
  // The identity itself fails without the limit; the implication is vacuous.
  EXPECT_TRUE(semantic_equal(component_closure_union(bad), parse_set("(0,1]")));
  EXPECT_FALSE(semantic_equal(component_closure_union(bad), closure(bad)));
  EXPECT_TRUE(corollary1_holds(gcc, true));
  EXPECT_TRUE(corollary1_holds(bad, false));
  EXPECT_FALSE(corollary1_holds(bad, true));
  EXPECT_TRUE(corollary2_holds(gcc, true));
  EXPECT_TRUE(corollary2_holds(bad, false));
  EXPECT_FALSE(corollary2_holds(bad, true));
}
