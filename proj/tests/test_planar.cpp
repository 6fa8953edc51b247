#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "realtopo/planar.hpp"

using namespace realtopo;

namespace {

const PlanarConfig kFree{HeightRule::CollisionFree, 30};
const PlanarConfig kLiteral{HeightRule::PaperLiteral, 30};

// Brute force: every row with n < m <= bound, tested directly.
bool brute_member(const PlanarConfig& cfg, const PlanarPoint& p, std::int64_t bound) {
  if (p.x == 0 && p.y == 0) return true;
  for (std::int64_t n = 1; n <= bound; ++n)
    if (p.x == 1 && p.y == make_rational(1, n)) return true;
  if (p.x < 0 || p.x > 1) return false;
  for (std::int64_t n = 1; n <= bound; ++n)
    for (std::int64_t m = n + 1; m <= bound; ++m)
      if (row_height(cfg.heightRule, n, m) == p.y) return true;
  return false;
}

}  // namespace

TEST(Planar, ConfigValidation) {
  EXPECT_THROW((PlanarConfig{HeightRule::CollisionFree, 0}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((PlanarConfig{HeightRule::CollisionFree, 1}.validate()));
}

TEST(Planar, MembershipExamples) {
  EXPECT_TRUE(member_planar(kFree, {0, 0}));
  EXPECT_TRUE(member_planar(kFree, {1, make_rational(1, 2)}));
  EXPECT_TRUE(member_planar(kLiteral, {1, make_rational(1, 2)}));
  EXPECT_EQ(row_height(HeightRule::CollisionFree, 1, 2), make_rational(2, 3));
  EXPECT_TRUE(member_planar(kFree, {make_rational(1, 2), make_rational(2, 3)}));

  EXPECT_FALSE(member_planar(kFree, {1, 0}));
  EXPECT_FALSE(member_planar(kFree, {make_rational(1, 2), make_rational(1, 2)}));
  EXPECT_FALSE(member_planar(kFree, {make_rational(3, 2), make_rational(2, 3)}));
  EXPECT_FALSE(member_planar(kFree, {make_rational(1, 2), 0}));
  EXPECT_FALSE(member_planar(kFree, {make_rational(1, 2), make_rational(-2, 3)}));
  // Under the literal rule x_2 also sits on the row (3,6).
  EXPECT_TRUE(member_planar(kLiteral, {0, make_rational(1, 2)}));
  EXPECT_FALSE(member_planar(kFree, {0, make_rational(1, 2)}));
}

TEST(Planar, RowSolveIsExact) {
  for (auto rule : {HeightRule::CollisionFree, HeightRule::PaperLiteral}) {
    for (std::int64_t n = 1; n <= 40; ++n) {
      for (std::int64_t m = n + 1; m <= 40; ++m) {
        auto rows = rows_at_height(rule, row_height(rule, n, m));
        bool found = std::any_of(rows.begin(), rows.end(), [&](const RowIndex& r) { return r.n == n && r.m == m; });
        EXPECT_TRUE(found) << to_string(rule) << " " << n << " " << m;
        for (const auto& r : rows) EXPECT_EQ(row_height(rule, r.n, r.m), row_height(rule, n, m));
      }
    }
  }
  EXPECT_EQ(rows_at_height(HeightRule::CollisionFree, make_rational(1001, 1001001)).size(), 1u);
  // h(1000,1000) is not a row: m must exceed n.
  EXPECT_TRUE(rows_at_height(HeightRule::CollisionFree, make_rational(1000, 1000001)).empty());
}

TEST(Planar, MembershipAgreesWithBruteForce) {
  const std::int64_t bound = 25;
  std::mt19937_64 rng(7);
  for (auto rule : {HeightRule::CollisionFree, HeightRule::PaperLiteral}) {
    PlanarConfig cfg{rule, bound};
    std::vector<PlanarPoint> probes;
    for (std::int64_t n = 1; n <= bound; ++n) {
      for (std::int64_t m = n + 1; m <= bound; ++m) {
        Rational h = row_height(rule, n, m);
        for (const auto& x : {Rational(0), make_rational(1, 3), Rational(1), make_rational(-1, 5), make_rational(6, 5)})
          probes.push_back({x, h});
      }
      probes.push_back({1, make_rational(1, n)});
      probes.push_back({0, make_rational(1, n)});
    }
    for (int i = 0; i < 3000; ++i) {
      long num = static_cast<long>(rng() % 400) + 1;
      long den = static_cast<long>(rng() % 400) + 1;
      probes.push_back({make_rational(static_cast<long>(rng() % 5), 4), make_rational(num, den)});
    }
    for (const auto& p : probes) {
      bool exact = member_planar(cfg, p);
      bool brute = brute_member(cfg, p, bound);
      if (brute) {
        EXPECT_TRUE(exact) << to_string(p.x) << "," << to_string(p.y);
        continue;
      }
      // The brute force can only miss rows past the bound.
      if (exact) {
        auto rows = rows_at_height(rule, p.y);
        bool is_xn = p.x == 1 && Rational(1 / p.y).get_den() == 1;
        bool ok = is_xn || (!rows.empty() && std::all_of(rows.begin(), rows.end(),
                                                         [&](const RowIndex& r) { return r.m > bound; }));
        EXPECT_TRUE(ok) << to_string(p.x) << "," << to_string(p.y);
      }
    }
  }
}

TEST(Planar, HeightCollisions) {
  auto lit = detect_height_collisions(kLiteral, 10);
  EXPECT_NE(std::find(lit.begin(), lit.end(), HeightCollision{2, 3, 6}), lit.end());
  EXPECT_TRUE(detect_height_collisions(PlanarConfig{HeightRule::CollisionFree, 1000}, 1000).empty());
  EXPECT_TRUE(detect_height_collisions(kLiteral, 1).empty());
  EXPECT_TRUE(detect_height_collisions(kFree, 1).empty());

  // Independent check of the literal list: km/(k+m) integral.
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> expected;
  for (std::int64_t k = 1; k <= 60; ++k)
    for (std::int64_t m = k + 1; m <= 60; ++m)
      if ((k * m) % (k + m) == 0) expected.insert({k * m / (k + m), k, m});
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> got;
  for (const auto& c : detect_height_collisions(kLiteral, 60)) got.insert({c.n, c.k, c.m});
  EXPECT_EQ(got, expected);
}

TEST(Planar, XnInClosureOfAn) {
  for (std::int64_t n : {1, 2, 7, 50, 1000}) {
    EXPECT_TRUE(check_xn_in_closure_An(kFree, n)) << n;
    EXPECT_TRUE(check_xn_in_closure_An(kLiteral, n)) << n;
  }
  // The witness row is the first one inside the epsilon band.
  for (std::int64_t n = 1; n <= 20; ++n) {
    for (long t : {3L, 100L, 12345L}) {
      std::int64_t m = closure_witness(HeightRule::CollisionFree, n, Integer(t));
      Rational eps = make_rational(1, t);
      EXPECT_LT(make_rational(1, n) - row_height(HeightRule::CollisionFree, n, m), eps);
      if (m > n + 1) EXPECT_GE(make_rational(1, n) - row_height(HeightRule::CollisionFree, n, m - 1), eps);
    }
  }
}

TEST(Planar, RowsDisjointAndXnSeparated) {
  const std::int64_t bound = 120;
  std::set<Rational> heights;
  std::size_t count = 0;
  for (std::int64_t n = 1; n <= bound; ++n) {
    for (std::int64_t m = n + 1; m <= bound; ++m) {
      heights.insert(row_height(HeightRule::CollisionFree, n, m));
      ++count;
    }
  }
  EXPECT_EQ(heights.size(), count);
  for (std::int64_t n = 1; n <= bound; ++n) EXPECT_EQ(heights.count(make_rational(1, n)), 0u);
  EXPECT_FALSE(member_planar(kFree, {1, 0}));
}

TEST(Planar, ComponentCount) {
  for (std::int64_t b : {1, 2, 5, 30}) {
    PlanarConfig cfg{HeightRule::CollisionFree, b};
    EXPECT_LE(truncated_component_count(cfg), b * b + b + 1);
  }
  EXPECT_EQ(truncated_component_count(PlanarConfig{HeightRule::CollisionFree, 1}), 2);
}

TEST(Planar, Verdicts) {
  auto v = fixture_verdicts(kFree);
  EXPECT_TRUE(v.gcc);
  EXPECT_FALSE(v.ccc);
  EXPECT_FALSE(v.cccTrace.empty());
  EXPECT_FALSE(v.gccTrace.empty());
  for (const auto& s : v.cccTrace) EXPECT_TRUE(s.ok) << s.claim;
  for (const auto& s : v.gccTrace) EXPECT_TRUE(s.ok) << s.claim;

  try {
    fixture_verdicts(kLiteral);
    FAIL() << "literal rule must be rejected";
  } catch (const UnsupportedConfig& e) {
    const auto& c = e.collisions();
    EXPECT_NE(std::find(c.begin(), c.end(), HeightCollision{2, 3, 6}), c.end());
    EXPECT_NE(std::string(e.what()).find("n=2, k=3, m=6"), std::string::npos);
  }
  EXPECT_THROW(fixture_verdicts(PlanarConfig{HeightRule::CollisionFree, 0}), std::invalid_argument);
  EXPECT_NO_THROW(fixture_verdicts(PlanarConfig{HeightRule::CollisionFree, 1}));
}
