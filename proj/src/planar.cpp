#include "realtopo/planar.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace realtopo {

std::string to_string(HeightRule rule) {
  return rule == HeightRule::PaperLiteral ? "paper-literal" : "collision-free";
}

void PlanarConfig::validate() const {
  if (enumerationBound < 1) throw std::invalid_argument("enumerationBound must be at least 1");
}

Rational row_height(HeightRule rule, std::int64_t n, std::int64_t m) {
  if (rule == HeightRule::PaperLiteral) return make_rational(1, n) + make_rational(1, m);
  return make_rational(m, n * m + 1);
}

namespace {

// Prime factorization of a positive integer by trial division.
std::map<Integer, unsigned> factor(Integer q) {
  std::map<Integer, unsigned> out;
  for (Integer p = 2; p * p <= q; ++p) {
    while (q % p == 0) {
      ++out[p];
      q /= p;
    }
  }
  if (q > 1) ++out[q];
  return out;
}

std::vector<Integer> divisors_of_square(const Integer& q) {
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factor(q)) {
    std::vector<Integer> next;
    for (const auto& d : divs) {
      Integer pk = 1;
      for (unsigned i = 0; i <= 2 * e; ++i) {
        next.push_back(d * pk);
        pk *= p;
      }
    }
    divs = std::move(next);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

bool fits(const Integer& z) { return z.fits_slong_p(); }

}  // namespace

std::vector<RowIndex> rows_at_height(HeightRule rule, const Rational& y) {
  std::vector<RowIndex> out;
  if (y <= 0) return out;
  if (rule == HeightRule::CollisionFree) {
    // 1/y = n + 1/m with m >= n+1 >= 2, so n is the integer part.
    Rational inv = 1 / y;
    Integer n = floor_of(inv);
    Rational frac = inv - Rational(n);
    if (n < 1 || frac == 0) return out;
    Rational m = 1 / frac;
    if (m.get_den() != 1 || m.get_num() < n + 1) return out;
    if (!fits(n) || !fits(m.get_num())) return out;
    out.push_back({n.get_si(), m.get_num().get_si()});
    return out;
  }
  // 1/n + 1/m = p/q  <=>  (pn - q)(pm - q) = q^2, and n < m means pn - q < q.
  const Integer& p = y.get_num();
  const Integer& q = y.get_den();
  Integer q2 = q * q;
  for (const auto& a : divisors_of_square(q)) {
    if (a >= q) break;
    Integer b = q2 / a;
    if ((a + q) % p != 0 || (b + q) % p != 0) continue;
    Integer n = (a + q) / p;
    Integer m = (b + q) / p;
    if (fits(n) && fits(m)) out.push_back({n.get_si(), m.get_si()});
  }
  std::sort(out.begin(), out.end(), [](const RowIndex& l, const RowIndex& r) { return l.n < r.n; });
  return out;
}

bool member_planar(const PlanarConfig& cfg, const PlanarPoint& p) {
  if (p.x == 0 && p.y == 0) return true;
  if (p.x == 1 && p.y > 0) {
    Rational inv = 1 / p.y;
    if (inv.get_den() == 1) return true;
  }
  if (p.x < 0 || p.x > 1) return false;
  return !rows_at_height(cfg.heightRule, p.y).empty();
}

std::vector<HeightCollision> detect_height_collisions(const PlanarConfig& cfg, std::int64_t bound) {
  std::vector<HeightCollision> out;
  for (std::int64_t k = 1; k <= bound; ++k) {
    for (std::int64_t m = k + 1; m <= bound; ++m) {
      Rational inv = 1 / row_height(cfg.heightRule, k, m);
      if (inv.get_den() == 1) out.push_back({inv.get_num().get_si(), k, m});
    }
  }
  return out;
}

namespace {

Rational closure_gap(HeightRule rule, std::int64_t n, std::int64_t m) {
  return abs(row_height(rule, n, m) - make_rational(1, n));
}

}  // namespace

std::int64_t closure_witness(HeightRule rule, std::int64_t n, const Integer& t) {
  Integer m;
  if (rule == HeightRule::PaperLiteral) {
    m = t + 1;  // gap is 1/m
  } else {
    // gap is 1/(n(nm+1)), below 1/t once nm + 1 > t/n.
    Rational need = (Rational(t) / n - 1) / n;
    m = floor_of(need) + 1;
  }
  if (m < n + 1) m = n + 1;
  return to_index(m);
}

bool check_xn_in_closure_An(const PlanarConfig& cfg, std::int64_t n) {
  if (n < 1) return false;
  const HeightRule rule = cfg.heightRule;
  const Integer ladder[] = {1, 2, 10, 1000, 1000000, Integer("1000000000000")};
  for (const auto& t : ladder) {
    std::int64_t m = closure_witness(rule, n, t);
    if (m < n + 1) return false;
    Rational eps = Rational(1) / Rational(t);
    if (!(closure_gap(rule, n, m) < eps)) return false;
    if (m > n + 1 && closure_gap(rule, n, m - 1) < eps) return false;
    if (!member_planar(cfg, {1, row_height(rule, n, m)})) return false;
  }
  for (std::int64_t m = n + 1; m <= n + 16; ++m) {
    if (!(closure_gap(rule, n, m + 1) < closure_gap(rule, n, m))) return false;
  }
  return true;
}

std::int64_t truncated_component_count(const PlanarConfig& cfg) {
  const std::int64_t b = cfg.enumerationBound;
  return 1 + b + b * (b - 1) / 2;
}

namespace {

TraceStep step(std::string claim, std::string detail, bool ok) {
  return TraceStep{std::move(claim), std::move(detail), ok};
}

std::vector<TraceStep> ccc_trace(const PlanarConfig& cfg) {
  const std::int64_t b = cfg.enumerationBound;
  const HeightRule rule = cfg.heightRule;
  std::vector<TraceStep> trace;

  std::vector<Rational> heights;
  for (std::int64_t n = 1; n <= b; ++n)
    for (std::int64_t m = n + 1; m <= b; ++m) heights.push_back(row_height(rule, n, m));
  std::sort(heights.begin(), heights.end());
  bool distinct = std::adjacent_find(heights.begin(), heights.end()) == heights.end();
  trace.push_back(step("rows are pairwise disjoint",
                       std::to_string(heights.size()) +
                           " row heights up to the bound are distinct; in general 1/h = n + 1/m has integer part n "
                           "and fractional part 1/m, so (n,m) is recovered from h",
                       distinct));

  bool singletons = detect_height_collisions(cfg, b).empty();
  for (std::int64_t n = 1; n <= b && singletons; ++n)
    singletons = rows_at_height(rule, make_rational(1, n)).empty();
  trace.push_back(step("each x_n is a singleton component",
                       "no row lies at height 1/n for n <= " + std::to_string(b) +
                           " (exact row solve); 1/n = n' + 1/m has no solution with m >= 2",
                       singletons));

  bool origin = member_planar(cfg, {0, 0}) && rows_at_height(rule, 0).empty();
  trace.push_back(step("the origin is a singleton component", "row heights are positive", origin));

  bool separated = true;
  for (std::int64_t n = 1; n < b && separated; ++n)
    separated = make_rational(1, n) - make_rational(1, n + 1) > 0;
  bool limit_out = !member_planar(cfg, {1, 0});
  trace.push_back(step("{x_n} is closed and discrete in X",
                       "consecutive heights 1/n differ up to the bound; the only accumulation point in the plane "
                       "is (1,0), which is not in X",
                       separated && limit_out));

  trace.push_back(step("no compact transversal exists",
                       "a transversal K picks every singleton component, so K contains the infinite closed "
                       "discrete set {x_n}; a compact space has no such subset",
                       distinct && singletons && separated && limit_out));
  return trace;
}

std::vector<TraceStep> gcc_trace(const PlanarConfig& cfg) {
  const std::int64_t b = cfg.enumerationBound;
  const HeightRule rule = cfg.heightRule;
  std::vector<TraceStep> trace;

  bool below = true;
  for (std::int64_t n = 1; n <= b && below; ++n)
    for (std::int64_t m = n + 1; m <= b && below; ++m) below = row_height(rule, n, m) < make_rational(1, n);
  trace.push_back(step("rows of A_n lie below height 1/n",
                       "h(n,m) = 1/(n + 1/m) < 1/n; checked exactly for n < m <= " + std::to_string(b), below));

  bool closure = true;
  for (std::int64_t n = 1; n <= b && closure; ++n) closure = check_xn_in_closure_An(cfg, n);
  trace.push_back(step("x_n lies in the closure of A_n",
                       "explicit witness rows for epsilons down to 1e-12, n <= " + std::to_string(b), closure));

  // Covers: an origin block of radius 1/t, one block per x_k (k <= t)
  // holding the tail of A_k, and single rows for what is left.
  std::vector<std::int64_t> radii;
  for (std::int64_t t : {std::int64_t{1}, std::int64_t{2}, std::int64_t{3}, std::int64_t{5}, std::int64_t{10}, b})
    if (t <= b && std::find(radii.begin(), radii.end(), t) == radii.end()) radii.push_back(t);

  bool covers_ok = true;
  std::ostringstream sizes;
  for (std::int64_t t : radii) {
    const Rational r = make_rational(1, t);
    std::int64_t assigned = 1;  // origin
    std::int64_t members = 1;
    bool ok = true;
    for (std::int64_t n = t + 1; n <= b; ++n) {
      // Every row of A_n meets the ball at its left end (0, h), so by
      // connectedness the whole row is in the origin block; x_n follows by
      // closure.
      for (std::int64_t m = n + 1; m <= b; ++m) ok = ok && row_height(rule, n, m) < r;
      assigned += 1 + std::max<std::int64_t>(0, b - n);
    }
    for (std::int64_t k = 1; k <= std::min(t, b); ++k) {
      std::int64_t m0 = closure_witness(rule, k, Integer(t));
      ++members;
      ++assigned;  // x_k
      for (std::int64_t m = k + 1; m <= b; ++m) {
        ++assigned;
        if (m < m0) ++members;  // a row of its own
      }
    }
    ok = ok && assigned == truncated_component_count(cfg);
    covers_ok = covers_ok && ok;
    sizes << (sizes.tellp() > 0 ? ", " : "") << "t=" << t << ": " << members << " members";
  }
  trace.push_back(step("every cover in the family has a finite subcover",
                       "origin ball of radius 1/t absorbs A_n and x_n for n > t; the block at x_k absorbs all rows "
                       "of A_k past the closure witness; the rest are finitely many rows (" + sizes.str() + ")",
                       covers_ok));

  trace.push_back(step("components are quasicomponents",
                       "any two components are split by a horizontal cut y = c with c not a height of X and not a limit "
                       "of heights (limits are 0 and 1/n only), and such a cut bounds a clopen set",
                       below && closure));
  return trace;
}

}  // namespace

FixtureVerdict fixture_verdicts(const PlanarConfig& cfg) {
  cfg.validate();
  if (cfg.heightRule == HeightRule::PaperLiteral) {
    auto collisions = detect_height_collisions(cfg, std::max<std::int64_t>(cfg.enumerationBound, 10));
    std::ostringstream os;
    os << "verdicts are not issued under the paper-literal height rule: x_n lies on a row for";
    for (std::size_t i = 0; i < collisions.size() && i < 5; ++i)
      os << (i ? "," : "") << " (n=" << collisions[i].n << ", k=" << collisions[i].k << ", m=" << collisions[i].m
         << ")";
    if (collisions.size() > 5) os << " and " << collisions.size() - 5 << " more";
    throw UnsupportedConfig(os.str(), std::move(collisions));
  }
  FixtureVerdict v;
  v.cccTrace = ccc_trace(cfg);
  v.gccTrace = gcc_trace(cfg);
  auto failed = [](const std::vector<TraceStep>& trace) {
    return std::find_if(trace.begin(), trace.end(), [](const TraceStep& s) { return !s.ok; });
  };
  for (const auto* trace : {&v.cccTrace, &v.gccTrace}) {
    auto it = failed(*trace);
    if (it != trace->end()) throw std::logic_error("fixture check failed: " + it->claim);
  }
  v.gcc = true;
  v.ccc = false;
  return v;
}

}  // namespace realtopo
