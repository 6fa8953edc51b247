#include "realtopo/sequence.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace realtopo {

MobiusSeq::MobiusSeq(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (c_ == 0) throw std::invalid_argument("Möbius sequence needs c != 0 (finite limit)");
  const Rational* first = nullptr;
  for (const Rational* x : {&a_, &b_, &c_, &d_}) {
    if (*x != 0) {
      first = x;
      break;
    }
  }
  Rational scale = *first;
  a_ /= scale;
  b_ /= scale;
  c_ /= scale;
  d_ /= scale;
}

MobiusSeq MobiusSeq::from_limit_form(const Rational& limit, const Rational& gap, const Rational& shift) {
  return MobiusSeq(limit, limit * shift + gap, 1, shift);
}

Rational MobiusSeq::value(std::int64_t n) const {
  Rational nn(n);
  Rational den = c_ * nn + d_;
  if (den == 0) throw std::domain_error("Möbius sequence evaluated at its pole");
  return (a_ * nn + b_) / den;
}

MobiusSeq MobiusSeq::affine(const Rational& s, const Rational& t) const {
  return MobiusSeq(s * a_ + t * c_, s * b_ + t * d_, c_, d_);
}

// ---------------------------------------------------------------------------

Rational Poly::at(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void Poly::trim() {
  while (!coef.empty() && coef.back() == 0) coef.pop_back();
}

Poly operator+(const Poly& p, const Poly& q) {
  Poly r;
  r.coef.assign(std::max(p.coef.size(), q.coef.size()), Rational(0));
  for (std::size_t i = 0; i < p.coef.size(); ++i) r.coef[i] += p.coef[i];
  for (std::size_t i = 0; i < q.coef.size(); ++i) r.coef[i] += q.coef[i];
  r.trim();
  return r;
}

Poly operator-(const Poly& p, const Poly& q) { return p + Rational(-1) * q; }

Poly operator*(const Poly& p, const Poly& q) {
  Poly r;
  if (p.coef.empty() || q.coef.empty()) return r;
  r.coef.assign(p.coef.size() + q.coef.size() - 1, Rational(0));
  for (std::size_t i = 0; i < p.coef.size(); ++i)
    for (std::size_t j = 0; j < q.coef.size(); ++j) r.coef[i + j] += p.coef[i] * q.coef[j];
  r.trim();
  return r;
}

Poly operator*(const Rational& s, const Poly& p) {
  Poly r = p;
  for (auto& c : r.coef) c *= s;
  r.trim();
  return r;
}

// ---------------------------------------------------------------------------

RatSeq::RatSeq(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  num_.trim();
  den_.trim();
  if (den_.coef.empty()) throw std::invalid_argument("zero denominator polynomial");
}

RatSeq::RatSeq(const MobiusSeq& m) : RatSeq(Poly{{m.b(), m.a()}}, Poly{{m.d(), m.c()}}) {}

RatSeq RatSeq::blend(const RatSeq& x, const RatSeq& y, const Rational& t) {
  Poly num = (Rational(1) - t) * (x.num_ * y.den_) + t * (y.num_ * x.den_);
  Poly den = x.den_ * y.den_;
  if (x.den_.coef == y.den_.coef) {
    num = (Rational(1) - t) * x.num_ + t * y.num_;
    den = x.den_;
  }
  return RatSeq(num, den);
}

RatSeq RatSeq::difference(const RatSeq& x, const RatSeq& y) {
  return RatSeq(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
}

Rational RatSeq::value(std::int64_t n) const {
  Rational nn(n);
  Rational den = den_.at(nn);
  if (den == 0) throw std::domain_error("rational sequence evaluated at a pole");
  return num_.at(nn) / den;
}

Rational RatSeq::limit() const {
  if (num_.degree() > den_.degree()) throw std::domain_error("divergent rational sequence");
  if (num_.degree() < den_.degree()) return 0;
  return num_.coef.back() / den_.coef.back();
}

namespace {

int sign_of(const Rational& q) { return sgn(q); }

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

namespace {

// Coefficients of p(s + m) as a polynomial in m.
Poly taylor_shift(const Poly& p, const Rational& s) {
  Poly out;
  out.coef = p.coef;
  const int d = p.degree();
  for (int i = 0; i < d; ++i)
    for (int j = d - 1; j >= i; --j) out.coef[j] += s * out.coef[j + 1];
  return out;
}

// p(s + m) > 0 for every m >= 0 when all shifted coefficients are >= 0 and
// the constant one is > 0. Once this holds at s it holds beyond s.
bool positive_beyond(const Poly& p, const Rational& s) {
  Poly t = taylor_shift(p, s);
  if (t.coef.empty() || t.coef[0] <= 0) return false;
  return std::all_of(t.coef.begin(), t.coef.end(), [](const Rational& c) { return c >= 0; });
}

}  // namespace

bool RatSeq::positive_from(std::int64_t start) const {
  Poly prod = num_ * den_;
  if (prod.coef.empty() || sign_of(prod.coef.back()) < 0) return false;
  // Smallest certified s by doubling then bisection.
  std::int64_t step = 1;
  std::int64_t hi = start;
  while (!positive_beyond(prod, Rational(hi))) {
    if (step > (std::int64_t{1} << 61)) throw std::runtime_error("sign certification bound too large");
    hi = start + step;
    step *= 2;
  }
  std::int64_t lo = start;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (positive_beyond(prod, Rational(mid)))
      hi = mid;
    else
      lo = mid + 1;
  }
  constexpr std::int64_t kScanCap = 2'000'000;
  if (hi - start > kScanCap) throw std::runtime_error("sign certification bound too large");
  for (std::int64_t n = start; n < hi; ++n) {
    Rational nn(n);
    if (den_.at(nn) == 0 || prod.at(nn) <= 0) return false;
  }
  return true;
}

std::vector<std::int64_t> RatSeq::indices_of(const Rational& v, std::int64_t start) const {
  Poly eq = num_ - v * den_;
  std::vector<Rational> roots;
  switch (eq.degree()) {
    case -1:
      throw std::domain_error("sequence is constant at the queried value");
    case 0:
      break;
    case 1:
      roots.push_back(-eq.coef[0] / eq.coef[1]);
      break;
    case 2: {
      const auto& e = eq.coef;
      Rational disc = e[1] * e[1] - 4 * e[2] * e[0];
      if (auto s = rational_sqrt(disc)) {
        roots.push_back((-e[1] - *s) / (2 * e[2]));
        roots.push_back((-e[1] + *s) / (2 * e[2]));
      }
      break;
    }
    default:
      throw std::domain_error("index solving above degree 2 is unsupported");
  }
  std::vector<std::int64_t> out;
  for (const auto& r : roots) {
    if (r.get_den() != 1 || r < start) continue;
    if (!r.get_num().fits_slong_p()) continue;
    std::int64_t n = r.get_num().get_si();
    if (den_.at(Rational(n)) == 0) continue;
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string RatSeq::describe() const {
  auto poly_str = [](const Poly& p) {
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
      if (p.coef[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << to_string(p.coef[i]);
      if (i >= 1) os << "*n";
      if (i == 2) os << "^2";
    }
    if (first) os << "0";
    return os.str();
  };
  return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
}

}  // namespace realtopo
