#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "realtopo/rational.hpp"

namespace realtopo {

/// n -> (a*n + b) / (c*n + d) with c != 0, so the limit a/c is finite.
///
/// Every such sequence can be rewritten as limit + gap / (n + shift); the
/// normalizer works almost exclusively in that form. Coefficients are scaled
/// so that the first nonzero of (a, b, c, d) equals 1.
class MobiusSeq {
 public:
  MobiusSeq() : MobiusSeq(0, 1, 1, 0) {}
  MobiusSeq(Rational a, Rational b, Rational c, Rational d);

  /// limit + gap / (n + shift)
  static MobiusSeq from_limit_form(const Rational& limit, const Rational& gap, const Rational& shift);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }

  Rational value(std::int64_t n) const;
  Rational limit() const { return a_ / c_; }
  Rational gap() const { return (b_ * c_ - a_ * d_) / (c_ * c_); }
  Rational shift() const { return d_ / c_; }
  bool constant() const { return gap() == 0; }

  /// Affine image s*x + t of every term.
  MobiusSeq affine(const Rational& s, const Rational& t) const;
  /// n -> value(n + k)
  MobiusSeq reindexed(std::int64_t k) const { return MobiusSeq(a_, a_ * k + b_, c_, c_ * k + d_); }

  friend bool operator==(const MobiusSeq& x, const MobiusSeq& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }

 private:
  Rational a_, b_, c_, d_;
};

/// Polynomial with rational coefficients, lowest degree first.
struct Poly {
  std::vector<Rational> coef;

  int degree() const { return static_cast<int>(coef.size()) - 1; }
  Rational at(const Rational& x) const;
  void trim();
  friend Poly operator+(const Poly& p, const Poly& q);
  friend Poly operator-(const Poly& p, const Poly& q);
  friend Poly operator*(const Poly& p, const Poly& q);
  friend Poly operator*(const Rational& s, const Poly& p);
};

/// Ratio of two integer-indexed polynomials. Used for selector sequences
/// (e.g. midpoints of Möbius pieces, degree 2 over degree 2) which are not
/// Möbius themselves.
class RatSeq {
 public:
  RatSeq() = default;
  RatSeq(Poly num, Poly den);
  explicit RatSeq(const MobiusSeq& m);

  /// (1 - t) * x + t * y
  static RatSeq blend(const RatSeq& x, const RatSeq& y, const Rational& t);
  static RatSeq difference(const RatSeq& x, const RatSeq& y);

  Rational value(std::int64_t n) const;
  Rational limit() const;
  bool zero() const { return num_.coef.empty(); }
  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  /// True iff value(n) is defined and > 0 for every n >= start. Exact: uses a
  /// Cauchy root bound and checks the finitely many integers below it.
  bool positive_from(std::int64_t start) const;

  /// All n >= start with value(n) == v (denominator nonzero there). Every
  /// degree handled in this project is <= 2; higher degrees throw.
  std::vector<std::int64_t> indices_of(const Rational& v, std::int64_t start) const;

  std::string describe() const;

 private:
  Poly num_, den_;
};

}  // namespace realtopo
