#include "realtopo/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace realtopo {

namespace {

std::string replace_unicode_minus(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string text) : text_(std::move(text)) {}

  std::vector<DslTerm> parse_expression() {
    std::vector<DslTerm> terms;
    skip();
    if (try_word("empty")) {
      expect_end();
      return terms;
    }
    for (;;) {
      parse_term(terms);
      skip();
      if (!try_char('|')) break;
    }
    expect_end();
    return terms;
  }

  MobiusSeq parse_whole_sequence() {
    MobiusSeq m = parse_seq();
    expect_end();
    return m;
  }

 private:
  std::string text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool try_char(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!try_char(c)) fail(std::string("expected '") + c + "'");
  }

  bool try_word(std::string_view w) {
    skip();
    if (text_.compare(pos_, w.size(), w) != 0) return false;
    std::size_t end = pos_ + w.size();
    if (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) return false;
    pos_ = end;
    return true;
  }

  void expect_end() {
    if (peek() != '\0') fail("unexpected trailing input");
  }

  Integer parse_unsigned() {
    skip();
    std::size_t begin = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (begin == pos_) fail("expected a number");
    return Integer(text_.substr(begin, pos_ - begin));
  }

  // int ('/' int)? ; a '/' not followed by a digit is left for the caller
  Rational parse_unsigned_rational() {
    Integer num = parse_unsigned();
    std::size_t save = pos_;
    if (try_char('/')) {
      skip();
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        Integer den = parse_unsigned();
        if (den == 0) fail("zero denominator");
        Rational q(num, den);
        q.canonicalize();
        return q;
      }
      pos_ = save;
    }
    return Rational(num);
  }

  Rational parse_signed_rational() {
    int sign = 1;
    if (try_char('-'))
      sign = -1;
    else
      try_char('+');
    return sign * parse_unsigned_rational();
  }

  Bound parse_bound(bool isLower, bool closed) {
    std::size_t save = pos_;
    int sign = 1;
    if (try_char('-'))
      sign = -1;
    else
      try_char('+');
    if (try_word("inf")) {
      Bound b = sign < 0 ? Bound::neg_inf() : Bound::pos_inf();
      if (isLower != (sign < 0)) {
        pos_ = save;
        fail(isLower ? "lower bound cannot be +inf" : "upper bound cannot be -inf");
      }
      return b;
    }
    return Bound::at(sign * parse_unsigned_rational(), closed);
  }

  void parse_term(std::vector<DslTerm>& terms) {
    char c = peek();
    if (c == '(' || c == '[') {
      ++pos_;
      std::size_t at = pos_;
      Bound lo = parse_bound(true, c == '[');
      expect(',');
      Bound hi = parse_bound(false, false);
      char close = peek();
      if (close != ')' && close != ']') fail("expected ')' or ']'");
      ++pos_;
      if (hi.finite()) hi.closed = close == ']';
      if (close == ']' && !hi.finite()) fail("infinite bound must be open");
      if (c == '[' && !lo.finite()) fail("infinite bound must be open");
      IntervalAtom iv{lo, hi};
      if (lo.finite() && hi.finite() && lo.value >= hi.value) {
        pos_ = at;
        fail("interval needs lower < upper (use {p} for points)");
      }
      terms.emplace_back(iv);
    } else if (c == '{') {
      ++pos_;
      do {
        terms.emplace_back(PointAtom{parse_signed_rational()});
      } while (try_char(','));
      expect('}');
    } else if (try_word("fam")) {
      terms.emplace_back(parse_family());
    } else {
      fail("expected an interval, point, or fam(...)");
    }
  }

  SchemaAtom parse_family() {
    expect('(');
    if (!try_word("n")) fail("expected 'n'");
    skip();
    if (text_.compare(pos_, 2, ">=") != 0) fail("expected '>='");
    pos_ += 2;
    Integer start = parse_unsigned();
    if (start < 1 || !start.fits_slong_p()) fail("start index must be a positive integer");
    expect(')');
    expect('{');
    SchemaAtom s;
    char c = peek();
    try {
      if (c == '{') {
        ++pos_;
        MobiusSeq m = parse_seq();
        expect('}');
        s = SchemaAtom::points(m, start.get_si());
      } else if (c == '(' || c == '[') {
        ++pos_;
        MobiusSeq l = parse_seq();
        expect(',');
        MobiusSeq r = parse_seq();
        char close = peek();
        if (close != ')' && close != ']') fail("expected ')' or ']'");
        ++pos_;
        s = SchemaAtom::intervals(l, c == '[', r, close == ']', start.get_si());
      } else {
        fail("expected a family piece");
      }
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    expect('}');
    return s;
  }

  // sum of a constant and at most one c/(n+k) term, or mob(a,b,c,d)
  MobiusSeq parse_seq() {
    if (try_word("mob")) {
      expect('(');
      Rational a = parse_signed_rational();
      expect(',');
      Rational b = parse_signed_rational();
      expect(',');
      Rational c = parse_signed_rational();
      expect(',');
      Rational d = parse_signed_rational();
      expect(')');
      if (c == 0) fail("mob(a,b,c,d) needs c != 0");
      return MobiusSeq(a, b, c, d);
    }
    Rational constant = 0;
    std::optional<std::pair<Rational, Rational>> recip;  // coefficient, shift
    bool first = true;
    for (;;) {
      int sign = 1;
      if (try_char('-'))
        sign = -1;
      else if (!try_char('+') && !first)
        break;
      first = false;
      Rational coef = sign * parse_unsigned_rational();
      std::size_t save = pos_;
      if (try_char('/')) {
        Rational shift = 0;
        if (try_word("n")) {
        } else if (try_char('(')) {
          if (!try_word("n")) fail("expected 'n'");
          if (try_char('+'))
            shift = parse_unsigned_rational();
          else if (try_char('-'))
            shift = -parse_unsigned_rational();
          expect(')');
        } else {
          pos_ = save;
          fail("expected 'n' or '(n+k)' after '/'");
        }
        if (recip) fail("sequence must have a single c/(n+k) term");
        recip = std::make_pair(coef, shift);
      } else {
        constant += coef;
      }
      char nx = peek();
      if (nx != '+' && nx != '-') break;
    }
    if (!recip) fail("sequence needs a c/(n+k) term (constant endpoints are not schemas)");
    return MobiusSeq::from_limit_form(constant, recip->first, recip->second);
  }
};

std::string print_bound(const Bound& b) {
  if (b.kind == Bound::Kind::NegInf) return "-inf";
  if (b.kind == Bound::Kind::PosInf) return "inf";
  return to_string(b.value);
}

}  // namespace

RealSet DslExpression::to_set() const {
  RealSet r;
  for (const auto& t : terms) {
    if (auto* iv = std::get_if<IntervalAtom>(&t))
      r.intervals.push_back(*iv);
    else if (auto* p = std::get_if<PointAtom>(&t))
      r.points.push_back(*p);
    else
      r.schemas.push_back(std::get<SchemaAtom>(t));
  }
  return r;
}

DslExpression parse_dsl(std::string_view text) {
  DslExpression e;
  e.source = std::string(text);
  Parser p(replace_unicode_minus(text));
  e.terms = p.parse_expression();
  return e;
}

MobiusSeq parse_sequence(std::string_view text) {
  Parser p(replace_unicode_minus(text));
  return p.parse_whole_sequence();
}

RealSet parse_set(std::string_view text) { return parse_dsl(text).to_set(); }

std::string print(const MobiusSeq& m) {
  Rational k = m.gap();
  if (k == 0 || k.get_den() != 1) {
    return "mob(" + to_string(m.a()) + "," + to_string(m.b()) + "," + to_string(m.c()) + "," + to_string(m.d()) + ")";
  }
  Rational shift = m.shift();
  std::string den = "n";
  if (shift > 0) den = "(n+" + to_string(shift) + ")";
  if (shift < 0) den = "(n-" + to_string(-shift) + ")";
  Rational limit = m.limit();
  if (limit == 0) return to_string(k) + "/" + den;
  return to_string(limit) + (k > 0 ? "+" : "-") + to_string(abs(k)) + "/" + den;
}

std::string print(const IntervalAtom& iv) {
  if (iv.degenerate()) return "{" + to_string(iv.lower.value) + "}";
  return std::string(iv.lower.closed && iv.lower.finite() ? "[" : "(") + print_bound(iv.lower) + "," +
         print_bound(iv.upper) + (iv.upper.closed && iv.upper.finite() ? "]" : ")");
}

std::string print(const SchemaAtom& s) {
  std::string head = "fam(n>=" + std::to_string(s.start) + "){ ";
  if (s.kind == SchemaAtom::Kind::PointFamily) return head + "{" + print(s.left) + "} }";
  return head + (s.leftClosed ? "[" : "(") + print(s.left) + ", " + print(s.right) + (s.rightClosed ? "]" : ")") + " }";
}

std::string print(const RealSet& x) {
  std::vector<IntervalAtom> atoms = x.intervals;
  for (const auto& p : x.points) atoms.push_back(IntervalAtom::point(p.value));
  std::stable_sort(atoms.begin(), atoms.end(), [](const IntervalAtom& a, const IntervalAtom& b) {
    if (!a.lower.finite() || !b.lower.finite()) return a.lower.kind < b.lower.kind;
    return a.lower.value < b.lower.value;
  });
  std::string out;
  for (const auto& a : atoms) out += (out.empty() ? "" : " | ") + print(a);
  for (const auto& s : x.schemas) out += (out.empty() ? "" : " | ") + print(s);
  return out.empty() ? "empty" : out;
}

}  // namespace realtopo
