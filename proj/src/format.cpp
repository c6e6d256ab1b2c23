#include "robba/format.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "robba/errors.hpp"

namespace robba {

namespace {

std::string digits_of(const PadicScalar& s) {
  mpz_class u = s.unit_part();
  const long p = s.prime();
  std::string out;
  for (long i = 0; i < s.rel_precision(); ++i) {
    if (i > 0) out += ',';
    const mpz_class d = u % p;
    out += d.get_str();
    u /= p;
  }
  return out;
}

// Strict linear scanner: no whitespace, no stray characters.
struct Cursor {
  const std::string& s;
  size_t i = 0;

  bool done() const { return i >= s.size(); }
  char peek() const { return done() ? '\0' : s[i]; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++i;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) {
      throw Error(std::string("parse: expected '") + c + "' in \"" + s +
                  "\" at position " + std::to_string(i));
    }
  }
  void expect_end() {
    if (!done()) {
      throw Error("parse: trailing characters in \"" + s + "\"");
    }
  }
  bool eat_word(const char* w) {
    const size_t save = i;
    for (const char* q = w; *q; ++q) {
      if (!eat(*q)) {
        i = save;
        return false;
      }
    }
    return true;
  }
};

mpz_class parse_mpz(Cursor& cur) {
  const size_t start = cur.i;
  cur.eat('-');
  const size_t first_digit = cur.i;
  while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
    ++cur.i;
  }
  if (cur.i == first_digit) {
    throw Error("parse: expected an integer in \"" + cur.s + "\" at position " +
                std::to_string(cur.i));
  }
  return mpz_class(cur.s.substr(start, cur.i - start));
}

long parse_long(Cursor& cur) {
  const mpz_class z = parse_mpz(cur);
  if (!z.fits_slong_p()) {
    throw Error("parse: integer out of range in \"" + cur.s + "\"");
  }
  return z.get_si();
}

PadicScalar parse_scalar_at(Cursor& cur) {
  const long p = parse_long(cur);
  if (p < 2) throw Error("parse: the prime must be at least 2");
  cur.expect('^');
  if (cur.eat_word("inf")) {
    cur.expect('*');
    if (parse_long(cur) != 0) throw Error("parse: malformed exact zero");
    cur.expect('@');
    if (parse_long(cur) != 0) throw Error("parse: malformed exact zero");
    return PadicScalar::zero(p);
  }
  const long v = parse_long(cur);
  cur.expect('*');
  std::vector<long> digits;
  digits.push_back(parse_long(cur));
  while (cur.eat(',')) digits.push_back(parse_long(cur));
  cur.expect('@');
  const long n = parse_long(cur);
  if (n == 0) {
    if (digits.size() != 1 || digits[0] != 0) {
      throw Error("parse: a zero at precision has the single digit 0");
    }
    return PadicScalar::big_oh(p, v);
  }
  if (n < 0 || static_cast<long>(digits.size()) != n) {
    throw Error("parse: digit count disagrees with the precision mark");
  }
  if (digits[0] == 0) {
    throw Error("parse: the leading digit of a unit must be nonzero");
  }
  mpz_class u = 0;
  for (size_t idx = digits.size(); idx-- > 0;) {
    if (digits[idx] < 0 || digits[idx] >= p) {
      throw Error("parse: digit out of range for the prime");
    }
    u = u * p + digits[idx];
  }
  return PadicScalar::from_unit(p, v, u, n);
}

}  // namespace

std::string format_scalar(const PadicScalar& s) {
  const std::string head = std::to_string(s.prime()) + "^";
  if (s.is_exact_zero()) return head + "inf*0@0";
  if (s.is_big_oh()) return head + std::to_string(s.abs_precision()) + "*0@0";
  return head + std::to_string(s.valuation()) + "*" + digits_of(s) + "@" +
         std::to_string(s.rel_precision());
}

PadicScalar parse_scalar(const std::string& text) {
  Cursor cur{text};
  PadicScalar s = parse_scalar_at(cur);
  cur.expect_end();
  return s;
}

std::string format_rational(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(const std::string& text) {
  Cursor cur{text};
  const mpz_class num = parse_mpz(cur);
  mpz_class den = 1;
  if (cur.eat('/')) den = parse_mpz(cur);
  cur.expect_end();
  if (den == 0) throw Error("parse: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::string format_quad(const QuadExtScalar& s) {
  return format_scalar(s.x) + "+" + format_scalar(s.y) + "*pi";
}

QuadExtScalar parse_quad(const std::string& text) {
  const size_t plus = text.find('+');
  if (plus == std::string::npos) {
    throw Error("parse: an extension scalar needs the form <x>+<y>*pi");
  }
  static const std::string kPi = "*pi";
  if (text.size() < plus + 1 + kPi.size() ||
      text.compare(text.size() - kPi.size(), kPi.size(), kPi) != 0) {
    throw Error("parse: an extension scalar must end in *pi");
  }
  const PadicScalar x = parse_scalar(text.substr(0, plus));
  const PadicScalar y = parse_scalar(
      text.substr(plus + 1, text.size() - plus - 1 - kPi.size()));
  if (x.prime() != y.prime()) {
    throw Error("parse: the two components name different primes");
  }
  return QuadExtScalar(x, y);
}

std::string format_series(const TruncatedSeries& f) {
  if (f.c.empty()) throw Error("format: a series needs a nonempty window");
  std::string out;
  for (long idx = 0; idx < f.t_precision(); ++idx) {
    if (idx > 0) out += ';';
    out += std::to_string(f.min_deg + idx) + ":" + format_scalar(f.c[idx]);
  }
  return out + "@" + std::to_string(f.t_precision());
}

TruncatedSeries parse_series(const std::string& text) {
  const size_t at = text.rfind('@');
  if (at == std::string::npos) {
    throw Error("parse: a series needs its precision mark");
  }
  {
    Cursor tail{text, at + 1};
    const long tprec = parse_long(tail);
    tail.expect_end();
    if (tprec < 1) throw Error("parse: a series needs a nonempty window");
  }

  TruncatedSeries out;
  bool first = true;
  size_t pos = 0;
  long expected_deg = 0;
  while (pos < at) {
    size_t end = text.find(';', pos);
    if (end == std::string::npos || end > at) end = at;
    const std::string term = text.substr(pos, end - pos);
    const size_t colon = term.find(':');
    if (colon == std::string::npos) {
      throw Error("parse: a series term needs the form <deg>:<coef>");
    }
    Cursor dc{term};
    const long deg = parse_long(dc);
    dc.expect(':');
    const PadicScalar coef = parse_scalar(term.substr(colon + 1));
    if (first) {
      out.p = coef.prime();
      out.min_deg = deg;
      expected_deg = deg;
      first = false;
    } else if (coef.prime() != out.p) {
      throw Error("parse: series coefficients name different primes");
    }
    if (deg != expected_deg) {
      throw Error("parse: series degrees must be consecutive");
    }
    ++expected_deg;
    out.c.push_back(coef);
    pos = end + (end < at ? 1 : 0);
  }
  if (first) throw Error("parse: a series needs at least one term");

  Cursor tail{text, at + 1};
  const long tprec = parse_long(tail);
  if (tprec != out.t_precision()) {
    throw Error("parse: term count disagrees with the precision mark");
  }
  return out;
}

}  // namespace robba
