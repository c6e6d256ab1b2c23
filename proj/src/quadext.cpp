#include "robba/quadext.hpp"

namespace robba {

namespace {
void check_same_prime_q(const QQuad& a, const QQuad& b) {
  if (a.p != b.p) throw Error("mixed primes in quadratic-extension arithmetic");
}
}  // namespace

QQuad operator+(const QQuad& x, const QQuad& y) {
  check_same_prime_q(x, y);
  return QQuad(x.p, mpq_class(x.a + y.a), mpq_class(x.b + y.b));
}

QQuad operator-(const QQuad& x, const QQuad& y) {
  check_same_prime_q(x, y);
  return QQuad(x.p, mpq_class(x.a - y.a), mpq_class(x.b - y.b));
}

QQuad operator*(const QQuad& x, const QQuad& y) {
  check_same_prime_q(x, y);
  return QQuad(x.p, mpq_class(x.a * y.a + x.p * x.b * y.b),
               mpq_class(x.a * y.b + x.b * y.a));
}

QQuad operator/(const QQuad& x, const QQuad& y) {
  check_same_prime_q(x, y);
  if (y.is_zero()) throw DivisionByZero("division by zero in E");
  mpq_class norm = y.a * y.a - y.p * y.b * y.b;
  // norm = 0 forces a = b = 0 since p is not a rational square.
  QQuad conj(y.p, y.a, mpq_class(-y.b));
  QQuad num = x * conj;
  return QQuad(x.p, mpq_class(num.a / norm), mpq_class(num.b / norm));
}

bool operator==(const QQuad& x, const QQuad& y) {
  return x.p == y.p && x.a == y.a && x.b == y.b;
}

std::optional<mpq_class> vp_qquad(const QQuad& x) {
  std::optional<long> va = vp_mpq(x.p, x.a);
  std::optional<long> vb = vp_mpq(x.p, x.b);
  if (!va && !vb) return std::nullopt;
  if (!va) return mpq_class(2 * *vb + 1, 2);
  if (!vb) return mpq_class(*va);
  mpq_class ca(*va);
  mpq_class cb(2 * *vb + 1, 2);
  return ca < cb ? ca : cb;
}

long residue_of_qquad(const QQuad& x) {
  std::optional<long> vb = vp_mpq(x.p, x.b);
  if (vb && *vb < 0)
    throw NegativeValuation("residue image of a non-integral element");
  return mod_p(x.p, x.a);  // throws NegativeValuation if v(a) < 0
}

QuadExtScalar QuadExtScalar::from_base(PadicScalar s) {
  long p = s.prime();
  return QuadExtScalar(std::move(s), PadicScalar::zero(p));
}

QuadExtScalar QuadExtScalar::zero(long p) {
  return QuadExtScalar(PadicScalar::zero(p), PadicScalar::zero(p));
}

QuadExtScalar QuadExtScalar::one(long p, long digits) {
  return QuadExtScalar(PadicScalar::one(p, digits), PadicScalar::zero(p));
}

QuadExtScalar QuadExtScalar::from_qquad(const QQuad& q, long digits) {
  return QuadExtScalar(PadicScalar::from_rational(q.p, q.a, digits),
                       PadicScalar::from_rational(q.p, q.b, digits));
}

long QuadExtScalar::twice_valuation() const {
  if (is_zero_at_precision())
    throw PrecisionExhausted("valuation of a zero at this precision");
  if (x.is_zero_at_precision()) return 2 * y.valuation() + 1;
  if (y.is_zero_at_precision()) return 2 * x.valuation();
  return std::min(2 * x.valuation(), 2 * y.valuation() + 1);
}

QuadExtScalar QuadExtScalar::operator-() const {
  return QuadExtScalar(-x, -y);
}

QuadExtScalar operator+(const QuadExtScalar& a, const QuadExtScalar& b) {
  return QuadExtScalar(a.x + b.x, a.y + b.y);
}

QuadExtScalar operator-(const QuadExtScalar& a, const QuadExtScalar& b) {
  return QuadExtScalar(a.x - b.x, a.y - b.y);
}

QuadExtScalar operator*(const QuadExtScalar& a, const QuadExtScalar& b) {
  // (x1 + y1 pi)(x2 + y2 pi) = (x1 x2 + p y1 y2) + (x1 y2 + y1 x2) pi
  PadicScalar cross = (a.y * b.y).shifted(1);
  return QuadExtScalar(a.x * b.x + cross, a.x * b.y + a.y * b.x);
}

QuadExtScalar QuadExtScalar::inverse() const {
  if (is_zero_at_precision())
    throw DivisionByZero("inverse of zero at this precision");
  // conjugate over norm; norm = x^2 - p y^2 lies in the base field.
  PadicScalar norm = x * x - (y * y).shifted(1);
  if (norm.is_zero_at_precision())
    throw PrecisionExhausted("norm vanished at working precision");
  return QuadExtScalar(x / norm, (-y) / norm);
}

QuadExtScalar operator/(const QuadExtScalar& a, const QuadExtScalar& b) {
  return a * b.inverse();
}

QuadExtScalar QuadExtScalar::times_pi() const {
  return QuadExtScalar(y.shifted(1), x);
}

QuadExtScalar QuadExtScalar::shifted(long k) const {
  return QuadExtScalar(x.shifted(k), y.shifted(k));
}

bool same_value(const QuadExtScalar& a, const QuadExtScalar& b) {
  return same_value(a.x, b.x) && same_value(a.y, b.y);
}

QuadExtScalar hensel_sqrt(const QuadExtScalar& s, std::optional<long> branch) {
  if (s.is_exact_zero()) return s;
  if (s.is_zero_at_precision())
    throw PrecisionExhausted("square root needs a leading digit");
  long p = s.prime();
  // Fast path: base-field input with even valuation stays in the base field;
  // odd valuation moves to pi * base.
  if (s.y.is_exact_zero()) {
    long v = s.x.valuation();
    if (v % 2 == 0)
      return QuadExtScalar::from_base(hensel_sqrt(s.x, branch));
    // sqrt(p^v u) = pi p^((v-1)/2) sqrt(u)
    PadicScalar root = hensel_sqrt(s.x.shifted(-v), branch);
    QuadExtScalar out(PadicScalar::zero(p), root.shifted((v - 1) / 2));
    return out;
  }
  long tv = s.twice_valuation();
  if (tv % 2 != 0)
    throw OddValuation("square root of odd pi-adic valuation");
  long m = tv / 2;  // s = p^m * unit
  QuadExtScalar u = s.shifted(-m);
  // unit part: v(u) = 0 forces the base component to carry the residue.
  if (u.x.is_zero_at_precision() || u.x.valuation() != 0)
    throw PrecisionExhausted("unit part of square root not resolved");
  long r0 = sqrt_mod_p(p, u.x.residue_digit());
  long other = p - r0;
  long chosen = std::min(r0, other);
  if (branch) {
    long bb = ((*branch % p) + p) % p;
    if (bb == r0 || bb == other)
      chosen = bb;
    else
      throw NonResidue("requested branch does not square to the leading digit");
  }
  long n = std::min(u.x.rel_precision(),
                    u.y.is_zero_at_precision()
                        ? u.x.rel_precision()
                        : u.y.abs_precision() + 1);
  QuadExtScalar r(PadicScalar::from_unit(p, 0, chosen, n),
                  PadicScalar::zero(p));
  QuadExtScalar half =
      QuadExtScalar::from_base(PadicScalar::from_rational(p, mpq_class(1, 2), n));
  long steps = 2;
  for (long t = 1; t < 2 * n; t *= 2) ++steps;
  for (long i = 0; i < steps; ++i) r = (r + u / r) * half;
  // m odd contributes a factor pi p^((m-1)/2).
  if (m % 2 == 0) return r.shifted(m / 2);
  return r.times_pi().shifted((m - 1) / 2);
}

}  // namespace robba
