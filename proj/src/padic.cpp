#include "robba/padic.hpp"

#include <cassert>

namespace robba {

namespace {

mpz_class powm(const mpz_class& base, const mpz_class& e, const mpz_class& m) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class invert(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  if (!mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()))
    throw DivisionByZero("modular inverse does not exist");
  return r;
}

mpz_class mod_nonneg(const mpz_class& x, const mpz_class& m) {
  mpz_class r = x % m;
  if (r < 0) r += m;
  return r;
}

long floor_log(long p, long i) {
  long l = 0;
  long acc = 1;
  while (acc <= i / p) {
    acc *= p;
    ++l;
  }
  return l;
}

}  // namespace

void PadicScalar::check_same_prime(const PadicScalar& a, const PadicScalar& b) {
  if (a.p_ != b.p_) throw Error("mixed primes in scalar arithmetic");
}

PadicScalar PadicScalar::zero(long p) { return PadicScalar(p, kInf, 0, 0); }

PadicScalar PadicScalar::big_oh(long p, long a) {
  return PadicScalar(p, a, 0, 0);
}

PadicScalar PadicScalar::one(long p, long digits) {
  return from_unit(p, 0, 1, digits);
}

PadicScalar PadicScalar::from_unit(long p, long v, const mpz_class& u,
                                   long digits) {
  if (digits < 1) throw Error("from_unit: need at least one digit");
  mpz_class m = pow_p(p, digits);
  mpz_class ur = mod_nonneg(u, m);
  if (ur % p == 0) throw Error("from_unit: unit part divisible by p");
  return PadicScalar(p, v, ur, digits);
}

PadicScalar PadicScalar::from_integer(long p, const mpz_class& z,
                                      long digits) {
  if (z == 0) return zero(p);
  long v = vp_mpz(p, z);
  mpz_class u = z / pow_p(p, v);
  return from_unit(p, v, u, digits);
}

PadicScalar PadicScalar::from_rational(long p, const mpq_class& q,
                                       long digits) {
  if (q == 0) return zero(p);
  long vn = vp_mpz(p, q.get_num());
  long vd = vp_mpz(p, q.get_den());
  mpz_class un = q.get_num() / pow_p(p, vn);
  mpz_class ud = q.get_den() / pow_p(p, vd);
  mpz_class m = pow_p(p, digits);
  mpz_class u = mod_nonneg(un * invert(ud, m), m);
  return from_unit(p, vn - vd, u, digits);
}

PadicScalar PadicScalar::from_integer_abs(long p, const mpz_class& z,
                                          long abs) {
  mpz_class m = pow_p(p, abs);
  mpz_class zr = mod_nonneg(z, m);
  if (zr == 0) return big_oh(p, abs);
  long v = vp_mpz(p, zr);
  if (v >= abs) return big_oh(p, abs);
  mpz_class u = zr / pow_p(p, v);
  return from_unit(p, v, u, abs - v);
}

long PadicScalar::valuation() const {
  if (n_ == 0)
    throw PrecisionExhausted("valuation of a zero at this precision");
  return v_;
}

long PadicScalar::abs_precision() const {
  if (is_exact_zero()) return kInf;
  if (is_big_oh()) return v_;
  return v_ + n_;
}

const mpz_class& PadicScalar::unit_part() const {
  if (n_ == 0) throw PrecisionExhausted("unit part of a zero");
  return u_;
}

mpz_class PadicScalar::representative() const {
  if (is_exact_zero()) return 0;
  if (is_big_oh()) return 0;
  if (v_ < 0) throw NegativeValuation("representative of a non-integral value");
  return pow_p(p_, v_) * u_;
}

long PadicScalar::residue_digit() const {
  if (is_exact_zero()) return 0;
  if (is_big_oh()) {
    if (v_ >= 1) return 0;
    throw PrecisionExhausted("residue digit of O(p^0)");
  }
  if (v_ < 0) throw NegativeValuation("residue digit of a non-integral value");
  if (v_ > 0) return 0;
  return mpz_class(u_ % p_).get_si();
}

PadicScalar PadicScalar::operator-() const {
  if (n_ == 0) return *this;
  mpz_class m = pow_p(p_, n_);
  return PadicScalar(p_, v_, m - u_, n_);
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
  PadicScalar::check_same_prime(a, b);
  if (a.is_exact_zero()) return b;
  if (b.is_exact_zero()) return a;
  long abs = std::min(a.abs_precision(), b.abs_precision());
  if (a.n_ == 0 && b.n_ == 0) return PadicScalar::big_oh(a.p_, abs);
  if (a.n_ == 0 || b.n_ == 0) {
    const PadicScalar& x = (a.n_ == 0) ? b : a;  // the normal half
    if (x.v_ >= abs) return PadicScalar::big_oh(a.p_, abs);
    mpz_class u = mod_nonneg(x.u_, pow_p(a.p_, abs - x.v_));
    return PadicScalar(a.p_, x.v_, u, abs - x.v_);
  }
  long vm = std::min(a.v_, b.v_);
  long w = abs - vm;  // working digits; >= 1 here
  mpz_class m = pow_p(a.p_, w);
  mpz_class s = 0;
  if (a.v_ - vm < w) s += pow_p(a.p_, a.v_ - vm) * a.u_;
  if (b.v_ - vm < w) s += pow_p(a.p_, b.v_ - vm) * b.u_;
  s = mod_nonneg(s, m);
  if (s == 0) return PadicScalar::big_oh(a.p_, abs);
  long sh = vp_mpz(a.p_, s);
  if (sh >= w) return PadicScalar::big_oh(a.p_, abs);
  mpz_class u = s / pow_p(a.p_, sh);
  return PadicScalar(a.p_, vm + sh, u, w - sh);
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) {
  return a + (-b);
}

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
  PadicScalar::check_same_prime(a, b);
  if (a.is_exact_zero() || b.is_exact_zero())
    return PadicScalar::zero(a.p_);
  // v_ is the exact valuation of a normal factor and the certified lower
  // bound of a big-oh factor; either way the sum bounds the product.
  if (a.n_ == 0 || b.n_ == 0)
    return PadicScalar::big_oh(a.p_, a.v_ + b.v_);
  long n = std::min(a.n_, b.n_);
  mpz_class m = pow_p(a.p_, n);
  return PadicScalar(a.p_, a.v_ + b.v_, mod_nonneg(a.u_ * b.u_, m), n);
}

PadicScalar PadicScalar::inverse() const {
  if (n_ == 0) throw DivisionByZero("inverse of zero at this precision");
  mpz_class m = pow_p(p_, n_);
  return PadicScalar(p_, -v_, invert(u_, m), n_);
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) {
  PadicScalar::check_same_prime(a, b);
  if (b.n_ == 0) throw DivisionByZero("division by zero at its precision");
  if (a.is_exact_zero()) return a;
  if (a.n_ == 0) return PadicScalar::big_oh(a.p_, a.v_ - b.v_);
  return a * b.inverse();
}

PadicScalar PadicScalar::pow(unsigned long e) const {
  if (e == 0) return one(p_, n_ == 0 ? 1 : n_);
  if (is_exact_zero()) return *this;
  if (is_big_oh()) return big_oh(p_, v_ * static_cast<long>(e));
  PadicScalar acc = one(p_, n_);
  PadicScalar base = *this;
  unsigned long k = e;
  while (k) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return acc;
}

PadicScalar PadicScalar::shifted(long k) const {
  if (is_exact_zero()) return *this;
  return PadicScalar(p_, v_ + k, u_, n_);
}

PadicScalar PadicScalar::cap_abs(long a) const {
  if (a == kInf) return *this;
  if (is_exact_zero()) return big_oh(p_, a);
  if (is_big_oh()) return big_oh(p_, std::min(v_, a));
  if (v_ >= a) return big_oh(p_, a);
  long n = std::min(n_, a - v_);
  if (n == n_) return *this;
  return PadicScalar(p_, v_, mod_nonneg(u_, pow_p(p_, n)), n);
}

bool same_value(const PadicScalar& a, const PadicScalar& b) {
  return (a - b).is_zero_at_precision();
}

bool identical(const PadicScalar& a, const PadicScalar& b) {
  return a.p_ == b.p_ && a.v_ == b.v_ && a.n_ == b.n_ && a.u_ == b.u_;
}

long sqrt_mod_p(long p, long a) {
  mpz_class pz(p);
  mpz_class az = mod_nonneg(a, pz);
  if (az == 0) return 0;
  mpz_class leg = powm(az, (pz - 1) / 2, pz);
  if (leg != 1) throw NonResidue("leading digit is not a quadratic residue");
  if (p % 4 == 3) return powm(az, (pz + 1) / 4, pz).get_si();
  // Tonelli-Shanks for p = 1 mod 4.
  mpz_class q = pz - 1;
  long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (powm(z, (pz - 1) / 2, pz) == 1) ++z;
  mpz_class m = s, c = powm(z, q, pz), t = powm(az, q, pz),
            r = powm(az, (q + 1) / 2, pz);
  while (t != 1) {
    long i = 0;
    mpz_class t2 = t;
    while (t2 != 1) {
      t2 = t2 * t2 % pz;
      ++i;
    }
    mpz_class b = c;
    for (long j = 0; j < m.get_si() - i - 1; ++j) b = b * b % pz;
    m = i;
    c = b * b % pz;
    t = t * c % pz;
    r = r * b % pz;
  }
  return r.get_si();
}

PadicScalar hensel_sqrt(const PadicScalar& x, std::optional<long> branch) {
  if (x.is_exact_zero()) return x;
  if (x.is_big_oh())
    throw PrecisionExhausted("square root needs a leading digit");
  long p = x.prime();
  long v = x.valuation();
  if (v % 2 != 0) throw OddValuation("square root of odd valuation");
  long n = x.rel_precision();
  const mpz_class& u = x.unit_part();
  long u0 = mpz_class(u % p).get_si();
  long r0 = sqrt_mod_p(p, u0);
  long other = p - r0;
  long chosen = std::min(r0, other);
  if (branch) {
    long b = ((*branch % p) + p) % p;
    if (b == r0 || b == other)
      chosen = b;
    else
      throw NonResidue("requested branch does not square to the leading digit");
  }
  // Newton lift r <- (r + u/r)/2 with doubling precision.
  mpz_class r = chosen;
  long k = 1;
  while (k < n) {
    k = std::min(2 * k, n);
    mpz_class m = pow_p(p, k);
    mpz_class inv2 = invert(2, m);
    r = mod_nonneg((r + mod_nonneg(u, m) * invert(r, m)) * inv2, m);
  }
  // v/2 may be negative; the halved valuation is exact.
  return PadicScalar::from_unit(p, v / 2, r, n);
}

PadicScalar iwasawa_log(const PadicScalar& x) {
  if (x.is_zero_at_precision())
    throw PrecisionExhausted("logarithm of zero at this precision");
  long p = x.prime();
  long n = x.rel_precision();
  mpz_class m = pow_p(p, n);
  // Project away the tame part: omega(u) = lim u^(p^k).
  mpz_class t = x.unit_part();
  for (long i = 0; i <= n + 1; ++i) {
    mpz_class next = powm(t, p, m);
    if (next == t) break;
    t = next;
  }
  mpz_class principal = mod_nonneg(x.unit_part() * invert(t, m), m);
  PadicScalar z =
      PadicScalar::from_integer_abs(p, principal - 1, n);
  if (z.is_zero_at_precision()) return z;  // log(1 + O(p^n)) = O(p^n)
  long vz = z.valuation();
  PadicScalar acc = z;
  PadicScalar zi = z;
  for (long i = 2; (i - 1) * vz - floor_log(p, i) < n; ++i) {
    zi = zi * z;
    PadicScalar term = zi / PadicScalar::from_integer(p, i, n);
    if (i % 2 == 0) term = -term;
    acc = acc + term;
  }
  return acc;
}

PadicScalar exp_principal(const PadicScalar& w) {
  if (w.is_exact_zero()) return PadicScalar::one(w.prime(), 1);
  long p = w.prime();
  if (w.is_big_oh()) {
    if (w.abs_precision() < 1)
      throw PrecisionExhausted("exp needs v(w) >= 1");
    return PadicScalar::one(p, w.abs_precision());
  }
  long vw = w.valuation();
  if (vw < 1) throw NotPrincipalUnit("exp needs v(w) >= 1");
  long a = w.abs_precision();
  PadicScalar acc = PadicScalar::one(p, a) + w;
  PadicScalar wi = w;
  mpz_class fact = 1;
  // v(w^i / i!) >= i - (i-1)/(p-1) grows without bound for p >= 3.
  for (long i = 2; (i - 1) * vw - (i - 1) / (p - 1) < a; ++i) {
    wi = wi * w;
    fact *= i;
    PadicScalar term = wi / PadicScalar::from_integer(p, fact, a);
    acc = acc + term;
  }
  return acc;
}

PadicScalar unit_pow(const PadicScalar& u, const mpz_class& c) {
  if (u.is_zero_at_precision() || u.valuation() != 0 ||
      u.unit_part() % u.prime() != 1)
    throw NotPrincipalUnit("unit_pow needs u = 1 mod p");
  long p = u.prime();
  long n = u.rel_precision();
  mpz_class m = pow_p(p, n);
  // The 1-units mod p^n form a cyclic p-group of order p^(n-1).
  mpz_class e = mod_nonneg(c, pow_p(p, n - 1 > 0 ? n - 1 : 0));
  mpz_class r = powm(u.unit_part(), e, m);
  return PadicScalar::from_unit(p, 0, r, n);
}

PadicScalar unit_pow(const PadicScalar& u, const PadicScalar& c) {
  if (u.is_zero_at_precision() || u.valuation() != 0 ||
      u.unit_part() % u.prime() != 1)
    throw NotPrincipalUnit("unit_pow needs u = 1 mod p");
  if (c.is_zero_at_precision()) {
    // u^c = exp(c log u): c zero at precision a gives exp(O(p^(a+v(log u)))).
    if (c.is_exact_zero()) return PadicScalar::one(u.prime(), u.rel_precision());
    PadicScalar w = c * iwasawa_log(u);
    return exp_principal(w);
  }
  if (c.valuation() < 0) throw NotPrincipalUnit("unit_pow needs v(c) >= 0");
  return exp_principal(c * iwasawa_log(u));
}

PadicScalar teichmuller(long p, long a, long digits) {
  if (a % p == 0) throw NotPrincipalUnit("teichmuller of a non-unit");
  mpz_class m = pow_p(p, digits);
  mpz_class t = mod_nonneg(mpz_class(a), m);
  for (long i = 0; i <= digits + 1; ++i) {
    mpz_class next = powm(t, p, m);
    if (next == t) break;
    t = next;
  }
  return PadicScalar::from_unit(p, 0, t, digits);
}

long primitive_root(long p) {
  // Factor p - 1 by trial division (p is a small prime here).
  long n = p - 1;
  long fac[64];
  int nf = 0;
  long m = n;
  for (long d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      fac[nf++] = d;
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) fac[nf++] = m;
  mpz_class pz(p);
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (int i = 0; i < nf && ok; ++i)
      if (powm(g, n / fac[i], pz) == 1) ok = false;
    if (ok) return g;
  }
  throw Error("no primitive root found");
}

}  // namespace robba
