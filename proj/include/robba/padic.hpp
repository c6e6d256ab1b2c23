#pragma once

#include <gmpxx.h>

#include <limits>
#include <optional>
#include <string>

#include "robba/errors.hpp"
#include "robba/rationals.hpp"

namespace robba {

// One scalar of Q_p carried to finite precision.
//
// A nonzero value is stored as p^v * u with v its exact valuation and u a
// unit held mod p^N (N >= 1 significant digits), i.e. the value is pinned
// mod p^(v+N).  Two flavours of zero are kept apart:
//
//  * the exact zero (valuation +infinity, represented by kInf), and
//  * a big-oh zero O(p^a): every stored digit cancelled, so all that remains
//    known is that the value is divisible by p^a (valuation >= a).
//
// Addition aligns the operands at their minimum valuation and works mod the
// smaller absolute precision; total cancellation yields a big-oh zero rather
// than an error.  Operations that need actual digits of a big-oh zero
// (division by it, square root, residue digit, unit extraction) throw
// PrecisionExhausted or DivisionByZero as appropriate.
class PadicScalar {
 public:
  static constexpr long kInf = std::numeric_limits<long>::max();

  PadicScalar() = default;

  // --- factories ---------------------------------------------------------
  static PadicScalar zero(long p);               // exact zero
  static PadicScalar big_oh(long p, long a);     // O(p^a)
  static PadicScalar one(long p, long digits);
  static PadicScalar from_integer(long p, const mpz_class& z, long digits);
  static PadicScalar from_rational(long p, const mpq_class& q, long digits);
  // value p^v * u, u coprime to p; u is reduced mod p^digits.
  static PadicScalar from_unit(long p, long v, const mpz_class& u,
                               long digits);
  // value z interpreted mod p^abs (absolute precision abs; z may be 0).
  static PadicScalar from_integer_abs(long p, const mpz_class& z, long abs);

  // --- observers ---------------------------------------------------------
  long prime() const { return p_; }
  bool is_exact_zero() const { return v_ == kInf; }
  bool is_big_oh() const { return n_ == 0 && v_ != kInf; }
  bool is_zero_at_precision() const { return n_ == 0; }
  // exact valuation; throws PrecisionExhausted on either zero flavour.
  long valuation() const;
  // digits of relative precision (0 for zeros).
  long rel_precision() const { return n_; }
  // v + N for a normal scalar, a for O(p^a), kInf for the exact zero.
  long abs_precision() const;
  const mpz_class& unit_part() const;  // precondition: normal scalar
  // p^v * u mod p^(v+N) as a plain integer; precondition v >= 0.
  mpz_class representative() const;
  // digit at p^0 in [0, p); 0 for integral zeros; NegativeValuation if v < 0;
  // PrecisionExhausted for O(p^0).
  long residue_digit() const;

  // --- arithmetic --------------------------------------------------------
  PadicScalar operator-() const;
  friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);
  PadicScalar inverse() const;
  PadicScalar pow(unsigned long e) const;
  // multiply by p^k exactly (k may be negative); no precision is lost.
  PadicScalar shifted(long k) const;
  // cap the absolute precision at a (forget digits at and above p^a).
  PadicScalar cap_abs(long a) const;

  // true iff the two values agree at their shared absolute precision.
  friend bool same_value(const PadicScalar& a, const PadicScalar& b);
  // true iff the representations coincide bit for bit.
  friend bool identical(const PadicScalar& a, const PadicScalar& b);

 private:
  PadicScalar(long p, long v, mpz_class u, long n)
      : p_(p), v_(v), u_(std::move(u)), n_(n) {}
  static void check_same_prime(const PadicScalar& a, const PadicScalar& b);

  long p_ = 0;
  long v_ = kInf;   // exact valuation; kInf = exact zero; for big-oh: bound a
  mpz_class u_ = 0; // unit part in [1, p^n_), coprime to p; 0 for zeros
  long n_ = 0;      // significant digits; 0 for both zero flavours
};

// Square root by Hensel lifting.  The valuation must be even (OddValuation)
// and the leading digit a quadratic residue (NonResidue).  `branch` picks the
// residue class of the root mod p; when omitted the smaller of the two roots
// in [1, p-1] is taken, so radicands congruent to 1 get the principal branch
// sqrt(1 + pZ_p) inside 1 + pZ_p.  Exact zero passes through; a big-oh zero
// throws PrecisionExhausted.
PadicScalar hensel_sqrt(const PadicScalar& x,
                        std::optional<long> branch = std::nullopt);

// Iwasawa-normalized logarithm: log(p) = 0 and log(Teichmueller) = 0, so the
// result is log of the principal-unit part <u>, computed by the alternating
// series after projecting away the tame part.  Throws PrecisionExhausted on
// either zero flavour.
PadicScalar iwasawa_log(const PadicScalar& x);

// u^c for a principal unit u (u = 1 mod p, NotPrincipalUnit otherwise).
// The integer overload is exact modular powering; the scalar overload needs
// v(c) >= 0 and goes through exp(c log u).
PadicScalar unit_pow(const PadicScalar& u, const mpz_class& c);
PadicScalar unit_pow(const PadicScalar& u, const PadicScalar& c);

// exp on the maximal ideal: series sum w^i / i!, requires v(w) >= 1.
PadicScalar exp_principal(const PadicScalar& w);

// Teichmueller lift of the residue class a mod p (a coprime to p).
PadicScalar teichmuller(long p, long a, long digits);

// Smallest positive primitive root mod p.
long primitive_root(long p);

// Square root mod p (Tonelli-Shanks); throws NonResidue.
long sqrt_mod_p(long p, long a);

}  // namespace robba
