#pragma once

#include <gmpxx.h>

#include <optional>

#include "robba/errors.hpp"

namespace robba {

// p^e as an exact integer (e >= 0).
mpz_class pow_p(long p, unsigned long e);

// v_p of a nonzero integer.  z == 0 is a precondition violation.
long vp_mpz(long p, const mpz_class& z);

// v_p of a rational; std::nullopt encodes v_p(0) = +infinity.
std::optional<long> vp_mpq(long p, const mpq_class& q);

// q mod p for a p-integral rational (denominator coprime to p), in [0, p).
long mod_p(long p, const mpq_class& q);

// Exact binomial coefficient C(n, j) for mpz n >= 0 interpretation-free:
// product formula n(n-1)...(n-j+1)/j!, valid for any mpz n and j >= 0.
mpz_class binomial_mpz(const mpz_class& n, unsigned long j);

// Exact harmonic number H_l = sum_{i=1}^{l} 1/i (H_0 = 0).
mpq_class harmonic(unsigned long l);

}  // namespace robba
