#pragma once

#include "robba/padic.hpp"

namespace robba {

// The topological generator gamma of Gamma = Gal(Q_p(mu_{p^inf})/Q_p) is
// pinned by its cyclotomic character value chi(gamma).  We take
// chi(gamma) = zeta_{p-1}^a * (1+p) with zeta_{p-1} the Teichmueller lift of
// the smallest positive primitive root mod p; a is configurable and nothing
// downstream depends on it (the Iwasawa logarithm kills the tame part).
struct CharacterParams {
  long p = 3;
  long a = 1;
};

// chi(gamma) as a genuine unit scalar at `digits` digits.
PadicScalar chi_gamma(const CharacterParams& params, long digits);

// log chi(gamma) = log(1+p), computed through the full logarithm of the
// character value so the tame-part projection is exercised.
PadicScalar log_chi_gamma(const CharacterParams& params, long digits);

}  // namespace robba
