#include "robba/character.hpp"

namespace robba {

PadicScalar chi_gamma(const CharacterParams& params, long digits) {
  long p = params.p;
  PadicScalar zeta = teichmuller(p, primitive_root(p), digits);
  PadicScalar tame = PadicScalar::one(p, digits);
  long e = ((params.a % (p - 1)) + (p - 1)) % (p - 1);
  for (long i = 0; i < e; ++i) tame = tame * zeta;
  PadicScalar wild = PadicScalar::from_integer(p, 1 + p, digits);
  return tame * wild;
}

PadicScalar log_chi_gamma(const CharacterParams& params, long digits) {
  return iwasawa_log(chi_gamma(params, digits));
}

}  // namespace robba
