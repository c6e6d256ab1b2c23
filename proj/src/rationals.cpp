#include "robba/rationals.hpp"

namespace robba {

mpz_class pow_p(long p, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
  return r;
}

long vp_mpz(long p, const mpz_class& z) {
  if (z == 0) throw DivisionByZero("vp_mpz: valuation of zero");
  mpz_class rest, pz(p);
  return static_cast<long>(
      mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), pz.get_mpz_t()));
}

std::optional<long> vp_mpq(long p, const mpq_class& q) {
  if (q == 0) return std::nullopt;
  return vp_mpz(p, q.get_num()) - vp_mpz(p, q.get_den());
}

long mod_p(long p, const mpq_class& q) {
  mpz_class pz(p);
  if (mpz_divisible_p(q.get_den().get_mpz_t(), pz.get_mpz_t()))
    throw NegativeValuation("mod_p: denominator divisible by p");
  mpz_class den_inv;
  if (!mpz_invert(den_inv.get_mpz_t(), q.get_den().get_mpz_t(),
                  pz.get_mpz_t()))
    throw NegativeValuation("mod_p: denominator not invertible mod p");
  mpz_class r = (q.get_num() % pz) * den_inv % pz;
  if (r < 0) r += pz;
  return r.get_si();
}

mpz_class binomial_mpz(const mpz_class& n, unsigned long j) {
  mpz_class num = 1;
  mpz_class fact = 1;
  for (unsigned long i = 0; i < j; ++i) {
    num *= (n - static_cast<long>(i));
    fact *= static_cast<long>(i + 1);
  }
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), fact.get_mpz_t());
  return q;
}

mpq_class harmonic(unsigned long l) {
  mpq_class h = 0;
  for (unsigned long i = 1; i <= l; ++i) h += mpq_class(1, i);
  h.canonicalize();
  return h;
}

}  // namespace robba
