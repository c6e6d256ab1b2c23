#include "robba/residue_field.hpp"

namespace robba {

namespace {
long norm_mod(long p, long a) {
  long r = a % p;
  return r < 0 ? r + p : r;
}

long inv_mod(long p, long a) {
  long r = norm_mod(p, a);
  if (r == 0) throw DivisionByZero("inverse of zero in the residue field");
  // extended Euclid on longs (p is small)
  long t = 0, newt = 1, q = p, newr = r;
  while (newr != 0) {
    long quo = q / newr;
    long tmp = t - quo * newt;
    t = newt;
    newt = tmp;
    tmp = q - quo * newr;
    q = newr;
    newr = tmp;
  }
  return norm_mod(p, t);
}

bool is_qr(long p, long a) {
  long r = norm_mod(p, a);
  if (r == 0) return true;
  // Euler criterion with long powering (p small).
  long e = (p - 1) / 2;
  long base = r, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return acc == 1;
}
}  // namespace

long smallest_nonresidue(long p) {
  for (long d = 2; d < p; ++d)
    if (!is_qr(p, d)) return d;
  throw Error("no quadratic non-residue found");
}

ResidueElement ResidueElement::in_fp(long p, long a) {
  return ResidueElement{p, false, norm_mod(p, a), 0};
}

ResidueElement ResidueElement::in_fp2(long p, long a, long b) {
  long bb = norm_mod(p, b);
  return ResidueElement{p, bb != 0, norm_mod(p, a), bb};
}

bool operator==(const ResidueElement& a, const ResidueElement& b) {
  return a.p == b.p && a.c0 == b.c0 && a.c1 == b.c1;
}

ResidueElement operator+(const ResidueElement& a, const ResidueElement& b) {
  return ResidueElement::in_fp2(a.p, a.c0 + b.c0, a.c1 + b.c1);
}

ResidueElement operator-(const ResidueElement& a, const ResidueElement& b) {
  return ResidueElement::in_fp2(a.p, a.c0 - b.c0, a.c1 - b.c1);
}

ResidueElement operator*(const ResidueElement& a, const ResidueElement& b) {
  long p = a.p;
  long d = (a.c1 || b.c1) ? smallest_nonresidue(p) : 0;
  long c0 = norm_mod(p, a.c0 * b.c0 + d * (a.c1 * b.c1 % p));
  long c1 = norm_mod(p, a.c0 * b.c1 + a.c1 * b.c0);
  return ResidueElement::in_fp2(p, c0, c1);
}

ResidueElement ResidueElement::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in the residue field");
  if (c1 == 0) return in_fp(p, inv_mod(p, c0));
  long d = smallest_nonresidue(p);
  long nrm = norm_mod(p, c0 * c0 - d * (c1 * c1 % p));
  long ni = inv_mod(p, nrm);
  return in_fp2(p, c0 * ni, -c1 * ni);
}

ResidueElement residue_image(const PadicScalar& x) {
  return ResidueElement::in_fp(x.prime(), x.residue_digit());
}

ResidueElement residue_image(const QuadExtScalar& x) {
  if (!x.y.is_zero_at_precision() && x.y.valuation() < 0)
    throw NegativeValuation("residue image of a non-integral element");
  return ResidueElement::in_fp(x.prime(), x.x.residue_digit());
}

ResidueElement residue_image_q(long p, const mpq_class& q) {
  return ResidueElement::in_fp(p, mod_p(p, q));
}

std::pair<ResidueElement, ResidueElement> trace_pair_roots(
    const ResidueElement& t) {
  long p = t.p;
  if (t.c1 != 0) throw Error("trace must lie in F_p");
  long disc = norm_mod(p, t.c0 * t.c0 - 4);
  long inv2 = inv_mod(p, 2);
  if (is_qr(p, disc)) {
    long s = disc == 0 ? 0 : sqrt_mod_p(p, disc);
    ResidueElement l1 = ResidueElement::in_fp(p, (t.c0 + s) * inv2);
    ResidueElement l2 = ResidueElement::in_fp(p, (t.c0 - s) * inv2);
    return {l1, l2};
  }
  // disc = d * m^2 with d the basis non-residue: sqrt(disc) = m g.
  long d = smallest_nonresidue(p);
  long m = sqrt_mod_p(p, norm_mod(p, disc * inv_mod(p, d)));
  ResidueElement l1 = ResidueElement::in_fp2(p, t.c0 * inv2, m * inv2);
  ResidueElement l2 = ResidueElement::in_fp2(p, t.c0 * inv2, -m * inv2);
  return {l1, l2};
}

TracePair trace_pair(const ResidueElement& t) {
  long p = t.p;
  if (t.c1 != 0) throw Error("trace must lie in F_p");
  long disc = norm_mod(p, t.c0 * t.c0 - 4);
  return TracePair{t, is_qr(p, disc)};
}

}  // namespace robba
