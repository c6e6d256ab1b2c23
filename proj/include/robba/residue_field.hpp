#pragma once

#include "robba/padic.hpp"
#include "robba/quadext.hpp"

namespace robba {

// Element of F_p or of F_{p^2} written on the basis {1, g} with g^2 = d,
// d the smallest positive quadratic non-residue mod p.
struct ResidueElement {
  long p = 3;
  bool deg2 = false;  // false: element of F_p (c1 = 0)
  long c0 = 0;
  long c1 = 0;

  static ResidueElement in_fp(long p, long a);
  static ResidueElement in_fp2(long p, long a, long b);

  bool is_zero() const { return c0 == 0 && c1 == 0; }
  friend bool operator==(const ResidueElement& a, const ResidueElement& b);
  friend ResidueElement operator+(const ResidueElement& a,
                                  const ResidueElement& b);
  friend ResidueElement operator-(const ResidueElement& a,
                                  const ResidueElement& b);
  friend ResidueElement operator*(const ResidueElement& a,
                                  const ResidueElement& b);
  ResidueElement inverse() const;
};

// Smallest positive quadratic non-residue mod p.
long smallest_nonresidue(long p);

// Image of an integral scalar in F_p.
ResidueElement residue_image(const PadicScalar& x);
// Image of an integral element of E in F_p (pi maps to 0).
ResidueElement residue_image(const QuadExtScalar& x);
ResidueElement residue_image_q(long p, const mpq_class& q);

// The trace t of a pair {lambda, 1/lambda} cut out by X^2 - tX + 1, together
// with whether the pair splits over F_p (discriminant t^2 - 4 a square).
struct TracePair {
  ResidueElement trace;
  bool split = false;
};

TracePair trace_pair(const ResidueElement& t);

// The roots of X^2 - tX + 1 themselves (in F_p or F_{p^2}).
std::pair<ResidueElement, ResidueElement> trace_pair_roots(
    const ResidueElement& t);

}  // namespace robba
