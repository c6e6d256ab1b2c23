#pragma once

#include <string>

#include "robba/quadext.hpp"
#include "robba/residue_field.hpp"

namespace robba {

// (v_minus, v_plus): the Hodge-type split of the weight,
// odd k: ((k-3)/2, (k-1)/2); even k: (k/2 - 2, k/2).
std::pair<long, long> v_plus_minus(long k);

// The harmonic shift a(j) = H_{j/2} + H_{j/2-1} for even j >= 2.
mpq_class gp_shift(long j);

// nu = v_p(L - H_{v_minus} - H_{v_plus}), the position of L against the
// degenerate locus; +infinity when L sits on it, -infinity for L = inf.
struct Nu {
  enum class Kind { Finite, PlusInf, MinusInf };
  Kind kind = Kind::Finite;
  mpq_class v;  // meaningful when finite

  static Nu finite(mpq_class q);
  static Nu plus_inf();
  static Nu minus_inf();

  bool lt(const mpq_class& q) const;   // nu <  q
  bool le(const mpq_class& q) const;   // nu <= q
  bool eq(const mpq_class& q) const;   // nu == q
  bool ge(const mpq_class& q) const { return !lt(q); }
  bool gt(const mpq_class& q) const { return !le(q); }
  bool is_integer() const;
};

Nu nu_invariant(long p, long k, const LValue& L);

enum class ShapeKind {
  IrreducibleInertia,  // ind(omega_2^c) on inertia
  ReducibleInertia,    // omega^i + omega^j on inertia
  ReducibleFull        // reducible with identified unramified part
};

struct ReductionShape {
  ShapeKind kind = ShapeKind::IrreducibleInertia;
  long c = 0;      // irreducible: orbit representative of the omega_2 power
  long i = 0;      // reducible: omega exponents, i >= j as produced
  long j = 0;
  bool has_lambda = false;
  ResidueElement lambda;  // unramified parameter when a single scalar
  bool has_trace = false;
  TracePair trace;        // unramified pair via its trace
  bool conditional = true;  // depends on the zigzag conjecture
  std::string basis;        // short provenance label for reports
};

// Orbit representative of omega_2^c under c -> pc mod p^2 - 1.
long irreducible_orbit_rep(long p, long c);

// The inertia-level classification of V_{k,L}bar for 3 <= k <= p+1
// (WeightOutOfRange otherwise), scanning nu against the ladder
// m - (k-2)/2, m = 1, 2, ...
ReductionShape classify_inertia(long p, long k, const Nu& nu);

// Unconditional small-weight classification with unramified data:
// k = 3 (p >= 3), k = 4 (p >= 5), k = 5 (p >= 5).
ReductionShape classify_full_small_weight(long p, long k, const LValue& L);

// Independent re-encoding of the even-weight crystalline-comparison rows.
ReductionShape bm_row(long p, long k, const Nu& nu);

struct BmReport {
  QQuad a;        // the matched crystalline eigenvalue combination
  Nu va;          // its valuation
  Nu nu;          // the invariant
  bool matches = false;  // va == nu and the shapes agree
  ReductionShape via_a;
  ReductionShape via_nu;
};

// a = (-1)^(k/2) (-1 + (k/2)(k/2-1)(-L + 2 H_{k/2-1})): the eigenvalue the
// even-weight rows see; its valuation must reproduce nu and the row tables
// must agree.
BmReport bm_crosscheck(long p, long k, const LValue& L);

// Independent re-encoding of the odd-weight ladder rows.
ReductionShape gp_row(long p, long k, const Nu& nu);

// Shapes agree on inertia (irreducible: same omega_2 orbit; reducible:
// same unordered pair of omega exponents mod p-1).
bool same_inertia_shape(long p, const ReductionShape& a,
                        const ReductionShape& b);

struct ZigzagParams {
  bool tau_inf = false;
  mpq_class tau;   // v_p of the normalized defect, maybe half-integral
  mpz_class t;     // v_p(k_n - 2 - r) = v_p(k_n - k)
  Nu nu;
};

// tau_n = v_p( (a_n^2 - C(k_n-2-v_minus, v_plus) C(k_n-2-v_plus, v_minus) p^r)
//              / (p a_n) ),  t_n = v_p(k_n - k), for the n-th neighbour.
// Closed forms: tau_n = r/2 - 1 + n + nu, t_n = n for finite L;
// tau_n = r/2 - 1 + n, t_n = n^2 for L = inf.
ZigzagParams zigzag_params(long p, long k, const LValue& L, long n);

struct BinomialValuationReport {
  long computed = 0;
  long formula = 0;
  bool match = false;
};

// v_p(C(c p^(i-1), j)) against the closed form i - 1 - v_p(j), for
// 1 <= c <= p-1, i >= 1, 1 <= j <= c p^(i-1).
BinomialValuationReport binomial_valuation(long p, long c, long i,
                                           unsigned long j);

}  // namespace robba
