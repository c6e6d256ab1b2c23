#pragma once

#include "robba/character.hpp"
#include "robba/exact_poly.hpp"
#include "robba/series.hpp"

namespace robba {

// One term of the level-decomposed G-series: parameters for
//   G_{n,r+1}^{(I)} = [1 - (phi_n/p)^(r+1)]^(r+1) * p^(-n)
//                     * prod_{n<i<=I} [1 - (1 - phi_i/p)^(r+1)]^(r+1).
struct GTermSpec {
  long p = 3;
  long r = 1;
  long n = 1;
  long I = 1;
};

// Degree of the materialized term: (r+1)^2 * sum_{n<=i<=I} p^(i-1)(p-1).
long g_term_degree(const GTermSpec& spec);

// The exact polynomial; BudgetExceeded when its degree would pass the cap.
ExactPoly g_term(const GTermSpec& spec, long budget_cap);

// Partial sum over 1 <= n <= n_max at common depth I.
ExactPoly g_partial(long p, long r, long n_max, long I, long budget_cap);

struct CongruenceReport {
  bool holds = false;                 // remainder exactly zero
  std::vector<mpq_class> remainder;  // exact remainder coefficients
  long modulus_degree = 0;           // degree of phi_n^(r+1)
};

// Exact check that g mod phi_n^(r+1) equals p^(-n), by Euclidean division.
CongruenceReport check_congruence(const ExactPoly& g, long p, long r, long n);

// The same congruence for the full partial sum, evaluated term by term in
// the quotient ring Q[T]/phi_n^(r+1) without materializing the sum.
CongruenceReport check_congruence_streamed(long p, long r, long n, long n_max,
                                           long I);

struct ResidueReport {
  PadicScalar value;
  long certified_digits = 0;
};

// -res( t_I^(-1) G_{1,r+1}^(I) dt ) over the open unit disc, with
// t_I = ((1+T)^(p^I) - 1)/p^I the level-I period approximation.  At every
// zero rho = zeta - 1 of t_I the residue denominator (1+rho)^(p^I) is
// exactly 1, so the sum of residues is the exact trace
//   p^I * sum_{p^I | k} [x^k] G(x-1),
// which equals (p-1)/p for every I >= 1; the returned value is its negative
// 1/p - 1.  budget_cap bounds deg t_I = p^I (BudgetExceeded above it).  The
// scalar carries `digits` digits, absolutely capped at the a-priori error
// exponent certified = (r+1)(I-1) of the level-I approximation.
ResidueReport residue_c1_phi(long p, long r, long I, long budget_cap,
                             long digits);

// res( (t/T)^(-1) (gamma - 1) G_{n,r+1}^(I) dt ): structurally an exact zero
// (the gamma-difference has exactly vanishing constant term and no principal
// part); certified_digits reports the absolute precision of that zero.
ResidueReport residue_c1_gamma(long p, long r, long n, long I, long t_prec,
                               long digits, const CharacterParams& params);

// A Galois cocycle presented by its two residue-generating series.
struct Cocycle {
  TruncatedSeries a;
  TruncatedSeries b;
  long r = 1;
};

struct BenoisResult {
  bool inf = false;
  PadicScalar value;  // meaningful when !inf
};

// L = -log chi(gamma) * res(a t^r dt) / res(b t^r dt); infinity when the
// denominator residue vanishes at precision while the numerator does not;
// IndeterminateClass when both vanish.
BenoisResult benois_l_invariant(const Cocycle& c, const CharacterParams& params,
                                long digits);

}  // namespace robba
