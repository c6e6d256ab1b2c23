#pragma once

#include "robba/character.hpp"
#include "robba/quadext.hpp"
#include "robba/series.hpp"

namespace robba {

// The weight-k semistable family: r = k - 2, L the semistable parameter.
struct SequenceParams {
  long p = 3;
  long k = 3;
  LValue L;
};

struct SeqTerm {
  mpz_class k_n;  // classical weight of the n-th crystalline neighbour
  QQuad a_n;      // its U_p (= T_p) eigenvalue, exact in E
};

// Finite L:   k_n = k + p^n (p-1),      a_n = p^(r/2) (1 + L p^n (p-1) / 2).
// L = inf:    k_n = k + p^(n^2) (p-1),  a_n = p^(r/2) (1 + p^n).
SeqTerm sequence_term(const SequenceParams& params, long n);

// y_n^2 for the dominant crystalline Satake parameter
// y_n = a_n (1 + u)/2, u = sqrt(1 - 4 p^(k_n - 1)/a_n^2) on the principal
// branch.  Carried to (valuation r) + max(24, extra) absolute digits, or to
// an internally capped precision when k_n is astronomically large.
QuadExtScalar y_squared(const SequenceParams& params, long n, long extra);

// Coordinates of the n-th point in the blow-up chart:
//   (s1, s2, xi1 : xi2) = (y_n^2, (1+p)^(k_n-1) - 1,
//                          y_n^2 - p^r : (1+p)^(k_n-1) - (1+p)^(k-1)),
// with (xi1 : xi2) normalized by the smaller-valuation coordinate (ties
// resolved toward xi2 = 1).
struct BlowupPoint {
  QuadExtScalar s1;
  QuadExtScalar s2;
  QuadExtScalar xi1;
  QuadExtScalar xi2;
};

BlowupPoint blowup_coords(const SequenceParams& params, long n, long extra);

// (y_n^2 - p^r) / p^n, the rescaled third coordinate.
QuadExtScalar normalized_third(const SequenceParams& params, long n,
                               long extra);

// ((1+p)^(k_n-1) - (1+p)^(k-1)) / p^n, the rescaled fourth coordinate.
PadicScalar normalized_fourth(const SequenceParams& params, long n,
                              long digits);

// The limit of the blow-up points:
//   (p^r, (1+p)^(k-1) - 1, L p^r (p-1) : (1+p)^(k-1) (p-1) log(1+p)),
// normalized like blowup_coords; (1 : 0) when L = inf.
BlowupPoint limit_point(const SequenceParams& params, long digits);

struct LScalar {
  bool inf = false;
  QuadExtScalar value;  // meaningful when !inf
};

// The fiber formula on the exceptional line over (p^r, (1+p)^(k-1) - 1):
//   (xi1 : xi2) -> -((1+p)^(r+1) log(1+p) / p^r) * xi1/xi2,
// infinity when xi2 = 0; NotOnFiber when (s1, s2) is off the fiber at the
// working precision.
LScalar l_invariant_formula(long p, long r, const BlowupPoint& pt,
                            long digits);

// Minus the fiber formula at the limit point: recovers L itself.
LScalar recover_semistable_parameter(const SequenceParams& params,
                                     long digits);

// The projective tangent direction cut out by the limit point.
std::pair<QuadExtScalar, QuadExtScalar> tangent_vector(const BlowupPoint& pt);

enum class LimitType { SemistableNoncrystalline, Crystalline };

// Crystalline exactly when the fourth coordinate vanishes (L = inf).
LimitType limit_type(const BlowupPoint& pt);

struct PsiReport {
  bool ok = false;
  long min_valuation = 0;  // least coefficient valuation of the residual
  long required = 0;       // the certified bound (M + 2) v(s1)
};

// Truncation defect of the psi-functional-equation solution
//   y(T) = sum_{n=0}^{M} s1^(n+1) (1+T)^(p^n):
// the residual y - s1 phi(y) - s1 (1+T) collapses to a single term
// -s1^(M+2) (1+T)^(p^(M+1)), so every coefficient has v_p >= (M+2) v(s1)
// at any T-precision.
PsiReport psi_relation_check(long p, const mpq_class& s1, long M, long t_prec);

}  // namespace robba
