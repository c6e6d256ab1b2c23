#pragma once

#include <vector>

#include "robba/exact_poly.hpp"
#include "robba/padic.hpp"

namespace robba {

// Truncated Laurent series over Q_p: a window of coefficients for degrees
// [min_deg, min_deg + c.size()), each a PadicScalar with its own precision.
//
// Degrees outside the window carry certified information too:
//  * below min_deg: every omitted coefficient has v_p >= tail_bound;
//    tail_bound == PadicScalar::kInf means the principal part is exact
//    (all lower coefficients are exactly zero);
//  * at and above top(): exactly zero when top_exact (the series is a
//    Laurent polynomial), otherwise unknown.
//
// T_precision in the sense of the window length is c.size().
struct TruncatedSeries {
  long p = 3;
  long min_deg = 0;
  std::vector<PadicScalar> c;
  long tail_bound = PadicScalar::kInf;
  bool top_exact = false;

  long t_precision() const { return static_cast<long>(c.size()); }
  long top() const { return min_deg + static_cast<long>(c.size()); }
  bool tail_exact() const { return tail_bound == PadicScalar::kInf; }

  static TruncatedSeries zeros(long p, long min_deg, long len);
  // Laurent polynomial from exact coefficients, each at `digits` digits.
  static TruncatedSeries from_poly(const ExactPoly& f, long p, long digits);
  static TruncatedSeries monomial(const PadicScalar& s, long d);

  // coefficient at degree d; exact zero / big-oh below the window per the
  // tail contract, exact zero above an exact top; throws PrecisionExhausted
  // at or above an inexact top.
  PadicScalar coefficient(long d) const;
  const PadicScalar& at(long d) const;  // in-window access only

  // drop any represented degrees >= w and forget exactness above.
  TruncatedSeries truncated_top(long w) const;
  // drop leading exact zeros at the bottom of the window (tail stays valid).
  TruncatedSeries trimmed_front() const;
  TruncatedSeries shifted_t(long k) const;  // multiply by T^k
  TruncatedSeries scaled(const PadicScalar& s) const;
  // cap the absolute precision of every represented coefficient.
  TruncatedSeries capped_abs(long a) const;

  TruncatedSeries operator-() const;
  friend TruncatedSeries operator+(const TruncatedSeries& f,
                                   const TruncatedSeries& g);
  friend TruncatedSeries operator-(const TruncatedSeries& f,
                                   const TruncatedSeries& g);
  friend TruncatedSeries operator*(const TruncatedSeries& f,
                                   const TruncatedSeries& g);
};

// Inverse of a unit power series: min_deg == 0, exact principal part, unit
// constant term (NotAUnit otherwise); `len` output coefficients.
TruncatedSeries invert_unit(const TruncatedSeries& f, long len);

// log(1+T) = sum_{i>=1} (-1)^(i+1) T^i / i to M terms, coefficients carried
// at `digits` significant digits.
TruncatedSeries log_series_t(long p, long M, long digits);

// log(1+T)/T as a unit power series, window [0, M).
TruncatedSeries t_over_T(long p, long M, long digits);

// res(f dt) with dt = dT/(1+T): the T^(-1) coefficient of f/(1+T), i.e. the
// alternating sum f_(-1) - f_(-2) + f_(-3) - ... over the principal part.
// An inexact tail contributes a certified O(p^tail_bound).
PadicScalar residue_dt(const TruncatedSeries& f);

// Substitution T -> (1+T)^p - 1.  Negative powers are expanded around
// T = infinity, where (1+T)^p - 1 = T^p (1 + vhat) with v_p-positive vhat;
// the expansion is truncated at vhat-order `cert_digits`, which caps the
// certified absolute precision of the principal-part image at
// cert_digits + 1 and sets the output tail bound accordingly.
// cert_digits < 0 picks a default from the coefficient precisions.
TruncatedSeries frobenius_apply(const TruncatedSeries& f,
                                long cert_digits = -1);

// Substitution T -> (1+T)^chi - 1 for a unit chi (the gamma action when chi
// is the cyclotomic character value).  Exact on principal parts: S_gamma =
// chi T * (unit), so negative powers stay Laurent with no tail loss.
TruncatedSeries gamma_apply(const TruncatedSeries& f, const PadicScalar& chi);

// Certified lower bound for the valuation of f on |T| = |zeta_l - 1|,
// taken over the represented window (big-oh coefficients contribute their
// certified bound).  nullopt when every represented coefficient is exactly
// zero.
std::optional<mpq_class> radius_valuation(const TruncatedSeries& f, long l);

}  // namespace robba
