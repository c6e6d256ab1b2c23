#include "robba/limits.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace robba {

namespace {

long twist_of(const SequenceParams& params) {
  const mpz_class p_mpz(params.p);
  if (params.p < 3 || params.p % 2 == 0 ||
      mpz_probab_prime_p(p_mpz.get_mpz_t(), 30) == 0) {
    throw Error("sequence: p must be an odd prime");
  }
  if (params.k < 3) throw Error("sequence: weight must be at least 3");
  if (!params.L.inf && params.L.v.p != params.p) {
    throw Error("sequence: L-parameter prime mismatch");
  }
  return params.k - 2;
}

mpz_class one_plus_p_pow(long p, long e) {
  mpz_class out;
  mpz_class base = p + 1;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

// Divide both projective coordinates by the one of smaller valuation (ties
// toward xi2, so generic points end at xi2 = 1).
void normalize_xi(BlowupPoint& pt) {
  const bool z1 = pt.xi1.is_zero_at_precision();
  const bool z2 = pt.xi2.is_zero_at_precision();
  if (z1 && z2) {
    throw DegeneratePoint(
        "blow-up chart: both projective coordinates vanish at precision");
  }
  QuadExtScalar pivot;
  if (z2) {
    pivot = pt.xi1;
  } else if (z1) {
    pivot = pt.xi2;
  } else {
    pivot = (pt.xi2.twice_valuation() <= pt.xi1.twice_valuation()) ? pt.xi2
                                                                   : pt.xi1;
  }
  pt.xi1 = pt.xi1 / pivot;
  pt.xi2 = pt.xi2 / pivot;
}

// Fiber membership at the precision carried by the point; returns r.
long fiber_guard(const BlowupPoint& pt) {
  const long p = pt.s1.prime();
  if (pt.s1.is_zero_at_precision()) {
    throw NotOnFiber("fiber: first coordinate vanishes at precision");
  }
  const long tv = pt.s1.twice_valuation();
  if (tv < 0 || tv % 2 != 0) {
    throw NotOnFiber("fiber: first coordinate is not a power of p");
  }
  const long r = tv / 2;
  const long digits = std::max<long>(pt.s1.x.rel_precision(), 1);
  QuadExtScalar pr = QuadExtScalar::from_base(
      PadicScalar::from_integer(p, pow_p(p, static_cast<unsigned long>(r)), digits));
  if (!same_value(pt.s1, pr)) {
    throw NotOnFiber("fiber: first coordinate differs from p^r");
  }
  QuadExtScalar s2ref = QuadExtScalar::from_base(
      PadicScalar::from_integer(p, one_plus_p_pow(p, r + 1) - 1, digits));
  if (!same_value(pt.s2, s2ref)) {
    throw NotOnFiber("fiber: second coordinate differs from (1+p)^(k-1) - 1");
  }
  if (pt.xi1.is_zero_at_precision() && pt.xi2.is_zero_at_precision()) {
    throw DegeneratePoint(
        "fiber: both projective coordinates vanish at precision");
  }
  return r;
}

// y^2 when the eigenvalue square carries a pi-component: the same dominant
// root of Y^2 - a_n Y + p^(k_n - 1), computed in the quadratic extension.
QuadExtScalar y_squared_quad(const SequenceParams& params, const SeqTerm& term,
                             const QQuad& a_sq, long extra) {
  const long p = params.p;
  const std::optional<mpq_class> va2 = vp_qquad(a_sq);
  if (!va2) throw Error("y_squared: degenerate eigenvalue");
  const mpq_class gap = mpq_class(mpz_class(term.k_n - 1)) - *va2;
  if (gap <= 0) throw Error("y_squared: weight too small for the chosen L");

  const long margin = std::max<long>(24, extra);
  const long work = margin + 16;
  const QuadExtScalar a_sq_ext = QuadExtScalar::from_qquad(a_sq, work);
  const QuadExtScalar one = QuadExtScalar::one(p, work);
  const QuadExtScalar half = QuadExtScalar::from_base(
      PadicScalar::from_rational(p, mpq_class(1, 2), work));

  QuadExtScalar u = one;
  if (gap <= margin + 8) {
    const unsigned long e = mpz_class(term.k_n - 1).get_ui();
    const QQuad radicand =
        QQuad(p, 1) - QQuad(p, mpq_class(mpz_class(4 * pow_p(p, e)))) / a_sq;
    const QuadExtScalar w = QuadExtScalar::from_qquad(radicand, work);
    // Newton from 1: the error valuation starts at gap and doubles per step.
    mpq_class reach = gap;
    while (reach < work + 8) {
      u = (u + w / u) * half;
      reach *= 2;
    }
  }
  const QuadExtScalar half_sum = (one + u) * half;
  QuadExtScalar y2 = a_sq_ext * half_sum * half_sum;
  mpz_class floor_va2;
  mpz_fdiv_q(floor_va2.get_mpz_t(), va2->get_num_mpz_t(),
             va2->get_den_mpz_t());
  const long cap = floor_va2.get_si() + margin;
  return QuadExtScalar(y2.x.cap_abs(cap), y2.y.cap_abs(cap));
}

// acc[d] += scale * C(N, d) for d < t_prec, i.e. the truncation of
// scale * (1+T)^N.  The row is generated incrementally.
void accumulate_binomial_row(std::vector<mpq_class>& acc, const mpz_class& N,
                             const mpq_class& scale, long t_prec) {
  mpz_class c = 1;  // C(N, 0)
  for (long d = 0; d < t_prec; ++d) {
    if (d > 0) {
      c *= N - (d - 1);
      mpz_class div(d);
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
      if (c == 0) break;  // d exceeded N
    }
    acc[static_cast<std::size_t>(d)] += scale * c;
  }
}

}  // namespace

SeqTerm sequence_term(const SequenceParams& params, long n) {
  const long r = twist_of(params);
  if (n < 1) throw Error("sequence_term: n must be at least 1");
  const long p = params.p;

  const long e = params.L.inf ? n * n : n;
  const mpz_class pe = pow_p(p, static_cast<unsigned long>(e));

  SeqTerm term;
  term.k_n = params.k + pe * (p - 1);

  QQuad factor(p, 1);
  if (params.L.inf) {
    factor = QQuad(p, mpq_class(1 + pow_p(p, static_cast<unsigned long>(n))));
  } else {
    mpq_class half_step(pe * (p - 1), 2);
    half_step.canonicalize();
    factor = QQuad(p, 1) + params.L.v * QQuad(p, half_step);
  }
  QQuad root(p, mpq_class(pow_p(p, static_cast<unsigned long>(r / 2))));
  if (r % 2 != 0) root = root.times_pi();
  term.a_n = root * factor;
  return term;
}

QuadExtScalar y_squared(const SequenceParams& params, long n, long extra) {
  twist_of(params);
  SeqTerm term = sequence_term(params, n);
  const long p = params.p;

  const QQuad a_sq = term.a_n * term.a_n;
  if (a_sq.b != 0) return y_squared_quad(params, term, a_sq, extra);
  if (a_sq.a == 0) throw Error("y_squared: degenerate eigenvalue");
  const long va = *vp_mpq(p, a_sq.a);
  const mpz_class gap = term.k_n - 1 - va;  // valuation of the radicand offset
  if (gap <= 0) throw Error("y_squared: weight too small for the chosen L");

  const long margin = std::max<long>(24, extra);
  const long work = margin + 16;  // relative working digits
  PadicScalar a_sq_scalar = PadicScalar::from_rational(p, a_sq.a, work);

  PadicScalar u;
  if (gap > margin + 8) {
    // The square-root correction enters only beyond the carried precision.
    u = PadicScalar::one(p, work);
  } else {
    const unsigned long e = mpz_class(term.k_n - 1).get_ui();
    mpq_class radicand = 1 - mpq_class(4 * pow_p(p, e)) / a_sq.a;
    u = hensel_sqrt(PadicScalar::from_rational(p, radicand, work));
  }
  PadicScalar half_sum =
      (PadicScalar::one(p, work) + u) / PadicScalar::from_integer(p, 2, work);
  PadicScalar y2 = a_sq_scalar * half_sum * half_sum;
  return QuadExtScalar::from_base(y2.cap_abs(va + margin));
}

BlowupPoint blowup_coords(const SequenceParams& params, long n, long extra) {
  const long r = twist_of(params);
  SeqTerm term = sequence_term(params, n);
  const long p = params.p;

  const long drop = 1 + (params.L.inf ? n * n : n);
  const long digits2 = std::max<long>(24, extra) + drop + 8;
  PadicScalar up = PadicScalar::from_integer(p, 1 + p, digits2);
  PadicScalar s2 = unit_pow(up, mpz_class(term.k_n - 1)) -
                   PadicScalar::one(p, digits2);
  PadicScalar s2_base = PadicScalar::from_integer(
      p, one_plus_p_pow(p, params.k - 1) - 1, digits2);

  BlowupPoint pt;
  pt.s1 = y_squared(params, n, extra);
  pt.s2 = QuadExtScalar::from_base(s2);
  pt.xi1 = pt.s1 - QuadExtScalar::from_base(PadicScalar::from_integer(
                       p, pow_p(p, static_cast<unsigned long>(r)),
                       std::max<long>(24, extra) + 16));
  pt.xi2 = QuadExtScalar::from_base(s2 - s2_base);
  normalize_xi(pt);
  return pt;
}

QuadExtScalar normalized_third(const SequenceParams& params, long n,
                               long extra) {
  const long r = twist_of(params);
  QuadExtScalar y2 = y_squared(params, n, extra);
  QuadExtScalar pr = QuadExtScalar::from_base(PadicScalar::from_integer(
      params.p, pow_p(params.p, static_cast<unsigned long>(r)),
      std::max<long>(24, extra) + 16));
  return (y2 - pr).shifted(-n);
}

PadicScalar normalized_fourth(const SequenceParams& params, long n,
                              long digits) {
  twist_of(params);
  if (n < 1) throw Error("normalized_fourth: n must be at least 1");
  if (digits < 1) throw Error("normalized_fourth: digits must be at least 1");
  SeqTerm term = sequence_term(params, n);
  const long p = params.p;

  const long drop = 1 + (params.L.inf ? n * n : n);
  const long work = digits + drop + 8;
  PadicScalar up = PadicScalar::from_integer(p, 1 + p, work);
  PadicScalar high = unit_pow(up, mpz_class(term.k_n - 1));
  PadicScalar low = unit_pow(up, mpz_class(params.k - 1));
  return (high - low).shifted(-n);
}

BlowupPoint limit_point(const SequenceParams& params, long digits) {
  const long r = twist_of(params);
  if (digits < 1) throw Error("limit_point: digits must be at least 1");
  const long p = params.p;

  BlowupPoint pt;
  pt.s1 = QuadExtScalar::from_base(PadicScalar::from_integer(
      p, pow_p(p, static_cast<unsigned long>(r)), digits));
  pt.s2 = QuadExtScalar::from_base(PadicScalar::from_integer(
      p, one_plus_p_pow(p, params.k - 1) - 1, digits));

  if (params.L.inf) {
    pt.xi1 = QuadExtScalar::one(p, digits);
    pt.xi2 = QuadExtScalar::zero(p);
    return pt;
  }
  PadicScalar log_up =
      iwasawa_log(PadicScalar::from_integer(p, 1 + p, digits + 4));
  pt.xi1 = QuadExtScalar::from_qquad(params.L.v, digits) *
           QuadExtScalar::from_base(PadicScalar::from_integer(
               p, pow_p(p, static_cast<unsigned long>(r)) * (p - 1), digits));
  pt.xi2 = QuadExtScalar::from_base(
      PadicScalar::from_integer(p, one_plus_p_pow(p, params.k - 1) * (p - 1),
                                digits + 4) *
      log_up);
  normalize_xi(pt);
  return pt;
}

LScalar l_invariant_formula(long p, long r, const BlowupPoint& pt,
                            long digits) {
  if (digits < 1) throw Error("l_invariant_formula: digits must be at least 1");
  const long fiber_r = fiber_guard(pt);
  if (fiber_r != r) {
    throw NotOnFiber("fiber: point sits over a different twist p^r");
  }
  LScalar out;
  if (pt.xi2.is_zero_at_precision()) {
    out.inf = true;
    out.value = QuadExtScalar::zero(p);
    return out;
  }
  PadicScalar log_up =
      iwasawa_log(PadicScalar::from_integer(p, 1 + p, digits + 4));
  PadicScalar prefactor =
      (PadicScalar::from_integer(p, one_plus_p_pow(p, r + 1), digits + 4) *
       log_up)
          .shifted(-r);
  out.inf = false;
  out.value = -(QuadExtScalar::from_base(prefactor) * (pt.xi1 / pt.xi2));
  return out;
}

LScalar recover_semistable_parameter(const SequenceParams& params,
                                     long digits) {
  const long r = twist_of(params);
  BlowupPoint lp = limit_point(params, digits);
  LScalar raw = l_invariant_formula(params.p, r, lp, digits);
  if (!raw.inf) raw.value = -raw.value;
  return raw;
}

std::pair<QuadExtScalar, QuadExtScalar> tangent_vector(const BlowupPoint& pt) {
  fiber_guard(pt);
  return {pt.xi1, pt.xi2};
}

LimitType limit_type(const BlowupPoint& pt) {
  fiber_guard(pt);
  return pt.xi2.is_zero_at_precision() ? LimitType::Crystalline
                                       : LimitType::SemistableNoncrystalline;
}

PsiReport psi_relation_check(long p, const mpq_class& s1, long M, long t_prec) {
  if (p < 2) throw Error("psi_relation_check: bad prime");
  if (M < 0) throw Error("psi_relation_check: tail length must be nonnegative");
  if (t_prec < 1) throw Error("psi_relation_check: T-precision must be positive");
  std::optional<long> vs = vp_mpq(p, s1);
  if (!vs || *vs < 1) {
    throw Error("psi_relation_check: the specialized S1 must have v(s1) > 0");
  }

  // Accumulate the first t_prec coefficients of y - s1 phi(y) - s1 (1+T).
  // phi acts on the basis by (1+T)^N -> (1+T)^(pN), so every term is a
  // truncated binomial row.
  std::vector<mpq_class> acc(static_cast<std::size_t>(t_prec), mpq_class(0));
  mpq_class power = s1;  // s1^(j+1)
  for (long j = 0; j <= M; ++j) {
    accumulate_binomial_row(acc, pow_p(p, static_cast<unsigned long>(j)),
                            power, t_prec);
    accumulate_binomial_row(acc, pow_p(p, static_cast<unsigned long>(j + 1)),
                            mpq_class(-power * s1), t_prec);
    power *= s1;
  }
  acc[0] -= s1;
  if (t_prec > 1) acc[1] -= s1;

  PsiReport report;
  report.required = (M + 2) * (*vs);
  bool any = false;
  long min_val = 0;
  for (const mpq_class& c : acc) {
    if (c == 0) continue;
    const long v = *vp_mpq(p, c);
    if (!any || v < min_val) min_val = v;
    any = true;
  }
  if (!any) {
    // Nothing survives the truncation window; the bound holds vacuously.
    report.ok = true;
    report.min_valuation = report.required;
    return report;
  }
  report.min_valuation = min_val;
  report.ok = min_val >= report.required;
  return report;
}

}  // namespace robba
