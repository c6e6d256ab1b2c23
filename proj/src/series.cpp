#include "robba/series.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

#include "robba/errors.hpp"

namespace robba {

namespace {

constexpr long kInf = PadicScalar::kInf;

long add_bounds(long a, long b) {
  if (a == kInf || b == kInf) return kInf;
  return a + b;
}

// Certified lower bound for v_p of one represented coefficient.
long coeff_vbound(const PadicScalar& s) {
  return s.is_zero_at_precision() ? s.abs_precision() : s.valuation();
}

// Lower bound for v_p of any coefficient of f anywhere below its top:
// the window minimum together with the tail bound.
long full_vbound(const TruncatedSeries& f) {
  long m = f.tail_bound;
  for (const auto& s : f.c) m = std::min(m, coeff_vbound(s));
  return m;
}

void check_primes(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.p != g.p) throw Error("mixed primes in series arithmetic");
}

std::vector<mpz_class> poly_mul_z(const std::vector<mpz_class>& a,
                                  const std::vector<mpz_class>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<mpz_class> out(a.size() + b.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

TruncatedSeries TruncatedSeries::zeros(long p, long min_deg, long len) {
  TruncatedSeries out;
  out.p = p;
  out.min_deg = min_deg;
  out.c.assign(static_cast<std::size_t>(std::max<long>(len, 0)),
               PadicScalar::zero(p));
  return out;
}

TruncatedSeries TruncatedSeries::from_poly(const ExactPoly& f, long p,
                                           long digits) {
  TruncatedSeries out;
  out.p = p;
  out.top_exact = true;
  out.c.reserve(f.coeffs().size());
  for (const auto& q : f.coeffs())
    out.c.push_back(PadicScalar::from_rational(p, q, digits));
  return out;
}

TruncatedSeries TruncatedSeries::monomial(const PadicScalar& s, long d) {
  TruncatedSeries out;
  out.p = s.prime();
  out.min_deg = d;
  out.c = {s};
  out.top_exact = true;
  return out;
}

PadicScalar TruncatedSeries::coefficient(long d) const {
  if (d < min_deg) {
    return tail_exact() ? PadicScalar::zero(p)
                        : PadicScalar::big_oh(p, tail_bound);
  }
  if (d < top()) return c[static_cast<std::size_t>(d - min_deg)];
  if (top_exact) return PadicScalar::zero(p);
  throw PrecisionExhausted("series coefficient above the represented window");
}

const PadicScalar& TruncatedSeries::at(long d) const {
  if (d < min_deg || d >= top())
    throw Error("series window access out of range");
  return c[static_cast<std::size_t>(d - min_deg)];
}

TruncatedSeries TruncatedSeries::truncated_top(long w) const {
  TruncatedSeries out = *this;
  out.top_exact = false;
  if (w >= top()) {
    if (top_exact)  // degrees [top, w) really are zero; keep them represented
      out.c.resize(static_cast<std::size_t>(std::max<long>(w - min_deg, 0)),
                   PadicScalar::zero(p));
    return out;
  }
  out.c.resize(static_cast<std::size_t>(std::max<long>(w - min_deg, 0)));
  return out;
}

TruncatedSeries TruncatedSeries::trimmed_front() const {
  TruncatedSeries out = *this;
  std::size_t k = 0;
  while (k < out.c.size() && out.c[k].is_exact_zero()) ++k;
  out.c.erase(out.c.begin(), out.c.begin() + static_cast<std::ptrdiff_t>(k));
  out.min_deg += static_cast<long>(k);
  return out;
}

TruncatedSeries TruncatedSeries::shifted_t(long k) const {
  TruncatedSeries out = *this;
  out.min_deg += k;
  return out;
}

TruncatedSeries TruncatedSeries::scaled(const PadicScalar& s) const {
  TruncatedSeries out = *this;
  if (s.is_exact_zero()) {
    out.c.assign(out.c.size(), PadicScalar::zero(p));
    out.tail_bound = kInf;
    out.top_exact = true;
    return out;
  }
  for (auto& x : out.c) x = x * s;
  out.tail_bound = add_bounds(tail_bound, coeff_vbound(s));
  return out;
}

TruncatedSeries TruncatedSeries::capped_abs(long a) const {
  TruncatedSeries out = *this;
  for (auto& x : out.c) x = x.cap_abs(a);
  return out;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries out = *this;
  for (auto& x : out.c) x = -x;
  return out;
}

TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) {
  check_primes(f, g);
  TruncatedSeries out;
  out.p = f.p;
  out.min_deg = std::min(f.min_deg, g.min_deg);
  out.top_exact = f.top_exact && g.top_exact;
  long hi;
  if (out.top_exact) {
    hi = std::max(f.top(), g.top());
  } else {
    hi = std::min(f.top_exact ? kInf : f.top(),
                  g.top_exact ? kInf : g.top());
  }
  out.tail_bound = std::min(f.tail_bound, g.tail_bound);
  long len = std::max<long>(hi - out.min_deg, 0);
  out.c.reserve(static_cast<std::size_t>(len));
  for (long d = out.min_deg; d < out.min_deg + len; ++d)
    out.c.push_back(f.coefficient(d) + g.coefficient(d));
  return out;
}

TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g) {
  return f + (-g);
}

TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) {
  check_primes(f, g);
  if ((!f.tail_exact() && !g.top_exact) ||
      (!g.tail_exact() && !f.top_exact)) {
    throw PrecisionExhausted(
        "product of an inexact tail with an inexact top has no certified "
        "window");
  }
  TruncatedSeries out;
  out.p = f.p;
  out.min_deg = f.min_deg + g.min_deg;
  out.top_exact = f.top_exact && g.top_exact;
  long hi;
  if (out.top_exact) {
    hi = f.top() + g.top() - 1;
  } else {
    hi = std::min(f.top_exact ? kInf : f.top() + g.min_deg,
                  g.top_exact ? kInf : g.top() + f.min_deg);
  }
  long len = std::max<long>(hi - out.min_deg, 0);
  out.c.assign(static_cast<std::size_t>(len), PadicScalar::zero(f.p));
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i].is_exact_zero()) continue;
    for (std::size_t j = 0; j < g.c.size(); ++j) {
      long d = f.min_deg + static_cast<long>(i) + g.min_deg +
               static_cast<long>(j);
      if (d < out.min_deg || d >= out.min_deg + len) continue;
      std::size_t k = static_cast<std::size_t>(d - out.min_deg);
      out.c[k] = out.c[k] + f.c[i] * g.c[j];
    }
  }
  // Cross terms against an inexact tail land inside the window too; they are
  // bounded below by the tail bound plus the other factor's minimum.
  long e1 = add_bounds(f.tail_bound, full_vbound(g));
  long e2 = add_bounds(g.tail_bound, full_vbound(f));
  for (long d = out.min_deg; d < out.min_deg + len; ++d) {
    long e = kInf;
    if (!f.tail_exact() && d <= f.min_deg - 1 + g.top() - 1)
      e = std::min(e, e1);
    if (!g.tail_exact() && d <= g.min_deg - 1 + f.top() - 1)
      e = std::min(e, e2);
    if (e != kInf) {
      std::size_t k = static_cast<std::size_t>(d - out.min_deg);
      out.c[k] = out.c[k] + PadicScalar::big_oh(f.p, e);
    }
  }
  out.tail_bound = std::min(e1, e2);
  return out;
}

TruncatedSeries invert_unit(const TruncatedSeries& f, long len) {
  if (f.min_deg != 0 || !f.tail_exact())
    throw NotAUnit("invert_unit needs a power series supported in T^0 and up");
  if (f.c.empty() || f.c[0].is_zero_at_precision())
    throw NotAUnit("invert_unit: constant term has no invertible digit");
  long out_len = std::max<long>(std::min(len, f.top_exact ? len : f.top()), 0);
  TruncatedSeries out = TruncatedSeries::zeros(f.p, 0, out_len);
  PadicScalar b0 = f.c[0].inverse();
  if (out_len > 0) out.c[0] = b0;
  for (long k = 1; k < out_len; ++k) {
    PadicScalar s = PadicScalar::zero(f.p);
    for (long i = 1; i <= k; ++i)
      s = s + f.coefficient(i) * out.c[static_cast<std::size_t>(k - i)];
    out.c[static_cast<std::size_t>(k)] = -(b0 * s);
  }
  return out;
}

TruncatedSeries log_series_t(long p, long M, long digits) {
  TruncatedSeries out = TruncatedSeries::zeros(p, 1, M);
  for (long i = 1; i <= M; ++i) {
    mpq_class q(i % 2 ? 1 : -1, i);
    out.c[static_cast<std::size_t>(i - 1)] =
        PadicScalar::from_rational(p, q, digits);
  }
  return out;
}

TruncatedSeries t_over_T(long p, long M, long digits) {
  TruncatedSeries out = TruncatedSeries::zeros(p, 0, M);
  for (long j = 0; j < M; ++j) {
    mpq_class q(j % 2 ? -1 : 1, j + 1);
    out.c[static_cast<std::size_t>(j)] =
        PadicScalar::from_rational(p, q, digits);
  }
  return out;
}

PadicScalar residue_dt(const TruncatedSeries& f) {
  if (!f.top_exact && f.top() <= -1)
    throw PrecisionExhausted(
        "residue needs every negative degree certified, but the window stops "
        "below T^-1");
  PadicScalar s = PadicScalar::zero(f.p);
  long start = std::min<long>(-1, f.top() - 1);
  for (long d = start; d >= f.min_deg; --d) {
    const PadicScalar& x = f.at(d);
    s = ((-1 - d) % 2 == 0) ? s + x : s - x;
  }
  if (!f.tail_exact()) s = s + PadicScalar::big_oh(f.p, f.tail_bound);
  return s;
}

TruncatedSeries frobenius_apply(const TruncatedSeries& f, long cert_digits) {
  const long p = f.p;
  if (!f.top_exact && f.top() < 1)
    throw PrecisionExhausted(
        "frobenius substitution needs the series known at least mod T");
  long nmax_rel = 1;
  for (const auto& s : f.c) nmax_rel = std::max(nmax_rel, s.rel_precision());
  const long q = cert_digits >= 0 ? cert_digits : std::max<long>(2, nmax_rel + 8);
  const long digits = nmax_rel + q + 2;

  // Regular part: Horner in S = (1+T)^p - 1.  S has T-order 1, so each
  // multiplication preserves the T-adic window; an inexact input top W keeps
  // the image certified exactly mod T^W.
  TruncatedSeries S = TruncatedSeries::from_poly(one_plus_t_power(p, 1), p,
                                                 digits);
  TruncatedSeries out = TruncatedSeries::zeros(p, 0, 0);
  out.top_exact = true;
  const long R = std::max<long>(f.top(), 0);
  for (long d = R - 1; d >= 0; --d) {
    out = out * S + TruncatedSeries::monomial(f.coefficient(d), 0);
    if (!f.top_exact) out = out.truncated_top(f.top());
  }

  // Principal part: T^(-n) maps to T^(-np) (1 + vhat)^(-n) with
  // vhat = sum_{j=1}^{p-1} binom(p,j) T^(j-p), every coefficient divisible
  // by p.  Truncating the binomial series at vhat-order q leaves the image
  // exact at relative degrees > -(q+1) and certified O(p^(q+1)) below.
  long neg_hi = std::min<long>(f.top(), 0);
  if (f.min_deg < neg_hi) {
    std::vector<mpz_class> vhat(static_cast<std::size_t>(p), mpz_class(0));
    for (long j = 1; j <= p - 1; ++j)
      vhat[static_cast<std::size_t>(p - j)] =
          binomial_mpz(mpz_class(p), static_cast<unsigned long>(j));
    for (long d = f.min_deg; d < neg_hi; ++d) {
      const PadicScalar& a = f.at(d);
      if (a.is_exact_zero()) continue;
      long n = -d;
      std::vector<mpz_class> P(1, mpz_class(1));
      std::vector<mpz_class> pw(1, mpz_class(1));
      for (long m = 1; m <= q; ++m) {
        pw = poly_mul_z(pw, vhat);
        mpz_class cm =
            binomial_mpz(mpz_class(-n), static_cast<unsigned long>(m));
        if (P.size() < pw.size()) P.resize(pw.size(), mpz_class(0));
        for (std::size_t i = 0; i < pw.size(); ++i) P[i] += cm * pw[i];
      }
      const long width = static_cast<long>(P.size());
      const long tb = add_bounds(q + 1, coeff_vbound(a));
      TruncatedSeries term;
      term.p = p;
      term.top_exact = true;
      term.tail_bound = tb;
      term.min_deg = -n * p - (width - 1);
      term.c.assign(static_cast<std::size_t>(width), PadicScalar::zero(p));
      for (long x = 0; x < width; ++x) {
        PadicScalar coef =
            PadicScalar::from_integer(p, P[static_cast<std::size_t>(x)],
                                      digits) *
            a;
        if (x >= q + 1) coef = coef + PadicScalar::big_oh(p, tb);
        term.c[static_cast<std::size_t>(width - 1 - x)] = coef;
      }
      out = out + term;
    }
  }

  // Omitted coefficients below the input window have v_p >= tail_bound and
  // their images stay at degrees <= (min_deg - 1) p.
  if (!f.tail_exact()) {
    long cutoff = (f.min_deg - 1) * p;
    for (long d = out.min_deg; d < out.top() && d <= cutoff; ++d) {
      std::size_t k = static_cast<std::size_t>(d - out.min_deg);
      out.c[k] = out.c[k] + PadicScalar::big_oh(p, f.tail_bound);
    }
    out.tail_bound = std::min(out.tail_bound, f.tail_bound);
  }
  return out;
}

TruncatedSeries gamma_apply(const TruncatedSeries& f, const PadicScalar& chi) {
  const long p = f.p;
  if (chi.is_zero_at_precision() || chi.valuation() != 0)
    throw NotAUnit("gamma substitution needs a unit character value");
  const long W = f.top();
  const long nneg = std::max<long>(-f.min_deg, 0);
  const long big = chi.rel_precision() + 32;

  // S_gamma = (1+T)^chi - 1 = sum_{j>=1} binom(chi, j) T^j, by the falling
  // factorial recurrence.  T-order 1, so windows are preserved.
  const long s_top = std::max<long>(W, 1) + nneg + 3;
  TruncatedSeries S = TruncatedSeries::zeros(p, 1, s_top - 1);
  PadicScalar cj = chi;
  if (s_top >= 2) S.c[0] = cj;
  for (long j = 2; j <= s_top - 1; ++j) {
    cj = cj * (chi - PadicScalar::from_integer(p, j - 1, big)) /
         PadicScalar::from_integer(p, j, big);
    S.c[static_cast<std::size_t>(j - 1)] = cj;
  }

  TruncatedSeries out = TruncatedSeries::zeros(p, 0, 0);
  out.top_exact = true;
  for (long d = W - 1; d >= 0; --d) {
    out = out * S + TruncatedSeries::monomial(f.coefficient(d), 0);
    out = out.truncated_top(W);
  }

  // Principal part: gamma(T^-n) = chi^-n T^-n u^-n with the unit
  // u = S_gamma / (chi T); negative powers stay Laurent with no tail loss.
  long neg_hi = std::min<long>(W, 0);
  if (f.min_deg < neg_hi) {
    const PadicScalar chi_inv = chi.inverse();
    const long len_u = W - f.min_deg + 2;
    TruncatedSeries ui = invert_unit(S.shifted_t(-1).scaled(chi_inv), len_u);
    TruncatedSeries uin = ui;
    for (long n = 1; n <= nneg; ++n) {
      if (n > 1) uin = (uin * ui).truncated_top(len_u);
      long d = -n;
      if (d < f.min_deg || d >= neg_hi) continue;
      const PadicScalar& a = f.at(d);
      if (a.is_exact_zero()) continue;
      out = out + uin.scaled(a * chi_inv.pow(static_cast<unsigned long>(n)))
                      .shifted_t(-n);
    }
  }

  // An inexact input tail contaminates every output degree: gamma(T^d) for
  // an omitted d < min_deg spreads upward from degree d.
  if (!f.tail_exact()) {
    for (auto& x : out.c) x = x + PadicScalar::big_oh(p, f.tail_bound);
    out.tail_bound = std::min(out.tail_bound, f.tail_bound);
  }

  TruncatedSeries res = out.truncated_top(W);
  if (res.c.empty()) res.min_deg = W;
  res.tail_bound = std::min(res.tail_bound, f.tail_bound);
  return res;
}

std::optional<mpq_class> radius_valuation(const TruncatedSeries& f, long l) {
  if (l < 1) throw Error("radius_valuation: level must be >= 1");
  mpz_class w = pow_p(f.p, static_cast<unsigned long>(l - 1)) * (f.p - 1);
  std::optional<mpq_class> best;
  for (long d = f.min_deg; d < f.top(); ++d) {
    const PadicScalar& s = f.at(d);
    if (s.is_exact_zero()) continue;
    mpq_class cand = mpq_class(coeff_vbound(s)) + mpq_class(d) / mpq_class(w);
    cand.canonicalize();
    if (!best || cand < *best) best = cand;
  }
  return best;
}

}  // namespace robba
