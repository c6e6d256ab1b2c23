#include "robba/colmez.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace robba {

namespace {

void check_gterm_spec(const GTermSpec& s) {
  if (s.p < 2) throw Error("g_term: prime must be at least 2");
  if (s.r < 1) throw Error("g_term: twist exponent r must be at least 1");
  if (s.n < 1) throw Error("g_term: level n must be at least 1");
  if (s.I < s.n) throw Error("g_term: product depth I must be at least n");
}

mpz_class pow_p(long p, long e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(e));
  return out;
}

// --- arithmetic in Q[T]/(m) with m monic over Z ---------------------------
//
// Elements are held as num/den with num an integer coefficient vector of
// length exactly deg(m) and den a positive integer.  Keeping the modulus
// monic over Z makes the Euclidean reduction denominator-free, so the only
// rational bookkeeping is the scalar den.

struct QuotRing {
  long p = 0;
  std::vector<mpz_class> m;  // monic, integer coefficients, degree >= 1
  long deg() const { return static_cast<long>(m.size()) - 1; }
};

struct QuotElt {
  std::vector<mpz_class> num;
  mpz_class den = 1;
};

QuotRing make_ring(long p, long n, long r) {
  ExactPoly modulus = cyclotomic_phi(p, n).pow(static_cast<unsigned long>(r + 1));
  QuotRing ring;
  ring.p = p;
  ring.m.reserve(modulus.coeffs().size());
  for (const mpq_class& q : modulus.coeffs()) {
    ring.m.emplace_back(q.get_num());  // cyclotomic powers are integral
  }
  return ring;
}

// Remainder of v modulo the monic modulus, in place; v is then resized to
// exactly deg(m) entries.
void reduce(const QuotRing& ring, std::vector<mpz_class>& v) {
  const long d = ring.deg();
  for (long k = static_cast<long>(v.size()) - 1; k >= d; --k) {
    if (v[static_cast<std::size_t>(k)] == 0) continue;
    const mpz_class c = v[static_cast<std::size_t>(k)];
    for (long i = 0; i < d; ++i) {
      v[static_cast<std::size_t>(k - d + i)] -= c * ring.m[static_cast<std::size_t>(i)];
    }
    v[static_cast<std::size_t>(k)] = 0;
  }
  v.resize(static_cast<std::size_t>(d), mpz_class(0));
}

void normalize(QuotElt& e) {
  mpz_class g = e.den;
  for (const mpz_class& z : e.num) {
    if (z != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    if (g == 1) return;
  }
  for (mpz_class& z : e.num) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(e.den.get_mpz_t(), e.den.get_mpz_t(), g.get_mpz_t());
}

QuotElt make_scalar(const QuotRing& ring, const mpz_class& num, const mpz_class& den) {
  QuotElt e;
  e.num.assign(static_cast<std::size_t>(ring.deg()), mpz_class(0));
  e.num[0] = num;
  e.den = den;
  return e;
}

QuotElt add(const QuotRing& ring, const QuotElt& a, const QuotElt& b) {
  QuotElt out;
  out.den = a.den * b.den;
  out.num.assign(static_cast<std::size_t>(ring.deg()), mpz_class(0));
  for (std::size_t i = 0; i < out.num.size(); ++i) {
    out.num[i] = a.num[i] * b.den + b.num[i] * a.den;
  }
  normalize(out);
  return out;
}

QuotElt sub(const QuotRing& ring, const QuotElt& a, const QuotElt& b) {
  QuotElt nb = b;
  for (mpz_class& z : nb.num) z = -z;
  return add(ring, a, nb);
}

QuotElt mul(const QuotRing& ring, const QuotElt& a, const QuotElt& b) {
  const std::size_t d = static_cast<std::size_t>(ring.deg());
  std::vector<mpz_class> conv(2 * d - 1, mpz_class(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (a.num[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (b.num[j] == 0) continue;
      conv[i + j] += a.num[i] * b.num[j];
    }
  }
  reduce(ring, conv);
  QuotElt out;
  out.num = std::move(conv);
  out.den = a.den * b.den;
  normalize(out);
  return out;
}

QuotElt pow_elt(const QuotRing& ring, QuotElt base, unsigned long e) {
  QuotElt acc = make_scalar(ring, 1, 1);
  while (e) {
    if (e & 1UL) acc = mul(ring, acc, base);
    e >>= 1UL;
    if (e) base = mul(ring, base, base);
  }
  return acc;
}

// phi_i(T) = Phi_p((1+T)^(p^(i-1))) reduced into the ring.
QuotElt phi_in_ring(const QuotRing& ring, long i) {
  QuotElt one_plus_t = make_scalar(ring, 1, 1);
  one_plus_t.num[1] = 1;
  unsigned long e = 1;
  for (long j = 1; j < i; ++j) e *= static_cast<unsigned long>(ring.p);
  QuotElt x = pow_elt(ring, one_plus_t, e);
  QuotElt acc = make_scalar(ring, 1, 1);
  QuotElt result = make_scalar(ring, 1, 1);
  for (long k = 1; k < ring.p; ++k) {
    acc = mul(ring, acc, x);
    result = add(ring, result, acc);
  }
  return result;
}

// One level term G_{m,r+1}^(I) reduced into the ring.
QuotElt g_term_in_ring(const QuotRing& ring, long r, long m, long I) {
  const unsigned long rp1 = static_cast<unsigned long>(r + 1);
  const QuotElt one = make_scalar(ring, 1, 1);

  QuotElt phi_m = phi_in_ring(ring, m);
  phi_m.den *= ring.p;  // phi_m / p
  QuotElt lead = sub(ring, one, pow_elt(ring, phi_m, rp1));
  QuotElt term = pow_elt(ring, lead, rp1);
  term.den *= pow_p(ring.p, m);

  for (long i = m + 1; i <= I; ++i) {
    QuotElt phi_i = phi_in_ring(ring, i);
    phi_i.den *= ring.p;
    QuotElt bracket = sub(ring, one, pow_elt(ring, sub(ring, one, phi_i), rp1));
    term = mul(ring, term, pow_elt(ring, bracket, rp1));
  }
  return term;
}

std::vector<mpq_class> to_rational_coeffs(const QuotElt& e) {
  std::size_t top = e.num.size();
  while (top > 0 && e.num[top - 1] == 0) --top;
  std::vector<mpq_class> out;
  out.reserve(top);
  for (std::size_t i = 0; i < top; ++i) {
    mpq_class q(e.num[i], e.den);
    q.canonicalize();
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace

long g_term_degree(const GTermSpec& spec) {
  check_gterm_spec(spec);
  long sum = 0;
  long level_size = 1;
  for (long i = 1; i < spec.n; ++i) level_size *= spec.p;
  for (long i = spec.n; i <= spec.I; ++i) {
    sum += level_size * (spec.p - 1);
    level_size *= spec.p;
  }
  return (spec.r + 1) * (spec.r + 1) * sum;
}

ExactPoly g_term(const GTermSpec& spec, long budget_cap) {
  const long degree = g_term_degree(spec);
  if (degree > budget_cap) {
    throw BudgetExceeded("g_term: degree " + std::to_string(degree) +
                         " exceeds budget " + std::to_string(budget_cap));
  }
  const unsigned long rp1 = static_cast<unsigned long>(spec.r + 1);
  const mpq_class inv_p(1, spec.p);
  const ExactPoly one = ExactPoly::constant(1);

  ExactPoly lead = one - cyclotomic_phi(spec.p, spec.n).scaled(inv_p).pow(rp1);
  mpq_class inv_pn(mpz_class(1), pow_p(spec.p, spec.n));
  inv_pn.canonicalize();
  ExactPoly term = lead.pow(rp1).scaled(inv_pn);

  for (long i = spec.n + 1; i <= spec.I; ++i) {
    ExactPoly bracket =
        one - (one - cyclotomic_phi(spec.p, i).scaled(inv_p)).pow(rp1);
    term = term * bracket.pow(rp1);
  }
  return term;
}

ExactPoly g_partial(long p, long r, long n_max, long I, long budget_cap) {
  if (n_max < 1) throw Error("g_partial: n_max must be at least 1");
  ExactPoly sum;
  for (long n = 1; n <= n_max; ++n) {
    sum = sum + g_term(GTermSpec{p, r, n, I}, budget_cap);
  }
  return sum;
}

CongruenceReport check_congruence(const ExactPoly& g, long p, long r, long n) {
  if (p < 2 || r < 1 || n < 1) throw Error("check_congruence: bad parameters");
  ExactPoly modulus = cyclotomic_phi(p, n).pow(static_cast<unsigned long>(r + 1));
  mpq_class target(mpz_class(1), pow_p(p, n));
  target.canonicalize();
  ExactPoly diff = g - ExactPoly::constant(target);
  auto [quot, rem] = ExactPoly::divrem(diff, modulus);
  (void)quot;
  CongruenceReport report;
  report.holds = rem.is_zero();
  report.remainder = rem.coeffs();
  report.modulus_degree = modulus.degree();
  return report;
}

CongruenceReport check_congruence_streamed(long p, long r, long n, long n_max,
                                           long I) {
  if (p < 2 || r < 1 || n < 1 || n_max < 1) {
    throw Error("check_congruence_streamed: bad parameters");
  }
  if (I < n_max) {
    throw Error("check_congruence_streamed: depth I must be at least n_max");
  }
  QuotRing ring = make_ring(p, n, r);
  QuotElt sum = make_scalar(ring, 0, 1);
  for (long m = 1; m <= n_max; ++m) {
    sum = add(ring, sum, g_term_in_ring(ring, r, m, I));
  }
  QuotElt diff = sub(ring, sum, make_scalar(ring, 1, pow_p(p, n)));

  CongruenceReport report;
  report.remainder = to_rational_coeffs(diff);
  report.holds = report.remainder.empty();
  report.modulus_degree = ring.deg();
  return report;
}

ResidueReport residue_c1_phi(long p, long r, long I, long budget_cap,
                             long digits) {
  if (p < 2 || r < 1 || I < 1) throw Error("residue_c1_phi: bad parameters");
  if (digits < 1) throw Error("residue_c1_phi: digits must be at least 1");
  const mpz_class pI = pow_p(p, I);
  if (pI > budget_cap) {
    throw BudgetExceeded("residue_c1_phi: deg t_I = p^I = " + pI.get_str() +
                         " exceeds budget " + std::to_string(budget_cap));
  }
  GTermSpec spec{p, r, 1, I};
  ExactPoly g = g_term(spec, g_term_degree(spec));

  // Trace of g over the zero set {zeta - 1 : zeta^(p^I) = 1} of t_I: shift
  // the variable so the zeros become the roots of unity themselves, then
  // pick out the exponents divisible by p^I.
  ExactPoly shifted = g.compose(ExactPoly({mpq_class(-1), mpq_class(1)}));
  const long step = static_cast<long>(pI.get_ui());
  mpq_class trace = 0;
  for (long k = 0; k <= shifted.degree(); k += step) {
    trace += shifted.coeff(static_cast<std::size_t>(k));
  }
  trace *= mpq_class(pI);

  const long certified = (r + 1) * (I - 1);
  ResidueReport report;
  report.value = PadicScalar::from_rational(p, -trace, digits).cap_abs(certified);
  report.certified_digits = certified;
  return report;
}

ResidueReport residue_c1_gamma(long p, long r, long n, long I, long t_prec,
                               long digits, const CharacterParams& params) {
  if (t_prec < 2) throw Error("residue_c1_gamma: t_prec must be at least 2");
  if (digits < 1) throw Error("residue_c1_gamma: digits must be at least 1");
  if (params.p != p) throw Error("residue_c1_gamma: character prime mismatch");
  GTermSpec spec{p, r, n, I};
  ExactPoly g = g_term(spec, g_term_degree(spec));
  TruncatedSeries gs = TruncatedSeries::from_poly(g, p, digits);

  // The gamma substitution consumes roughly v_p((top+3)!) relative digits
  // through its falling-factorial coefficients; over-provision the character.
  const long slack = (gs.top() + 8) / (p - 1) + 16;
  PadicScalar chi = chi_gamma(params, digits + slack);

  TruncatedSeries diff = gamma_apply(gs, chi) - gs;
  TruncatedSeries t_inv =
      invert_unit(t_over_T(p, t_prec, digits), t_prec).shifted_t(-1);
  PadicScalar value = residue_dt(t_inv * diff);

  ResidueReport report;
  report.certified_digits = value.abs_precision();
  report.value = std::move(value);
  return report;
}

BenoisResult benois_l_invariant(const Cocycle& c, const CharacterParams& params,
                                long digits) {
  if (c.r < 1) throw Error("benois_l_invariant: r must be at least 1");
  if (digits < 1) throw Error("benois_l_invariant: digits must be at least 1");
  const long p = params.p;
  if (c.a.p != p || c.b.p != p) {
    throw Error("benois_l_invariant: cocycle prime mismatch");
  }

  // t^r = T^r (t/T)^r carried far enough to cover both principal parts.
  const long neg = std::max({0L, -c.a.min_deg, -c.b.min_deg});
  const long width = neg + c.r + 8;
  TruncatedSeries t_over = t_over_T(p, width, digits);
  TruncatedSeries tr = TruncatedSeries::monomial(PadicScalar::one(p, digits), 0);
  for (long j = 0; j < c.r; ++j) tr = (tr * t_over).truncated_top(width);
  tr = tr.shifted_t(c.r);

  PadicScalar lambda = residue_dt(c.a * tr);
  PadicScalar mu = residue_dt(c.b * tr);

  const bool lambda_zero = lambda.is_zero_at_precision();
  const bool mu_zero = mu.is_zero_at_precision();
  if (lambda_zero && mu_zero) {
    throw IndeterminateClass(
        "benois_l_invariant: both residues vanish at working precision");
  }
  BenoisResult result;
  if (mu_zero) {
    result.inf = true;
    result.value = PadicScalar::zero(p);
    return result;
  }
  PadicScalar log_chi = log_chi_gamma(params, digits + 8);
  result.inf = false;
  result.value = -(log_chi * lambda / mu);
  return result;
}

}  // namespace robba
