#include "robba/classifier.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "robba/limits.hpp"
#include "robba/rationals.hpp"

namespace robba {

namespace {

void check_prime(long p) {
  const mpz_class p_mpz(p);
  if (p < 3 || p % 2 == 0 || mpz_probab_prime_p(p_mpz.get_mpz_t(), 30) == 0) {
    throw Error("classifier: p must be an odd prime");
  }
}

void check_weight_range(long p, long k) {
  if (k < 3 || k > p + 1) {
    throw WeightOutOfRange("classifier: weight must lie in [3, p + 1]");
  }
}

// (k - 2)/2, the half-integer the nu-ladder is anchored to.
mpq_class half_weight(long k) {
  mpq_class h(k - 2, 2);
  h.canonicalize();
  return h;
}

// H_- + H_+ for the weight k.
mpq_class harmonic_window(long k) {
  auto [vm, vp] = v_plus_minus(k);
  return harmonic(static_cast<unsigned long>(vm)) +
         harmonic(static_cast<unsigned long>(vp));
}

ReductionShape irreducible_shape(long p, long c, bool conditional,
                                 std::string basis) {
  ReductionShape s;
  s.kind = ShapeKind::IrreducibleInertia;
  s.c = irreducible_orbit_rep(p, c);
  s.conditional = conditional;
  s.basis = std::move(basis);
  return s;
}

ReductionShape reducible_shape(long i, long j, bool conditional,
                               std::string basis) {
  ReductionShape s;
  s.kind = ShapeKind::ReducibleInertia;
  s.i = std::max(i, j);
  s.j = std::min(i, j);
  s.conditional = conditional;
  s.basis = std::move(basis);
  return s;
}

// Image of x in F_p, guarding the valuation precondition of the lambda
// formulas: a single unramified scalar must be a unit, a trace only integral.
ResidueElement residue_checked(long p, const QQuad& x, bool need_unit,
                               const char* ctx) {
  std::optional<mpq_class> v = vp_qquad(x);
  if (need_unit) {
    if (!v || *v != 0) throw RegimeMismatch(ctx);
  } else if (v && *v < 0) {
    throw RegimeMismatch(ctx);
  }
  return ResidueElement::in_fp(p, residue_of_qquad(x));
}

long floor_q(const mpq_class& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return f.get_si();
}

}  // namespace

std::pair<long, long> v_plus_minus(long k) {
  if (k < 3) throw WeightOutOfRange("weight split: k must be at least 3");
  if (k % 2 == 1) return {(k - 3) / 2, (k - 1) / 2};
  return {k / 2 - 2, k / 2};
}

mpq_class gp_shift(long j) {
  if (j % 2 != 0) throw OddArgument("harmonic shift: j must be even");
  if (j < 2) throw Error("harmonic shift: j must be at least 2");
  return harmonic(static_cast<unsigned long>(j / 2)) +
         harmonic(static_cast<unsigned long>(j / 2 - 1));
}

Nu Nu::finite(mpq_class q) {
  Nu n;
  n.kind = Kind::Finite;
  n.v = std::move(q);
  return n;
}

Nu Nu::plus_inf() {
  Nu n;
  n.kind = Kind::PlusInf;
  return n;
}

Nu Nu::minus_inf() {
  Nu n;
  n.kind = Kind::MinusInf;
  return n;
}

bool Nu::lt(const mpq_class& q) const {
  switch (kind) {
    case Kind::MinusInf:
      return true;
    case Kind::PlusInf:
      return false;
    default:
      return v < q;
  }
}

bool Nu::le(const mpq_class& q) const {
  switch (kind) {
    case Kind::MinusInf:
      return true;
    case Kind::PlusInf:
      return false;
    default:
      return v <= q;
  }
}

bool Nu::eq(const mpq_class& q) const { return kind == Kind::Finite && v == q; }

bool Nu::is_integer() const { return kind == Kind::Finite && v.get_den() == 1; }

Nu nu_invariant(long p, long k, const LValue& L) {
  check_prime(p);
  if (k < 3) throw WeightOutOfRange("nu: weight must be at least 3");
  if (L.inf) return Nu::minus_inf();
  if (L.v.p != p) throw Error("nu: L-parameter prime mismatch");
  const QQuad shifted = L.v - QQuad(p, harmonic_window(k));
  std::optional<mpq_class> v = vp_qquad(shifted);
  if (!v) return Nu::plus_inf();
  return Nu::finite(*v);
}

long irreducible_orbit_rep(long p, long c) {
  check_prime(p);
  const long q = p * p - 1;
  const long cm = ((c % q) + q) % q;
  if (cm % (p + 1) == 0) {
    throw Error("orbit: exponent is fixed by the level-2 twist");
  }
  return std::min(cm, (cm * p) % q);
}

ReductionShape classify_inertia(long p, long k, const Nu& nu) {
  check_prime(p);
  check_weight_range(p, k);
  const bool unconditional_weight = (k == 3) || ((k == 4 || k == 5) && p >= 5);
  const bool conditional =
      !(nu.kind == Nu::Kind::MinusInf || unconditional_weight);
  const std::string basis = (nu.kind == Nu::Kind::MinusInf)
                                ? "fontaine-edixhoven"
                                : "zigzag-ladder";
  const mpq_class half = half_weight(k);
  if (nu.lt(1 - half)) {
    return irreducible_shape(p, k - 1, conditional, basis);
  }
  const long m_top = (k % 2 == 1) ? (k - 1) / 2 : (k - 2) / 2;
  for (long m = 1; m < m_top; ++m) {
    if (nu.eq(m - half)) {
      return reducible_shape(k - 1 - m, m, conditional, basis);
    }
    if (nu.lt(m + 1 - half)) {
      return irreducible_shape(p, (k - 1 - m) + p * m, conditional, basis);
    }
  }
  if (k % 2 == 1) {
    // Everything at or above the middle rung: nu >= 1/2.
    return reducible_shape((k - 1) / 2, (k - 1) / 2, conditional, basis);
  }
  if (nu.eq(0)) return reducible_shape(k / 2, k / 2 - 1, conditional, basis);
  return irreducible_shape(p, k / 2 + p * (k / 2 - 1), conditional, basis);
}

ReductionShape classify_full_small_weight(long p, long k, const LValue& L) {
  check_prime(p);
  if (k < 3 || k > 5) {
    throw WeightOutOfRange("small-weight table: k must be 3, 4, or 5");
  }
  if (k >= 4 && p < 5) {
    throw WeightOutOfRange("small-weight table: k = 4, 5 require p >= 5");
  }
  check_weight_range(p, k);
  const Nu nu = nu_invariant(p, k, L);
  const mpq_class window = harmonic_window(k);

  if (k == 3) {
    if (nu.lt(mpq_class(1, 2))) {
      return irreducible_shape(p, 2, false, "k3-table");
    }
    ReductionShape s = reducible_shape(1, 1, false, "k3-table");
    s.kind = ShapeKind::ReducibleFull;
    s.has_trace = true;
    const QQuad t = -(L.v - QQuad(p, window)).over_pi();
    s.trace = trace_pair(residue_checked(p, t, false, "k = 3 trace"));
    return s;
  }

  if (k == 4) {
    if (nu.lt(0)) return irreducible_shape(p, 3, false, "k4-table");
    if (nu.eq(0)) {
      ReductionShape s = reducible_shape(2, 1, false, "k4-table");
      s.kind = ShapeKind::ReducibleFull;
      s.has_lambda = true;
      const QQuad lam = QQuad(p, -2) * (L.v - QQuad(p, window));
      s.lambda = residue_checked(p, lam, true, "k = 4 lambda");
      return s;
    }
    return irreducible_shape(p, 2 + p, false, "k4-table");
  }

  // k == 5.
  if (nu.lt(mpq_class(-1, 2))) {
    return irreducible_shape(p, 4, false, "k5-table");
  }
  if (nu.eq(mpq_class(-1, 2))) {
    ReductionShape s = reducible_shape(3, 1, false, "k5-table");
    s.kind = ShapeKind::ReducibleFull;
    s.has_lambda = true;
    const QQuad lam = QQuad(p, -3) * (L.v - QQuad(p, window)).times_pi();
    s.lambda = residue_checked(p, lam, true, "k = 5 lambda");
    return s;
  }
  if (nu.lt(mpq_class(1, 2))) {
    return irreducible_shape(p, 3 + p, false, "k5-table");
  }
  ReductionShape s = reducible_shape(2, 2, false, "k5-table");
  s.kind = ShapeKind::ReducibleFull;
  s.has_trace = true;
  const QQuad t = QQuad(p, 2) * (L.v - QQuad(p, window)).over_pi();
  s.trace = trace_pair(residue_checked(p, t, false, "k = 5 trace"));
  return s;
}

ReductionShape bm_row(long p, long k, const Nu& nu) {
  check_prime(p);
  if (k < 4 || k % 2 != 0) {
    throw WeightOutOfRange("crystalline rows: k must be even and >= 4");
  }
  check_weight_range(p, k);
  const std::string basis = "bm-rows";
  if (nu.gt(0)) {
    return irreducible_shape(p, k / 2 + p * (k / 2 - 1), false, basis);
  }
  if (nu.eq(0)) return reducible_shape(k / 2, k / 2 - 1, false, basis);
  // nu < 0, where nu = v_p(L); the three subcases of the ladder's bottom.
  mpq_class cutoff(4 - k, 2);
  cutoff.canonicalize();
  if (nu.lt(cutoff)) return irreducible_shape(p, k - 1, false, basis);
  if (nu.is_integer()) {
    const long nv = static_cast<long>(nu.v.get_num().get_si());
    return reducible_shape(k / 2 - nv, k / 2 + nv - 1, false, basis);
  }
  const long fl = floor_q(nu.v);
  return irreducible_shape(p, (k / 2 - fl) + p * (k / 2 + fl - 1), false,
                           basis);
}

ReductionShape gp_row(long p, long k, const Nu& nu) {
  check_prime(p);
  if (k < 3 || k % 2 == 0) {
    throw WeightOutOfRange("inertia rows: k must be odd and >= 3");
  }
  check_weight_range(p, k);
  const std::string basis = "gp-rows";
  const mpq_class half = half_weight(k);
  if (nu.lt(1 - half)) return irreducible_shape(p, k - 1, false, basis);
  if (nu.ge(mpq_class(1, 2))) {
    return reducible_shape((k - 1) / 2, (k - 1) / 2, false, basis);
  }
  for (long l = 0; l <= (k - 5) / 2; ++l) {
    const long e = -l + (k - 3) / 2;
    mpq_class lo(-1 - 2 * l, 2);
    mpq_class hi(1 - 2 * l, 2);
    lo.canonicalize();
    hi.canonicalize();
    if (nu.eq(lo)) return reducible_shape(k - 1 - e, e, false, basis);
    if (nu.gt(lo) && nu.lt(hi)) {
      return irreducible_shape(p, (k - 1) + (p - 1) * e, false, basis);
    }
  }
  throw Error("inertia rows: the regions failed to cover nu");
}

bool same_inertia_shape(long p, const ReductionShape& a,
                        const ReductionShape& b) {
  const bool a_irr = a.kind == ShapeKind::IrreducibleInertia;
  const bool b_irr = b.kind == ShapeKind::IrreducibleInertia;
  if (a_irr != b_irr) return false;
  if (a_irr) {
    return irreducible_orbit_rep(p, a.c) == irreducible_orbit_rep(p, b.c);
  }
  const long q = p - 1;
  auto norm = [q](long x) { return ((x % q) + q) % q; };
  const long a1 = norm(a.i), a2 = norm(a.j);
  const long b1 = norm(b.i), b2 = norm(b.j);
  return std::minmax(a1, a2) == std::minmax(b1, b2);
}

BmReport bm_crosscheck(long p, long k, const LValue& L) {
  check_prime(p);
  if (k < 4 || k % 2 != 0) {
    throw WeightOutOfRange("crystalline comparison: k must be even and >= 4");
  }
  check_weight_range(p, k);
  if (L.inf) throw Error("crystalline comparison: L must be finite");
  if (L.v.p != p) throw Error("crystalline comparison: L prime mismatch");

  const long h = k / 2;
  const QQuad inner =
      QQuad(p, 2 * harmonic(static_cast<unsigned long>(h - 1))) - L.v;
  QQuad a = QQuad(p, -1) + QQuad(p, h * (h - 1)) * inner;
  if (h % 2 != 0) a = -a;

  BmReport rep;
  rep.a = a;
  rep.va = a.is_zero() ? Nu::plus_inf() : Nu::finite(*vp_qquad(a));
  rep.nu = nu_invariant(p, k, L);
  rep.via_a = bm_row(p, k, rep.va);
  rep.via_nu = classify_inertia(p, k, rep.nu);
  const bool v_eq =
      rep.va.kind == rep.nu.kind &&
      (rep.va.kind != Nu::Kind::Finite || rep.va.v == rep.nu.v);
  rep.matches = v_eq && same_inertia_shape(p, rep.via_a, rep.via_nu);
  return rep;
}

ZigzagParams zigzag_params(long p, long k, const LValue& L, long n) {
  check_prime(p);
  check_weight_range(p, k);
  if (n < 1) throw Error("zigzag: n must be at least 1");

  SequenceParams sp;
  sp.p = p;
  sp.k = k;
  sp.L = L;
  const SeqTerm term = sequence_term(sp, n);
  const long r = k - 2;
  const auto [vm, vp] = v_plus_minus(k);

  const mpz_class top_minus = term.k_n - 2 - vm;
  const mpz_class top_plus = term.k_n - 2 - vp;
  const mpz_class cc = binomial_mpz(top_minus, static_cast<unsigned long>(vp)) *
                       binomial_mpz(top_plus, static_cast<unsigned long>(vm)) *
                       pow_p(p, static_cast<unsigned long>(r));
  const QQuad num = term.a_n * term.a_n - QQuad(p, mpq_class(cc));

  ZigzagParams out;
  out.nu = nu_invariant(p, k, L);
  out.t = vp_mpz(p, mpz_class(term.k_n - k));
  if (num.is_zero()) {
    out.tau_inf = true;
    return out;
  }
  const QQuad den = QQuad(p, p) * term.a_n;
  out.tau = *vp_qquad(num / den);

  // The closed forms certify the stable range; below it the direct value
  // disagrees and the parameters are not yet meaningful.
  mpq_class base(r - 2 + 2 * n, 2);
  base.canonicalize();
  if (L.inf) {
    if (out.tau != base) {
      throw RegimeNotReached("zigzag: n below the stable range");
    }
  } else if (out.nu.kind == Nu::Kind::Finite) {
    if (out.tau != base + out.nu.v) {
      throw RegimeNotReached("zigzag: n below the stable range");
    }
  }
  return out;
}

BinomialValuationReport binomial_valuation(long p, long c, long i,
                                           unsigned long j) {
  check_prime(p);
  if (c < 1 || c > p - 1) throw Error("binomial check: c out of range");
  if (i < 1) throw Error("binomial check: i must be at least 1");
  const mpz_class top = c * pow_p(p, static_cast<unsigned long>(i - 1));
  if (j < 1 || mpz_class(j) > top) {
    throw Error("binomial check: j out of range");
  }
  BinomialValuationReport rep;
  rep.computed = vp_mpz(p, binomial_mpz(top, j));
  rep.formula = i - 1 - vp_mpz(p, mpz_class(j));
  rep.match = rep.computed == rep.formula;
  return rep;
}

}  // namespace robba
