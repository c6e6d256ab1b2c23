#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "robba/classifier.hpp"
#include "robba/errors.hpp"
#include "robba/quadext.hpp"
#include "robba/rationals.hpp"
#include "robba/residue_field.hpp"

using namespace robba;

namespace {

mpq_class q_of(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

LValue lv(long p, const mpq_class& a, const mpq_class& b = 0) {
  return LValue::finite(QQuad(p, a, b));
}

// Deterministic generator for the randomized cross-checks.
struct Lcg {
  unsigned long long s;
  explicit Lcg(unsigned long long seed) : s(seed) {}
  long next(long lo, long hi) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<long>((s >> 33) %
                                  static_cast<unsigned long long>(hi - lo + 1));
  }
};

// Half- and quarter-integer sweep across every ladder region plus the poles.
std::vector<Nu> nu_grid() {
  std::vector<Nu> grid;
  for (long m = -10; m <= 10; ++m) grid.push_back(Nu::finite(q_of(m, 2)));
  for (long m = -9; m <= 9; m += 2) grid.push_back(Nu::finite(q_of(m, 4)));
  grid.push_back(Nu::plus_inf());
  grid.push_back(Nu::minus_inf());
  return grid;
}

std::string nu_label(const Nu& nu) {
  switch (nu.kind) {
    case Nu::Kind::PlusInf:
      return "+inf";
    case Nu::Kind::MinusInf:
      return "-inf";
    default:
      return nu.v.get_str();
  }
}

}  // namespace

TEST_CASE("weight split and harmonic shift") {
  CHECK(v_plus_minus(3) == std::pair<long, long>{0, 1});
  CHECK(v_plus_minus(4) == std::pair<long, long>{0, 2});
  CHECK(v_plus_minus(5) == std::pair<long, long>{1, 2});
  CHECK(v_plus_minus(6) == std::pair<long, long>{1, 3});
  CHECK(v_plus_minus(7) == std::pair<long, long>{2, 3});
  CHECK(v_plus_minus(8) == std::pair<long, long>{2, 4});
  CHECK_THROWS_AS(v_plus_minus(2), WeightOutOfRange);

  CHECK(gp_shift(2) == 1);
  CHECK(gp_shift(4) == q_of(5, 2));
  CHECK(gp_shift(6) == q_of(10, 3));
  CHECK(gp_shift(8) == q_of(47, 12));
  CHECK_THROWS_AS(gp_shift(3), OddArgument);
  CHECK_THROWS_AS(gp_shift(0), Error);
}

TEST_CASE("nu comparisons") {
  const Nu h = Nu::finite(q_of(1, 2));
  CHECK(h.lt(1));
  CHECK_FALSE(h.lt(q_of(1, 2)));
  CHECK(h.le(q_of(1, 2)));
  CHECK(h.eq(q_of(1, 2)));
  CHECK(h.ge(q_of(1, 2)));
  CHECK_FALSE(h.gt(q_of(1, 2)));
  CHECK(h.gt(0));
  CHECK_FALSE(h.is_integer());

  const Nu two = Nu::finite(-2);
  CHECK(two.is_integer());
  CHECK(two.lt(0));

  const Nu minf = Nu::minus_inf();
  CHECK(minf.lt(-100));
  CHECK(minf.le(-100));
  CHECK_FALSE(minf.ge(-100));
  CHECK_FALSE(minf.eq(-100));
  CHECK_FALSE(minf.is_integer());

  const Nu pinf = Nu::plus_inf();
  CHECK_FALSE(pinf.lt(100));
  CHECK(pinf.ge(100));
  CHECK(pinf.gt(100));
  CHECK_FALSE(pinf.eq(100));
  CHECK_FALSE(pinf.is_integer());
}

TEST_CASE("nu invariant against the degenerate locus") {
  const Nu a = nu_invariant(5, 4, lv(5, 0));
  CHECK(a.kind == Nu::Kind::Finite);
  CHECK(a.v == 0);

  CHECK(nu_invariant(5, 4, LValue::infinity(5)).kind == Nu::Kind::MinusInf);

  const Nu b = nu_invariant(7, 5, lv(7, q_of(5, 2), 1));
  CHECK(b.kind == Nu::Kind::Finite);
  CHECK(b.v == q_of(1, 2));

  CHECK(nu_invariant(7, 6, lv(7, q_of(17, 6))).kind == Nu::Kind::PlusInf);
  CHECK(nu_invariant(5, 3, lv(5, 1)).kind == Nu::Kind::PlusInf);
  CHECK(nu_invariant(5, 4, lv(5, q_of(3, 2))).kind == Nu::Kind::PlusInf);

  const Nu c = nu_invariant(3, 3, lv(3, 1, 1));
  CHECK(c.kind == Nu::Kind::Finite);
  CHECK(c.v == q_of(1, 2));

  const Nu d = nu_invariant(5, 4, lv(5, q_of(3, 2) + 25));
  CHECK(d.kind == Nu::Kind::Finite);
  CHECK(d.v == 2);

  CHECK_THROWS_AS(nu_invariant(4, 3, lv(4, 0)), Error);
  CHECK_THROWS_AS(nu_invariant(9, 3, lv(9, 0)), Error);
  CHECK_THROWS_AS(nu_invariant(5, 3, lv(3, 0)), Error);
  CHECK_THROWS_AS(nu_invariant(5, 2, lv(5, 0)), WeightOutOfRange);
}

TEST_CASE("orbit representatives of the level-2 characters") {
  CHECK(irreducible_orbit_rep(5, 2) == 2);
  CHECK(irreducible_orbit_rep(5, 10) == 2);
  CHECK(irreducible_orbit_rep(5, 7) == 7);
  CHECK(irreducible_orbit_rep(5, 11) == 7);
  CHECK(irreducible_orbit_rep(5, 25) == 1);
  CHECK(irreducible_orbit_rep(5, -2) == 14);

  // A full twist orbit collapses to one representative.
  for (long c : {3L, 15L, 27L, 75L % 24}) {
    CHECK(irreducible_orbit_rep(5, c) == 3);
  }

  CHECK_THROWS_AS(irreducible_orbit_rep(5, 6), Error);
  CHECK_THROWS_AS(irreducible_orbit_rep(5, 12), Error);
  CHECK_THROWS_AS(irreducible_orbit_rep(5, 0), Error);
  CHECK_THROWS_AS(irreducible_orbit_rep(5, 24), Error);
  CHECK_THROWS_AS(irreducible_orbit_rep(4, 1), Error);
}

TEST_CASE("inertia ladder: golden rows") {
  // Weight 4 at p = 5: the three regimes, unconditional.
  {
    ReductionShape s = classify_inertia(5, 4, Nu::finite(1));
    CHECK(s.kind == ShapeKind::IrreducibleInertia);
    CHECK(s.c == 7);
    CHECK_FALSE(s.conditional);

    s = classify_inertia(5, 4, Nu::finite(0));
    CHECK(s.kind == ShapeKind::ReducibleInertia);
    CHECK(s.i == 2);
    CHECK(s.j == 1);
    CHECK_FALSE(s.conditional);

    s = classify_inertia(5, 4, Nu::finite(-1));
    CHECK(s.kind == ShapeKind::IrreducibleInertia);
    CHECK(s.c == 3);

    s = classify_inertia(5, 4, Nu::minus_inf());
    CHECK(s.kind == ShapeKind::IrreducibleInertia);
    CHECK(s.c == 3);
    CHECK(s.basis == "fontaine-edixhoven");
    CHECK_FALSE(s.conditional);

    s = classify_inertia(5, 4, Nu::plus_inf());
    CHECK(s.kind == ShapeKind::IrreducibleInertia);
    CHECK(s.c == 7);
  }

  // Weight 5 at p = 7.
  {
    ReductionShape s = classify_inertia(7, 5, Nu::finite(0));
    CHECK(s.kind == ShapeKind::IrreducibleInertia);
    CHECK(s.c == 10);
    CHECK_FALSE(s.conditional);

    s = classify_inertia(7, 5, Nu::finite(q_of(-1, 2)));
    CHECK(s.kind == ShapeKind::ReducibleInertia);
    CHECK(s.i == 3);
    CHECK(s.j == 1);

    s = classify_inertia(7, 5, Nu::finite(q_of(1, 2)));
    CHECK(s.kind == ShapeKind::ReducibleInertia);
    CHECK(s.i == 2);
    CHECK(s.j == 2);

    s = classify_inertia(7, 5, Nu::finite(-1));
    CHECK(s.kind == ShapeKind::IrreducibleInertia);
    CHECK(s.c == 4);

    s = classify_inertia(7, 5, Nu::plus_inf());
    CHECK(s.kind == ShapeKind::ReducibleInertia);
    CHECK(s.i == 2);
    CHECK(s.j == 2);
  }

  // Weight 3: the dichotomy.
  {
    ReductionShape s = classify_inertia(7, 3, Nu::finite(0));
    CHECK(s.kind == ShapeKind::IrreducibleInertia);
    CHECK(s.c == 2);
    CHECK_FALSE(s.conditional);

    s = classify_inertia(7, 3, Nu::finite(q_of(1, 2)));
    CHECK(s.kind == ShapeKind::ReducibleInertia);
    CHECK(s.i == 1);
    CHECK(s.j == 1);
  }

  // Weight 6 at p = 7: conditional except at the crystalline pole.
  {
    ReductionShape s = classify_inertia(7, 6, Nu::finite(q_of(-3, 2)));
    CHECK(s.kind == ShapeKind::IrreducibleInertia);
    CHECK(s.c == 5);
    CHECK(s.conditional);

    s = classify_inertia(7, 6, Nu::finite(-1));
    CHECK(s.kind == ShapeKind::ReducibleInertia);
    CHECK(s.i == 4);
    CHECK(s.j == 1);
    CHECK(s.conditional);

    s = classify_inertia(7, 6, Nu::finite(q_of(-1, 2)));
    CHECK(s.kind == ShapeKind::IrreducibleInertia);
    CHECK(s.c == 11);

    s = classify_inertia(7, 6, Nu::finite(0));
    CHECK(s.kind == ShapeKind::ReducibleInertia);
    CHECK(s.i == 3);
    CHECK(s.j == 2);

    s = classify_inertia(7, 6, Nu::finite(q_of(1, 4)));
    CHECK(s.kind == ShapeKind::IrreducibleInertia);
    CHECK(s.c == 17);

    s = classify_inertia(7, 6, Nu::plus_inf());
    CHECK(s.c == 17);

    s = classify_inertia(7, 6, Nu::minus_inf());
    CHECK(s.c == 5);
    CHECK_FALSE(s.conditional);
  }

  // Weight 7 at p = 11: the full four-rung ladder.
  {
    CHECK(classify_inertia(11, 7, Nu::finite(-2)).c == 6);
    ReductionShape s = classify_inertia(11, 7, Nu::finite(q_of(-3, 2)));
    CHECK(s.i == 5);
    CHECK(s.j == 1);
    CHECK(classify_inertia(11, 7, Nu::finite(-1)).c == 16);
    s = classify_inertia(11, 7, Nu::finite(q_of(-1, 2)));
    CHECK(s.i == 4);
    CHECK(s.j == 2);
    CHECK(classify_inertia(11, 7, Nu::finite(0)).c == 26);
    s = classify_inertia(11, 7, Nu::finite(q_of(1, 2)));
    CHECK(s.i == 3);
    CHECK(s.j == 3);
    s = classify_inertia(11, 7, Nu::finite(3));
    CHECK(s.i == 3);
    CHECK(s.j == 3);
    s = classify_inertia(11, 7, Nu::plus_inf());
    CHECK(s.i == 3);
    CHECK(s.j == 3);
  }

  CHECK_THROWS_AS(classify_inertia(5, 2, Nu::finite(0)), WeightOutOfRange);
  CHECK_THROWS_AS(classify_inertia(3, 6, Nu::finite(0)), WeightOutOfRange);
  CHECK_THROWS_AS(classify_inertia(9, 4, Nu::finite(0)), Error);
}

TEST_CASE("inertia ladder: determinant and orbit invariants across a grid") {
  for (long p : {7L, 11L}) {
    for (long k = 3; k <= std::min<long>(8, p + 1); ++k) {
      for (const Nu& nu : nu_grid()) {
        INFO("p=", p, " k=", k, " nu=", nu_label(nu));
        const ReductionShape s = classify_inertia(p, k, nu);
        const bool expect_uncond = nu.kind == Nu::Kind::MinusInf || k == 3 ||
                                   ((k == 4 || k == 5) && p >= 5);
        CHECK(s.conditional == !expect_uncond);
        if (s.kind == ShapeKind::IrreducibleInertia) {
          CHECK(s.c % (p + 1) != 0);
          CHECK(s.c == irreducible_orbit_rep(p, s.c));
          CHECK(((s.c - (k - 1)) % (p - 1) + (p - 1)) % (p - 1) == 0);
        } else {
          CHECK(s.kind == ShapeKind::ReducibleInertia);
          CHECK(s.i >= s.j);
          CHECK(s.j >= 1);
          CHECK(s.i + s.j == k - 1);
        }
      }
    }
  }
}

TEST_CASE("even-weight rows agree with the ladder") {
  for (long k : {4L, 6L, 8L}) {
    for (const Nu& nu : nu_grid()) {
      INFO("k=", k, " nu=", nu_label(nu));
      const ReductionShape via_rows = bm_row(7, k, nu);
      const ReductionShape via_ladder = classify_inertia(7, k, nu);
      CHECK(same_inertia_shape(7, via_rows, via_ladder));
    }
  }
  CHECK_THROWS_AS(bm_row(7, 5, Nu::finite(0)), WeightOutOfRange);
}

TEST_CASE("odd-weight rows agree with the ladder") {
  for (long p : {7L, 11L}) {
    for (long k : {3L, 5L, 7L}) {
      for (const Nu& nu : nu_grid()) {
        INFO("p=", p, " k=", k, " nu=", nu_label(nu));
        const ReductionShape via_rows = gp_row(p, k, nu);
        const ReductionShape via_ladder = classify_inertia(p, k, nu);
        CHECK(same_inertia_shape(p, via_rows, via_ladder));
      }
    }
  }
  CHECK_THROWS_AS(gp_row(7, 4, Nu::finite(0)), WeightOutOfRange);
}

TEST_CASE("crystalline comparison: eigenvalue valuation reproduces nu") {
  {
    const BmReport rep = bm_crosscheck(5, 4, lv(5, 0));
    CHECK(rep.a == QQuad(5, 3));
    CHECK(rep.va.kind == Nu::Kind::Finite);
    CHECK(rep.va.v == 0);
    CHECK(rep.nu.kind == Nu::Kind::Finite);
    CHECK(rep.nu.v == 0);
    CHECK(rep.matches);
  }
  {
    const BmReport rep = bm_crosscheck(7, 6, lv(7, q_of(17, 6)));
    CHECK(rep.a.is_zero());
    CHECK(rep.va.kind == Nu::Kind::PlusInf);
    CHECK(rep.nu.kind == Nu::Kind::PlusInf);
    CHECK(rep.matches);
  }

  Lcg rng(0x5eed);
  const long dens[] = {1, 2, 3, 4, 5, 7, 49};
  for (long k : {4L, 6L}) {
    for (int it = 0; it < 100; ++it) {
      const mpq_class a = q_of(rng.next(-30, 30), dens[rng.next(0, 6)]);
      const mpq_class b =
          (it % 3 == 0) ? mpq_class(0)
                        : q_of(rng.next(-10, 10), dens[rng.next(0, 6)]);
      const BmReport rep = bm_crosscheck(7, k, lv(7, a, b));
      INFO("k=", k, " L=", a.get_str(), "+(", b.get_str(), ")pi");
      CHECK(rep.matches);
    }
  }
  for (int it = 0; it < 50; ++it) {
    const mpq_class a = q_of(rng.next(-30, 30), dens[rng.next(0, 6)]);
    const BmReport rep = bm_crosscheck(5, 4, lv(5, a));
    INFO("L=", a.get_str());
    CHECK(rep.matches);
  }

  CHECK_THROWS_AS(bm_crosscheck(5, 4, LValue::infinity(5)), Error);
  CHECK_THROWS_AS(bm_crosscheck(7, 5, lv(7, 0)), WeightOutOfRange);
  CHECK_THROWS_AS(bm_crosscheck(5, 4, lv(3, 0)), Error);
}

TEST_CASE("small-weight full classification") {
  // k = 4, nu = 0: reducible with a single unramified scalar.
  {
    const ReductionShape s = classify_full_small_weight(5, 4, lv(5, 0));
    CHECK(s.kind == ShapeKind::ReducibleFull);
    CHECK(s.i == 2);
    CHECK(s.j == 1);
    CHECK(s.has_lambda);
    CHECK_FALSE(s.has_trace);
    CHECK(s.lambda == ResidueElement::in_fp(5, 3));
    CHECK_FALSE(s.conditional);
  }
  // k = 5, nu = -1/2.
  {
    const ReductionShape s =
        classify_full_small_weight(7, 5, lv(7, q_of(5, 2), q_of(1, 7)));
    CHECK(s.kind == ShapeKind::ReducibleFull);
    CHECK(s.i == 3);
    CHECK(s.j == 1);
    CHECK(s.has_lambda);
    CHECK(s.lambda == ResidueElement::in_fp(7, 4));
  }
  {
    const ReductionShape s =
        classify_full_small_weight(5, 5, lv(5, q_of(5, 2), q_of(1, 5)));
    CHECK(s.has_lambda);
    CHECK(s.lambda == ResidueElement::in_fp(5, 2));
  }
  // k = 5, nu = 1/2: a trace-identified pair, split here.
  {
    const ReductionShape s =
        classify_full_small_weight(7, 5, lv(7, q_of(5, 2), 1));
    CHECK(s.kind == ShapeKind::ReducibleFull);
    CHECK(s.i == 2);
    CHECK(s.j == 2);
    CHECK(s.has_trace);
    CHECK_FALSE(s.has_lambda);
    CHECK(s.trace.trace == ResidueElement::in_fp(7, 2));
    CHECK(s.trace.split);
  }
  // k = 3 on the degenerate locus: trace 0, nonsplit at p = 3.
  {
    const ReductionShape s = classify_full_small_weight(3, 3, lv(3, 1));
    CHECK(s.kind == ShapeKind::ReducibleFull);
    CHECK(s.i == 1);
    CHECK(s.j == 1);
    CHECK(s.has_trace);
    CHECK(s.trace.trace.is_zero());
    CHECK_FALSE(s.trace.split);
  }
  // k = 3 with a half-integral nu = 1/2 at p = 7: split pair.
  {
    const ReductionShape s = classify_full_small_weight(7, 3, lv(7, 1, 2));
    CHECK(s.has_trace);
    CHECK(s.trace.trace == ResidueElement::in_fp(7, 5));
    CHECK(s.trace.split);
  }
  // Irreducible regimes.
  CHECK(classify_full_small_weight(5, 3, lv(5, 0)).kind ==
        ShapeKind::IrreducibleInertia);
  CHECK(classify_full_small_weight(5, 3, lv(5, 0)).c == 2);
  CHECK(classify_full_small_weight(7, 5, lv(7, 0)).c == 10);
  // nu = +inf sits above every rung, in the top irreducible row.
  CHECK(classify_full_small_weight(7, 4, lv(7, q_of(3, 2))).kind ==
        ShapeKind::IrreducibleInertia);
  CHECK(classify_full_small_weight(7, 4, lv(7, q_of(3, 2))).c == 9);
  CHECK(classify_full_small_weight(7, 4, lv(7, q_of(3, 2) + 7)).c == 9);
  CHECK(classify_full_small_weight(7, 4, lv(7, q_of(3, 2) + q_of(1, 7))).c ==
        3);
  CHECK(classify_full_small_weight(7, 3, LValue::infinity(7)).c == 2);
  CHECK(classify_full_small_weight(7, 5, LValue::infinity(7)).c == 4);

  // Unconditional table throughout.
  CHECK_FALSE(classify_full_small_weight(7, 5, lv(7, 0)).conditional);

  // Local constancy of the unramified data in L.
  {
    const ReductionShape base = classify_full_small_weight(5, 4, lv(5, 0));
    const ReductionShape moved =
        classify_full_small_weight(5, 4, lv(5, mpq_class(15625)));
    CHECK(moved.has_lambda);
    CHECK(moved.lambda == base.lambda);
    const ReductionShape t0 = classify_full_small_weight(7, 5, lv(7, q_of(5, 2), 1));
    const ReductionShape t1 = classify_full_small_weight(
        7, 5, lv(7, q_of(5, 2) + mpq_class(117649), 1));
    CHECK(t1.has_trace);
    CHECK(t1.trace.trace == t0.trace.trace);
    CHECK(t1.trace.split == t0.trace.split);
  }

  CHECK_THROWS_AS(classify_full_small_weight(7, 6, lv(7, 0)),
                  WeightOutOfRange);
  CHECK_THROWS_AS(classify_full_small_weight(7, 2, lv(7, 0)),
                  WeightOutOfRange);
  CHECK_THROWS_AS(classify_full_small_weight(3, 4, lv(3, 0)),
                  WeightOutOfRange);
  CHECK_THROWS_AS(classify_full_small_weight(3, 5, lv(3, 0)),
                  WeightOutOfRange);
}

TEST_CASE("small-weight table agrees with the ladder on inertia") {
  Lcg rng(0xfeed);
  const long dens[] = {1, 2, 3, 5, 7, 14};
  for (long k : {3L, 4L, 5L}) {
    for (int it = 0; it < 60; ++it) {
      const mpq_class a = q_of(rng.next(-20, 20), dens[rng.next(0, 5)]);
      const mpq_class b =
          (it % 2 == 0) ? mpq_class(0)
                        : q_of(rng.next(-6, 6), dens[rng.next(0, 5)]);
      const LValue L = lv(7, a, b);
      const ReductionShape full = classify_full_small_weight(7, k, L);
      const ReductionShape inertia =
          classify_inertia(7, k, nu_invariant(7, k, L));
      INFO("k=", k, " L=", a.get_str(), "+(", b.get_str(), ")pi");
      CHECK(same_inertia_shape(7, full, inertia));
    }
  }
}

TEST_CASE("shape comparison") {
  auto irr = [](long c) {
    ReductionShape s;
    s.kind = ShapeKind::IrreducibleInertia;
    s.c = c;
    return s;
  };
  auto red = [](long i, long j, ShapeKind kind) {
    ReductionShape s;
    s.kind = kind;
    s.i = i;
    s.j = j;
    return s;
  };
  CHECK(same_inertia_shape(5, irr(2), irr(10)));
  CHECK(same_inertia_shape(5, irr(7), irr(11)));
  CHECK_FALSE(same_inertia_shape(5, irr(7), irr(5)));
  CHECK(same_inertia_shape(
      5, red(4, 1, ShapeKind::ReducibleInertia),
      red(8, 5, ShapeKind::ReducibleInertia)));
  CHECK(same_inertia_shape(5, red(2, 1, ShapeKind::ReducibleInertia),
                           red(1, 2, ShapeKind::ReducibleInertia)));
  CHECK(same_inertia_shape(5, red(2, 1, ShapeKind::ReducibleFull),
                           red(2, 1, ShapeKind::ReducibleInertia)));
  CHECK_FALSE(same_inertia_shape(5, irr(7), red(2, 1, ShapeKind::ReducibleInertia)));
  CHECK_FALSE(same_inertia_shape(5, red(3, 1, ShapeKind::ReducibleInertia),
                                 red(2, 2, ShapeKind::ReducibleInertia)));
}

TEST_CASE("zigzag parameters: closed forms in the stable range") {
  {
    const ZigzagParams z = zigzag_params(5, 4, lv(5, 1), 3);
    CHECK_FALSE(z.tau_inf);
    CHECK(z.tau == 3);
    CHECK(z.t == 3);
    CHECK(z.nu.kind == Nu::Kind::Finite);
    CHECK(z.nu.v == 0);
  }
  for (long n = 1; n <= 3; ++n) {
    CHECK(zigzag_params(5, 4, lv(5, 0), n).tau == n);
    CHECK(zigzag_params(5, 4, lv(5, 0), n).t == n);
    CHECK(zigzag_params(3, 3, lv(3, 0), n).tau == q_of(2 * n - 1, 2));
    CHECK(zigzag_params(3, 4, lv(3, 2), n).tau == n);
  }
  for (long n = 1; n <= 2; ++n) {
    CHECK(zigzag_params(7, 5, lv(7, q_of(5, 2), 1), n).tau == n + 1);
    CHECK(zigzag_params(5, 5, lv(5, -3), n).tau == q_of(2 * n + 1, 2));
  }

  // The blow-up point at infinity: t jumps to n^2 and n = 1 can sit below
  // the stable range.
  for (long n = 2; n <= 3; ++n) {
    const ZigzagParams z = zigzag_params(5, 4, LValue::infinity(5), n);
    CHECK(z.tau == n);
    CHECK(z.t == n * n);
    CHECK(z.nu.kind == Nu::Kind::MinusInf);
  }
  CHECK(zigzag_params(5, 4, LValue::infinity(5), 1).tau == 1);
  CHECK_THROWS_AS(zigzag_params(3, 3, LValue::infinity(3), 1),
                  RegimeNotReached);
  for (long n = 2; n <= 3; ++n) {
    const ZigzagParams z = zigzag_params(3, 3, LValue::infinity(3), n);
    CHECK(z.tau == q_of(2 * n - 1, 2));
    CHECK(z.t == n * n);
  }

  // On the degenerate locus there is no closed form; the direct values are
  // pinned as regressions and sit strictly above the generic line.
  for (long n = 1; n <= 3; ++n) {
    const ZigzagParams z = zigzag_params(5, 4, lv(5, q_of(3, 2)), n);
    CHECK(z.nu.kind == Nu::Kind::PlusInf);
    CHECK(z.tau == 2 * n);
    CHECK(z.t == n);
    CHECK(zigzag_params(3, 3, lv(3, 1), n).tau == q_of(4 * n - 1, 2));
  }
  CHECK(zigzag_params(7, 5, lv(7, q_of(5, 2)), 1).tau == q_of(11, 2));
  CHECK(zigzag_params(7, 5, lv(7, q_of(5, 2)), 2).tau == q_of(11, 2));
  CHECK(zigzag_params(7, 5, lv(7, q_of(5, 2)), 3).tau == q_of(15, 2));

  CHECK_THROWS_AS(zigzag_params(5, 4, lv(5, 0), 0), Error);
  CHECK_THROWS_AS(zigzag_params(5, 7, lv(5, 0), 1), WeightOutOfRange);
  CHECK_THROWS_AS(zigzag_params(4, 3, lv(4, 0), 1), Error);
}

TEST_CASE("binomial valuation closed form") {
  {
    const BinomialValuationReport rep = binomial_valuation(3, 2, 2, 2);
    CHECK(rep.computed == 1);
    CHECK(rep.formula == 1);
    CHECK(rep.match);
  }
  {
    // j at the top of its range: v_p(j) = i - 1 and the binomial is 1.
    const BinomialValuationReport rep = binomial_valuation(5, 3, 3, 75);
    CHECK(rep.computed == 0);
    CHECK(rep.formula == 0);
    CHECK(rep.match);
  }
  for (long p : {3L, 5L, 7L}) {
    for (long c = 1; c <= p - 1; ++c) {
      for (long i = 1; i <= 3; ++i) {
        const long top =
            mpz_class(c * pow_p(p, static_cast<unsigned long>(i - 1)))
                .get_si();
        for (long j = 1; j <= top; ++j) {
          const BinomialValuationReport rep =
              binomial_valuation(p, c, i, static_cast<unsigned long>(j));
          INFO("p=", p, " c=", c, " i=", i, " j=", j);
          CHECK(rep.match);
        }
      }
    }
  }
  CHECK_THROWS_AS(binomial_valuation(5, 0, 1, 1), Error);
  CHECK_THROWS_AS(binomial_valuation(5, 5, 1, 1), Error);
  CHECK_THROWS_AS(binomial_valuation(5, 2, 0, 1), Error);
  CHECK_THROWS_AS(binomial_valuation(5, 2, 2, 0), Error);
  CHECK_THROWS_AS(binomial_valuation(5, 2, 2, 11), Error);
}
