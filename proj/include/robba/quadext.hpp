#pragma once

#include <gmpxx.h>

#include <optional>

#include "robba/padic.hpp"

namespace robba {

// Exact element a + b*pi of the ramified quadratic extension E = Q_p(pi),
// pi^2 = p, with rational components.  All arithmetic is exact.
struct QQuad {
  long p = 3;
  mpq_class a = 0;
  mpq_class b = 0;

  QQuad() = default;
  QQuad(long p_, mpq_class a_, mpq_class b_ = 0)
      : p(p_), a(std::move(a_)), b(std::move(b_)) {}

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  QQuad operator-() const { return QQuad(p, -a, -b); }
  friend QQuad operator+(const QQuad& x, const QQuad& y);
  friend QQuad operator-(const QQuad& x, const QQuad& y);
  friend QQuad operator*(const QQuad& x, const QQuad& y);
  friend QQuad operator/(const QQuad& x, const QQuad& y);
  friend bool operator==(const QQuad& x, const QQuad& y);

  // multiply by pi: (a + b pi) pi = p b + a pi.
  QQuad times_pi() const { return QQuad(p, mpq_class(b * p), a); }
  // divide by pi: (a + b pi) / pi = b + (a/p) pi.
  QQuad over_pi() const { return QQuad(p, b, mpq_class(a / p)); }
};

// Exact valuation in (1/2)Z as a rational; nullopt encodes v(0) = +infinity.
std::optional<mpq_class> vp_qquad(const QQuad& x);

// Image in the residue field F_p (pi maps to 0).  Throws NegativeValuation
// on a non-integral element.
long residue_of_qquad(const QQuad& x);

// An L-parameter: a finite exact value or the point at infinity.
struct LValue {
  bool inf = false;
  QQuad v;

  static LValue infinity(long p) {
    LValue l;
    l.inf = true;
    l.v = QQuad(p, 0, 0);
    return l;
  }
  static LValue finite(QQuad q) {
    LValue l;
    l.inf = false;
    l.v = std::move(q);
    return l;
  }
};

// Element of E carried to finite precision: componentwise PadicScalar pair
// x + y*pi.  The base field embeds as y = exact zero.
struct QuadExtScalar {
  PadicScalar x;
  PadicScalar y;

  QuadExtScalar() = default;
  QuadExtScalar(PadicScalar x_, PadicScalar y_)
      : x(std::move(x_)), y(std::move(y_)) {}
  static QuadExtScalar from_base(PadicScalar s);
  static QuadExtScalar zero(long p);
  static QuadExtScalar one(long p, long digits);
  // componentwise reduction at `digits` significant digits per component.
  static QuadExtScalar from_qquad(const QQuad& q, long digits);

  long prime() const { return x.prime(); }
  bool is_zero_at_precision() const {
    return x.is_zero_at_precision() && y.is_zero_at_precision();
  }
  bool is_exact_zero() const {
    return x.is_exact_zero() && y.is_exact_zero();
  }
  // twice the valuation (so it stays integral); throws on zero at precision.
  long twice_valuation() const;
  bool is_base() const { return y.is_zero_at_precision(); }

  QuadExtScalar operator-() const;
  friend QuadExtScalar operator+(const QuadExtScalar& a,
                                 const QuadExtScalar& b);
  friend QuadExtScalar operator-(const QuadExtScalar& a,
                                 const QuadExtScalar& b);
  friend QuadExtScalar operator*(const QuadExtScalar& a,
                                 const QuadExtScalar& b);
  friend QuadExtScalar operator/(const QuadExtScalar& a,
                                 const QuadExtScalar& b);
  QuadExtScalar inverse() const;
  QuadExtScalar times_pi() const;   // exact
  QuadExtScalar shifted(long k) const;  // multiply by p^k exactly
};

bool same_value(const QuadExtScalar& a, const QuadExtScalar& b);

// Hensel square root in E.  Requires twice_valuation even; the unit part's
// residue must be a square in F_p.  Principal branch as in the base field.
QuadExtScalar hensel_sqrt(const QuadExtScalar& x,
                          std::optional<long> branch = std::nullopt);

}  // namespace robba
