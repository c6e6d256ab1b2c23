#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "robba/errors.hpp"
#include "robba/rationals.hpp"

namespace robba {

// Dense polynomial over Q; index = degree; trailing zeros trimmed.
class ExactPoly {
 public:
  ExactPoly() = default;  // the zero polynomial
  explicit ExactPoly(std::vector<mpq_class> coeffs);
  static ExactPoly constant(const mpq_class& c);
  static ExactPoly monomial(const mpq_class& c, std::size_t d);

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  mpq_class coeff(std::size_t d) const;
  const std::vector<mpq_class>& coeffs() const { return c_; }

  ExactPoly operator-() const;
  friend ExactPoly operator+(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator-(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b);
  friend bool operator==(const ExactPoly& a, const ExactPoly& b);
  ExactPoly scaled(const mpq_class& s) const;
  ExactPoly pow(unsigned long e) const;
  mpq_class eval(const mpq_class& x) const;
  ExactPoly compose(const ExactPoly& inner) const;
  // exact division by T^k; throws if any lower coefficient is nonzero.
  ExactPoly shift_down(std::size_t k) const;
  ExactPoly reversed() const;  // coefficients in reverse order

  // Euclidean division by a nonzero divisor: (quotient, remainder).
  static std::pair<ExactPoly, ExactPoly> divrem(const ExactPoly& num,
                                                const ExactPoly& den);

 private:
  void trim();
  std::vector<mpq_class> c_;
};

// The cyclotomic factor at level n >= 1: Phi_{p^n}(1 + T), monic of degree
// p^(n-1)(p-1), with constant term p.  Level products telescope:
// T * prod_{j<=n} phi_j = (1+T)^(p^n) - 1.
ExactPoly cyclotomic_phi(long p, long n);

// (1+T)^(p^n) - 1 as an exact polynomial.
ExactPoly one_plus_t_power(long p, long n);

// f((1+T)^p - 1), the Frobenius substitution on polynomials.
ExactPoly frobenius_poly(const ExactPoly& f, long p);

// Exact infimum of v_p(coeff_d) + d / (p^(l-1)(p-1)) over the nonzero
// coefficients: the valuation of f on the circle |T| = |zeta_l - 1|.
mpq_class radius_valuation(const ExactPoly& f, long p, long l);

}  // namespace robba
