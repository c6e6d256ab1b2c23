#include "robba/exact_poly.hpp"

#include <algorithm>

namespace robba {

void ExactPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ExactPoly::ExactPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
  trim();
}

ExactPoly ExactPoly::constant(const mpq_class& c) {
  return ExactPoly(std::vector<mpq_class>{c});
}

ExactPoly ExactPoly::monomial(const mpq_class& c, std::size_t d) {
  std::vector<mpq_class> v(d + 1, mpq_class(0));
  v[d] = c;
  return ExactPoly(std::move(v));
}

mpq_class ExactPoly::coeff(std::size_t d) const {
  return d < c_.size() ? c_[d] : mpq_class(0);
}

ExactPoly ExactPoly::operator-() const {
  std::vector<mpq_class> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
  return ExactPoly(std::move(v));
}

ExactPoly operator+(const ExactPoly& a, const ExactPoly& b) {
  std::vector<mpq_class> v(std::max(a.c_.size(), b.c_.size()), mpq_class(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return ExactPoly(std::move(v));
}

ExactPoly operator-(const ExactPoly& a, const ExactPoly& b) {
  return a + (-b);
}

ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
  if (a.is_zero() || b.is_zero()) return ExactPoly();
  std::vector<mpq_class> v(a.c_.size() + b.c_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      v[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return ExactPoly(std::move(v));
}

bool operator==(const ExactPoly& a, const ExactPoly& b) {
  return a.c_ == b.c_;
}

ExactPoly ExactPoly::scaled(const mpq_class& s) const {
  if (s == 0) return ExactPoly();
  std::vector<mpq_class> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * s;
  return ExactPoly(std::move(v));
}

ExactPoly ExactPoly::pow(unsigned long e) const {
  ExactPoly acc = constant(1);
  ExactPoly base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

mpq_class ExactPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

ExactPoly ExactPoly::compose(const ExactPoly& inner) const {
  ExactPoly acc;
  for (std::size_t i = c_.size(); i-- > 0;)
    acc = acc * inner + constant(c_[i]);
  return acc;
}

ExactPoly ExactPoly::shift_down(std::size_t k) const {
  if (is_zero()) return ExactPoly();
  if (c_.size() <= k) throw Error("shift_down: degree too small");
  for (std::size_t i = 0; i < k; ++i)
    if (c_[i] != 0) throw Error("shift_down: inexact division by T^k");
  return ExactPoly(std::vector<mpq_class>(c_.begin() + k, c_.end()));
}

ExactPoly ExactPoly::reversed() const {
  std::vector<mpq_class> v(c_.rbegin(), c_.rend());
  return ExactPoly(std::move(v));
}

std::pair<ExactPoly, ExactPoly> ExactPoly::divrem(const ExactPoly& num,
                                                  const ExactPoly& den) {
  if (den.is_zero()) throw DivisionByZero("polynomial division by zero");
  std::vector<mpq_class> r = num.c_;
  long dd = den.degree();
  const mpq_class& lead = den.c_[dd];
  long dn = static_cast<long>(r.size()) - 1;
  if (dn < dd) return {ExactPoly(), num};
  std::vector<mpq_class> q(dn - dd + 1, mpq_class(0));
  for (long i = dn; i >= dd; --i) {
    if (r[i] == 0) continue;
    mpq_class f = r[i] / lead;
    q[i - dd] = f;
    for (long j = 0; j <= dd; ++j) r[i - dd + j] -= f * den.c_[j];
  }
  return {ExactPoly(std::move(q)), ExactPoly(std::move(r))};
}

ExactPoly one_plus_t_power(long p, long n) {
  // (1+T)^(p^n) - 1 via iterated p-th powers of (1+T).
  ExactPoly f(std::vector<mpq_class>{1, 1});
  for (long i = 0; i < n; ++i) f = f.pow(p);
  std::vector<mpq_class> v = f.coeffs();
  v[0] -= 1;
  return ExactPoly(std::move(v));
}

ExactPoly cyclotomic_phi(long p, long n) {
  if (n < 1) throw Error("cyclotomic_phi: level must be >= 1");
  // Phi_{p^n}(1+T) = ((1+T)^(p^n) - 1) / ((1+T)^(p^(n-1)) - 1)
  auto [q, rem] =
      ExactPoly::divrem(one_plus_t_power(p, n), one_plus_t_power(p, n - 1));
  if (!rem.is_zero()) throw Error("cyclotomic factorization failed");
  return q;
}

ExactPoly frobenius_poly(const ExactPoly& f, long p) {
  ExactPoly s = one_plus_t_power(p, 1);
  return f.compose(s);
}

mpq_class radius_valuation(const ExactPoly& f, long p, long l) {
  if (f.is_zero()) throw Error("radius_valuation of the zero polynomial");
  if (l < 1) throw Error("radius_valuation: level must be >= 1");
  mpz_class denom = pow_p(p, l - 1) * (p - 1);
  mpq_class s(1, denom);
  bool first = true;
  mpq_class best = 0;
  const auto& cs = f.coeffs();
  for (std::size_t d = 0; d < cs.size(); ++d) {
    if (cs[d] == 0) continue;
    mpq_class cand = mpq_class(*vp_mpq(p, cs[d])) + mpq_class(d) * s;
    if (first || cand < best) {
      best = cand;
      first = false;
    }
  }
  return best;
}

}  // namespace robba
