// Laurent polynomials in A with rational coefficients.
#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tlk/zpoly.hpp"

namespace tlk {

/// An element of Q[A, A^-1].
///
/// Stored as an integer polynomial over a positive integer denominator with
/// no common factor, so equal values have equal representations.
class LaurentPoly {
 public:
  struct Term {
    std::int64_t exponent;
    mpq_class coeff;
  };

  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(const mpq_class& c);  // NOLINT(google-explicit-constructor)
  explicit LaurentPoly(ZPoly p, mpz_class den = 1);

  static LaurentPoly monomial(const mpq_class& c, std::int64_t e);
  /// The variable A.
  static LaurentPoly A() { return monomial(1, 1); }
  static LaurentPoly from_terms(const std::vector<Term>& terms);

  bool is_zero() const { return num_.is_zero(); }
  bool is_monomial() const { return num_.is_monomial(); }
  std::int64_t low() const { return num_.low(); }
  std::int64_t high() const { return num_.high(); }
  mpq_class coeff(std::int64_t e) const;
  /// Non-zero terms in ascending exponent order.
  std::vector<Term> terms() const;
  std::size_t term_count() const;

  /// Integer numerator polynomial and positive denominator.
  const ZPoly& numerator() const { return num_; }
  const mpz_class& denominator() const { return den_; }

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

  LaurentPoly pow(unsigned n) const;
  /// Substitute A -> A^k.
  LaurentPoly substitute_power(std::int64_t k) const;

  std::complex<double> eval(std::complex<double> z) const;

  std::string to_string() const;

 private:
  void normalize();

  ZPoly num_;
  mpz_class den_ = 1;
};

/// Quantum integer [n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2}).
LaurentPoly qint(int n);

/// δ = -A^2 - A^-2, the value of a closed loop.
LaurentPoly loop_value();

/// Δ_n = (-1)^n [n+1], the value of the n-colored unknot.
LaurentPoly delta_closed(int n);

}  // namespace tlk
