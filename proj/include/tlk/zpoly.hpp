// Dense integer Laurent polynomials in A.
//
// ZPoly is the arithmetic workhorse underneath LaurentPoly, RationalFn and
// the skein engine. Coefficients are GMP integers; the representation is
// always trimmed (no zero at either end) and the zero polynomial is empty.
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tlk {

class ZPoly {
 public:
  ZPoly() = default;
  ZPoly(long c);  // NOLINT(google-explicit-constructor)
  ZPoly(const mpz_class& c);  // NOLINT(google-explicit-constructor)

  /// c * A^e
  static ZPoly monomial(const mpz_class& c, std::int64_t e);
  /// Coefficients for A^low, A^(low+1), ...; trims on construction.
  static ZPoly from_dense(std::int64_t low, std::vector<mpz_class> coeffs);

  bool is_zero() const { return c_.empty(); }
  bool is_monomial() const { return c_.size() == 1; }
  /// ±A^e
  bool is_unit() const;
  bool is_constant() const { return c_.size() == 1 && low_ == 0; }

  std::int64_t low() const { return low_; }
  /// Highest exponent; only meaningful when non-zero.
  std::int64_t high() const { return low_ + static_cast<std::int64_t>(c_.size()) - 1; }
  std::size_t length() const { return c_.size(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class coeff(std::int64_t e) const;
  const mpz_class& lowest_coeff() const { return c_.front(); }
  const mpz_class& leading_coeff() const { return c_.back(); }

  /// Multiply by A^k.
  ZPoly shifted(std::int64_t k) const;

  ZPoly operator-() const;
  ZPoly& operator+=(const ZPoly& o);
  ZPoly& operator-=(const ZPoly& o);
  ZPoly& operator*=(const ZPoly& o);
  ZPoly& operator*=(const mpz_class& s);
  friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
  friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(ZPoly a, const mpz_class& s) { return a *= s; }

  friend bool operator==(const ZPoly& a, const ZPoly& b) = default;
  /// Total order (length, low, coefficients); used for interning.
  friend bool operator<(const ZPoly& a, const ZPoly& b);

  ZPoly pow(unsigned n) const;

  /// gcd of all coefficients, non-negative; zero for the zero polynomial.
  mpz_class content() const;
  /// Divide every coefficient by s; s must divide each exactly.
  ZPoly divexact(const mpz_class& s) const;
  /// Exact quotient a / b in Z[A^±1]. Throws std::domain_error if b does
  /// not divide a.
  static ZPoly divexact(const ZPoly& a, const ZPoly& b);
  /// Quotient if b divides a exactly, else false.
  static bool try_divexact(const ZPoly& a, const ZPoly& b, ZPoly& quotient);

  /// gcd in Z[A^±1], normalized: lowest exponent 0, positive lowest
  /// coefficient. gcd(0, 0) = 0.
  static ZPoly gcd(const ZPoly& a, const ZPoly& b);

  /// Shift to lowest exponent 0 and make the lowest coefficient positive.
  /// Returns the unit (sign, shift) that was divided out.
  ZPoly normalized_unit(int* sign = nullptr, std::int64_t* shift = nullptr) const;

  std::complex<double> eval(std::complex<double> z) const;
  /// Σ |c_k| |z|^k, the scale against which evaluation error is judged.
  double abs_scale(double r) const;

  std::size_t hash() const;
  std::string to_string() const;

 private:
  void trim();

  std::int64_t low_ = 0;
  std::vector<mpz_class> c_;
};

}  // namespace tlk
