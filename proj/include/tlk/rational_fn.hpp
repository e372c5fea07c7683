// Elements of the fraction field Q(A).
#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "tlk/laurent.hpp"
#include "tlk/zpoly.hpp"

namespace tlk {

/// num / den with num, den in Z[A^±1], kept in canonical form:
///  - gcd(num, den) is a unit (±A^k),
///  - den has lowest exponent 0 and a positive lowest coefficient,
///  - the integer contents of num and den are coprime.
/// Canonical form makes equality structural.
class RationalFn {
 public:
  RationalFn() : den_(1L) {}
  RationalFn(long c);  // NOLINT(google-explicit-constructor)
  RationalFn(const mpq_class& c);  // NOLINT(google-explicit-constructor)
  RationalFn(const LaurentPoly& p);  // NOLINT(google-explicit-constructor)
  RationalFn(const LaurentPoly& num, const LaurentPoly& den);
  /// Build num/den from integer polynomials; den must be non-zero.
  static RationalFn from_zpolys(ZPoly num, ZPoly den);

  static RationalFn monomial(const mpq_class& c, std::int64_t e) {
    return RationalFn(LaurentPoly::monomial(c, e));
  }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const {
    return num_.is_constant() && num_.lowest_coeff() == 1 && den_.is_constant() && den_.lowest_coeff() == 1;
  }
  /// True when the value lies in Q[A^±1].
  bool is_laurent() const { return den_.is_constant(); }
  /// ±c·A^e with c rational.
  bool is_monomial() const { return num_.is_monomial() && den_.is_constant(); }
  /// ±A^e exactly.
  bool is_unit_monomial() const;
  /// Exponent of a monomial value; throws if not a monomial.
  std::int64_t monomial_exponent() const;

  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }
  LaurentPoly numerator() const { return LaurentPoly(num_); }
  LaurentPoly denominator() const { return LaurentPoly(den_); }
  /// The value as a Laurent polynomial; throws if the denominator is not constant.
  LaurentPoly to_laurent() const;

  RationalFn operator-() const;
  RationalFn& operator+=(const RationalFn& o);
  RationalFn& operator-=(const RationalFn& o);
  RationalFn& operator*=(const RationalFn& o);
  RationalFn& operator/=(const RationalFn& o);
  friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
  friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
  friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
  friend RationalFn operator/(RationalFn a, const RationalFn& b) { return a /= b; }
  friend bool operator==(const RationalFn& a, const RationalFn& b) = default;
  friend bool operator<(const RationalFn& a, const RationalFn& b) {
    if (a.num_ == b.num_) return a.den_ < b.den_;
    return a.num_ < b.num_;
  }

  /// Integer powers; negative n inverts (throws on zero).
  RationalFn pow(long n) const;
  RationalFn inverse() const;

  /// Throws std::domain_error at a pole (|den(z)| <= 1e-14 relative to scale).
  std::complex<double> eval(std::complex<double> z) const;

  std::string to_string() const;

 private:
  RationalFn(ZPoly num, ZPoly den, bool already_canonical);
  void canonicalize();
  void normalize_units();

  ZPoly num_;
  ZPoly den_;
};

}  // namespace tlk
