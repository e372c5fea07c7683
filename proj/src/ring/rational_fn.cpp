#include "tlk/rational_fn.hpp"

#include <cmath>
#include <stdexcept>

namespace tlk {

namespace {

ZPoly scaled_numerator(const LaurentPoly& p, const mpz_class& mult) {
  // p * mult as an integer polynomial; mult must be a multiple of p's denominator.
  mpz_class f;
  mpz_divexact(f.get_mpz_t(), mult.get_mpz_t(), p.denominator().get_mpz_t());
  return p.numerator() * f;
}

}  // namespace

RationalFn::RationalFn(long c) : num_(c), den_(1L) {}

RationalFn::RationalFn(const mpq_class& c) : num_(c.get_num()), den_(c.get_den()) {
  if (den_.is_zero()) throw std::domain_error("RationalFn: zero denominator");
  normalize_units();
}

RationalFn::RationalFn(const LaurentPoly& p) : num_(p.numerator()), den_(p.denominator()) {}

RationalFn::RationalFn(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw std::domain_error("RationalFn: zero denominator");
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), num.denominator().get_mpz_t(), den.denominator().get_mpz_t());
  num_ = scaled_numerator(num, l);
  den_ = scaled_numerator(den, l);
  canonicalize();
}

RationalFn::RationalFn(ZPoly num, ZPoly den, bool already_canonical)
    : num_(std::move(num)), den_(std::move(den)) {
  if (!already_canonical) canonicalize();
}

RationalFn RationalFn::from_zpolys(ZPoly num, ZPoly den) {
  if (den.is_zero()) throw std::domain_error("RationalFn: zero denominator");
  return RationalFn(std::move(num), std::move(den), false);
}

void RationalFn::normalize_units() {
  // den: lowest exponent 0, positive lowest coefficient; contents coprime.
  if (num_.is_zero()) {
    den_ = ZPoly(1L);
    return;
  }
  int sign = 1;
  std::int64_t shift = 0;
  den_ = den_.normalized_unit(&sign, &shift);
  num_ = num_.shifted(-shift);
  if (sign < 0) num_ = -num_;
  mpz_class cn = num_.content();
  mpz_class cd = den_.content();
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (g != 1) {
    num_ = num_.divexact(g);
    den_ = den_.divexact(g);
  }
}

void RationalFn::canonicalize() {
  if (den_.is_zero()) throw std::domain_error("RationalFn: zero denominator");
  if (num_.is_zero()) {
    den_ = ZPoly(1L);
    return;
  }
  if (!den_.is_monomial()) {
    ZPoly g = ZPoly::gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = ZPoly::divexact(num_, g);
      den_ = ZPoly::divexact(den_, g);
    }
  }
  normalize_units();
}

bool RationalFn::is_unit_monomial() const {
  return num_.is_unit() && den_.is_constant() && den_.lowest_coeff() == 1;
}

std::int64_t RationalFn::monomial_exponent() const {
  if (!is_monomial()) throw std::domain_error("RationalFn: not a monomial");
  return num_.low();
}

LaurentPoly RationalFn::to_laurent() const {
  if (!is_laurent())
    throw std::domain_error("RationalFn: value " + to_string() + " is not a Laurent polynomial");
  return LaurentPoly(num_, den_.lowest_coeff());
}

RationalFn RationalFn::operator-() const { return RationalFn(-num_, den_, true); }

RationalFn& RationalFn::operator+=(const RationalFn& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    canonicalize();
    return *this;
  }
  // Henrici: with g = gcd(b, d), a/b + c/d = (a d' + c b') / (b d' ) where
  // b = g b', d = g d'; only gcd(numerator, g) can remain.
  ZPoly g = ZPoly::gcd(den_, o.den_);
  ZPoly b1 = ZPoly::divexact(den_, g);
  ZPoly d1 = ZPoly::divexact(o.den_, g);
  ZPoly n = num_ * d1 + o.num_ * b1;
  ZPoly d = den_ * d1;
  if (n.is_zero()) {
    num_ = ZPoly();
    den_ = ZPoly(1L);
    return *this;
  }
  if (!g.is_constant()) {
    ZPoly h = ZPoly::gcd(n, g);
    if (!h.is_constant()) {
      n = ZPoly::divexact(n, h);
      d = ZPoly::divexact(d, h);
    }
  }
  num_ = std::move(n);
  den_ = std::move(d);
  normalize_units();
  return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& o) { return *this += -o; }

RationalFn& RationalFn::operator*=(const RationalFn& o) {
  if (is_zero() || o.is_zero()) {
    num_ = ZPoly();
    den_ = ZPoly(1L);
    return *this;
  }
  // (a/b)(c/d) with cross-cancellation: gcd(a, d) and gcd(c, b).
  ZPoly a = num_;
  ZPoly c = o.num_;
  ZPoly b = den_;
  ZPoly d = o.den_;
  if (!d.is_constant() && !a.is_monomial()) {
    ZPoly g = ZPoly::gcd(a, d);
    if (!g.is_constant()) {
      a = ZPoly::divexact(a, g);
      d = ZPoly::divexact(d, g);
    }
  }
  if (!b.is_constant() && !c.is_monomial()) {
    ZPoly g = ZPoly::gcd(c, b);
    if (!g.is_constant()) {
      c = ZPoly::divexact(c, g);
      b = ZPoly::divexact(b, g);
    }
  }
  num_ = a * c;
  den_ = b * d;
  normalize_units();
  return *this;
}

RationalFn RationalFn::inverse() const {
  if (is_zero()) throw std::domain_error("RationalFn: division by zero");
  RationalFn r(den_, num_, true);
  r.normalize_units();
  return r;
}

RationalFn& RationalFn::operator/=(const RationalFn& o) { return *this *= o.inverse(); }

RationalFn RationalFn::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  RationalFn r(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)), true);
  r.normalize_units();
  return r;
}

std::complex<double> RationalFn::eval(std::complex<double> z) const {
  if (z == std::complex<double>(0.0, 0.0))
    throw std::domain_error("RationalFn::eval: z must be non-zero");
  const std::complex<double> d = den_.eval(z);
  const double scale = den_.abs_scale(std::abs(z));
  if (std::abs(d) <= 1e-14 * scale) throw std::domain_error("RationalFn::eval: pole at z");
  return num_.eval(z) / d;
}

std::string RationalFn::to_string() const {
  if (den_.is_constant() && den_.lowest_coeff() == 1) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace tlk
