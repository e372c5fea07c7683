#include "tlk/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace tlk {

LaurentPoly::LaurentPoly(long c) : num_(c) {}

LaurentPoly::LaurentPoly(const mpq_class& c) : num_(c.get_num()), den_(c.get_den()) {
  if (den_ == 0) throw std::domain_error("LaurentPoly: zero denominator");
  normalize();
}

LaurentPoly::LaurentPoly(ZPoly p, mpz_class den) : num_(std::move(p)), den_(std::move(den)) {
  if (den_ == 0) throw std::domain_error("LaurentPoly: zero denominator");
  normalize();
}

void LaurentPoly::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  if (den_ == 1) return;
  mpz_class g = num_.content();
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    num_ = num_.divexact(g);
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

LaurentPoly LaurentPoly::monomial(const mpq_class& c, std::int64_t e) {
  return LaurentPoly(ZPoly::monomial(c.get_num(), e), c.get_den());
}

LaurentPoly LaurentPoly::from_terms(const std::vector<Term>& terms) {
  LaurentPoly r;
  for (const auto& t : terms) r += monomial(t.coeff, t.exponent);
  return r;
}

mpq_class LaurentPoly::coeff(std::int64_t e) const {
  mpq_class q(num_.coeff(e), den_);
  q.canonicalize();
  return q;
}

std::vector<LaurentPoly::Term> LaurentPoly::terms() const {
  std::vector<Term> out;
  const auto& c = num_.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    mpq_class q(c[k], den_);
    q.canonicalize();
    out.push_back({num_.low() + static_cast<std::int64_t>(k), q});
  }
  return out;
}

std::size_t LaurentPoly::term_count() const {
  std::size_t n = 0;
  for (const auto& x : num_.coeffs())
    if (x != 0) ++n;
  return n;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  r.num_ = -r.num_;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly r = *this;
  r.num_ = num_.pow(n);
  mpz_pow_ui(r.den_.get_mpz_t(), den_.get_mpz_t(), n);
  return r;
}

LaurentPoly LaurentPoly::substitute_power(std::int64_t k) const {
  if (k == 0) {
    mpz_class s = 0;
    for (const auto& c : num_.coeffs()) s += c;
    return LaurentPoly(ZPoly(s), den_);
  }
  LaurentPoly r;
  for (const auto& t : terms()) r += monomial(t.coeff, t.exponent * k);
  return r;
}

std::complex<double> LaurentPoly::eval(std::complex<double> z) const {
  if (z == std::complex<double>(0.0, 0.0))
    throw std::domain_error("LaurentPoly::eval: z must be non-zero");
  return num_.eval(z) / den_.get_d();
}

std::string LaurentPoly::to_string() const {
  if (den_ == 1) return num_.to_string();
  std::ostringstream os;
  os << "(" << num_.to_string() << ")/" << den_.get_str();
  return os.str();
}

LaurentPoly qint(int n) {
  if (n < 0) throw std::invalid_argument("qint: n must be non-negative");
  LaurentPoly r;
  for (int j = 0; j < n; ++j) r += LaurentPoly::monomial(1, 2 * (n - 1 - 2 * j));
  return r;
}

LaurentPoly loop_value() {
  return LaurentPoly::monomial(-1, 2) + LaurentPoly::monomial(-1, -2);
}

LaurentPoly delta_closed(int n) {
  if (n < 0) throw std::invalid_argument("delta_closed: n must be non-negative");
  LaurentPoly q = qint(n + 1);
  return (n % 2 == 0) ? q : -q;
}

}  // namespace tlk
