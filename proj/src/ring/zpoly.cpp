#include "tlk/zpoly.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tlk {

namespace {

using i128 = __int128;

mpz_class from_i128(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  const auto hi = static_cast<std::uint64_t>(u >> 64);
  const auto lo = static_cast<std::uint64_t>(u);
  mpz_class r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &hi);
  r <<= 64;
  mpz_class l;
  mpz_import(l.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &lo);
  r += l;
  if (neg) r = -r;
  return r;
}

std::size_t max_bits(const std::vector<mpz_class>& c, bool& fits_long) {
  std::size_t bits = 0;
  fits_long = true;
  for (const auto& x : c) {
    if (!mpz_fits_slong_p(x.get_mpz_t())) fits_long = false;
    bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
  }
  return bits;
}

std::size_t bit_length(std::size_t n) {
  std::size_t b = 0;
  while (n) {
    ++b;
    n >>= 1;
  }
  return b;
}

// Plain polynomial helpers on coefficient vectors (index = exponent).
using Coeffs = std::vector<mpz_class>;

void trim_top(Coeffs& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

// a = q*b exactly, b[0] may be anything non-trivial; returns false if not.
bool divexact_dense(const Coeffs& a, const Coeffs& b, Coeffs& q) {
  if (b.empty()) throw std::domain_error("ZPoly: division by zero");
  if (a.empty()) {
    q.clear();
    return true;
  }
  if (a.size() < b.size()) return false;
  // Cheap rejection on the constant terms.
  if (b.front() != 0 && a.front() != 0 &&
      !mpz_divisible_p(a.front().get_mpz_t(), b.front().get_mpz_t()))
    return false;
  Coeffs r = a;
  const std::size_t nb = b.size();
  q.assign(a.size() - nb + 1, 0);
  const mpz_class& lead = b.back();
  mpz_class t;
  for (std::size_t k = q.size(); k-- > 0;) {
    mpz_class& top = r[k + nb - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) return false;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    q[k] = t;
    for (std::size_t j = 0; j < nb; ++j)
      mpz_submul(r[k + j].get_mpz_t(), t.get_mpz_t(), b[j].get_mpz_t());
  }
  for (const auto& x : r)
    if (x != 0) return false;
  trim_top(q);
  return true;
}

Coeffs prem(Coeffs a, const Coeffs& b) {
  // Pseudo-remainder of a by b (deg a >= deg b).
  const std::size_t nb = b.size();
  const mpz_class& lb = b.back();
  while (a.size() >= nb && !a.empty()) {
    const mpz_class la = a.back();
    const std::size_t shift = a.size() - nb;
    for (auto& x : a) x *= lb;
    for (std::size_t j = 0; j < nb; ++j) a[shift + j] -= la * b[j];
    trim_top(a);
  }
  return a;
}

mpz_class content_of(const Coeffs& c) {
  mpz_class g = 0;
  for (const auto& x : c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void make_primitive(Coeffs& c) {
  if (c.empty()) return;
  mpz_class g = content_of(c);
  if (c.back() < 0) g = -g;
  if (g != 1)
    for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

Coeffs gcd_prs(Coeffs a, Coeffs b) {
  if (a.size() < b.size()) std::swap(a, b);
  make_primitive(a);
  make_primitive(b);
  while (!b.empty()) {
    Coeffs r = prem(a, b);
    a = std::move(b);
    make_primitive(r);
    b = std::move(r);
  }
  return a;
}

mpz_class eval_at(const Coeffs& c, const mpz_class& x) {
  mpz_class v = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    v *= x;
    v += c[k];
  }
  return v;
}

mpz_class max_abs(const Coeffs& c) {
  mpz_class m = 0;
  for (const auto& x : c)
    if (abs(x) > m) m = abs(x);
  return m;
}

// Heuristic gcd of primitive polynomials; false when all attempts fail.
bool gcd_heuristic(const Coeffs& a, const Coeffs& b, Coeffs& g) {
  mpz_class xi = 2 * std::min(max_abs(a), max_abs(b)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    mpz_class ga = eval_at(a, xi);
    mpz_class gb = eval_at(b, xi);
    mpz_class gamma;
    mpz_gcd(gamma.get_mpz_t(), ga.get_mpz_t(), gb.get_mpz_t());
    Coeffs cand;
    const mpz_class half = xi / 2;
    while (gamma != 0) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), gamma.get_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      cand.push_back(r);
      gamma -= r;
      mpz_divexact(gamma.get_mpz_t(), gamma.get_mpz_t(), xi.get_mpz_t());
    }
    trim_top(cand);
    if (!cand.empty()) {
      make_primitive(cand);
      Coeffs q;
      if (divexact_dense(a, cand, q) && divexact_dense(b, cand, q)) {
        g = std::move(cand);
        return true;
      }
    }
    xi = (xi * 73794) / 27011;
  }
  return false;
}

}  // namespace

ZPoly::ZPoly(long c) {
  if (c != 0) c_.emplace_back(c);
}

ZPoly::ZPoly(const mpz_class& c) {
  if (c != 0) c_.push_back(c);
}

ZPoly ZPoly::monomial(const mpz_class& c, std::int64_t e) {
  ZPoly p(c);
  if (!p.is_zero()) p.low_ = e;
  return p;
}

ZPoly ZPoly::from_dense(std::int64_t low, std::vector<mpz_class> coeffs) {
  ZPoly p;
  p.low_ = low;
  p.c_ = std::move(coeffs);
  p.trim();
  return p;
}

void ZPoly::trim() {
  trim_top(c_);
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<std::int64_t>(lead);
  }
  if (c_.empty()) low_ = 0;
}

bool ZPoly::is_unit() const {
  return c_.size() == 1 && (c_[0] == 1 || c_[0] == -1);
}

mpz_class ZPoly::coeff(std::int64_t e) const {
  if (c_.empty() || e < low_ || e > high()) return 0;
  return c_[static_cast<std::size_t>(e - low_)];
}

ZPoly ZPoly::shifted(std::int64_t k) const {
  ZPoly p = *this;
  if (!p.is_zero()) p.low_ += k;
  return p;
}

ZPoly ZPoly::operator-() const {
  ZPoly p = *this;
  for (auto& x : p.c_) x = -x;
  return p;
}

ZPoly& ZPoly::operator+=(const ZPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const std::int64_t lo = std::min(low_, o.low_);
  const std::int64_t hi = std::max(high(), o.high());
  if (lo < low_) {
    c_.insert(c_.begin(), static_cast<std::size_t>(low_ - lo), mpz_class(0));
    low_ = lo;
  }
  c_.resize(static_cast<std::size_t>(hi - lo + 1));
  const auto off = static_cast<std::size_t>(o.low_ - low_);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[off + k] += o.c_[k];
  trim();
  return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) { return *this += -o; }

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const std::size_t na = a.c_.size();
  const std::size_t nb = b.c_.size();
  std::vector<mpz_class> out(na + nb - 1);
  bool fa = false;
  bool fb = false;
  const std::size_t bits = max_bits(a.c_, fa) + max_bits(b.c_, fb) +
                           bit_length(std::min(na, nb));
  if (fa && fb && bits < 124) {
    std::vector<long> sa(na);
    std::vector<long> sb(nb);
    for (std::size_t i = 0; i < na; ++i) sa[i] = a.c_[i].get_si();
    for (std::size_t j = 0; j < nb; ++j) sb[j] = b.c_[j].get_si();
    std::vector<i128> acc(na + nb - 1, 0);
    for (std::size_t i = 0; i < na; ++i) {
      if (sa[i] == 0) continue;
      const i128 x = sa[i];
      for (std::size_t j = 0; j < nb; ++j) acc[i + j] += x * sb[j];
    }
    for (std::size_t k = 0; k < acc.size(); ++k) {
      if (acc[k] >= LONG_MIN && acc[k] <= LONG_MAX)
        out[k] = static_cast<long>(acc[k]);
      else
        out[k] = from_i128(acc[k]);
    }
  } else {
    for (std::size_t i = 0; i < na; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < nb; ++j)
        mpz_addmul(out[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  return ZPoly::from_dense(a.low_ + b.low_, std::move(out));
}

ZPoly& ZPoly::operator*=(const ZPoly& o) { return *this = *this * o; }

ZPoly& ZPoly::operator*=(const mpz_class& s) {
  if (s == 0) {
    c_.clear();
    low_ = 0;
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

bool operator<(const ZPoly& a, const ZPoly& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  if (a.low_ != b.low_) return a.low_ < b.low_;
  for (std::size_t k = 0; k < a.c_.size(); ++k) {
    const int c = cmp(a.c_[k], b.c_[k]);
    if (c != 0) return c < 0;
  }
  return false;
}

ZPoly ZPoly::pow(unsigned n) const {
  ZPoly result(1L);
  ZPoly base = *this;
  while (n) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n) base = base * base;
  }
  return result;
}

mpz_class ZPoly::content() const { return content_of(c_); }

ZPoly ZPoly::divexact(const mpz_class& s) const {
  ZPoly p = *this;
  for (auto& x : p.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
  return p;
}

bool ZPoly::try_divexact(const ZPoly& a, const ZPoly& b, ZPoly& quotient) {
  if (b.is_zero()) throw std::domain_error("ZPoly: division by zero");
  if (a.is_zero()) {
    quotient = ZPoly();
    return true;
  }
  if (b.is_monomial()) {
    if (!mpz_divisible_p(a.content().get_mpz_t(), b.c_[0].get_mpz_t())) return false;
    quotient = a.divexact(b.c_[0]).shifted(-b.low_);
    return true;
  }
  std::vector<mpz_class> q;
  if (!divexact_dense(a.c_, b.c_, q)) return false;
  quotient = from_dense(a.low_ - b.low_, std::move(q));
  return true;
}

ZPoly ZPoly::divexact(const ZPoly& a, const ZPoly& b) {
  ZPoly q;
  if (!try_divexact(a, b, q)) throw std::domain_error("ZPoly: inexact division");
  return q;
}

ZPoly ZPoly::normalized_unit(int* sign, std::int64_t* shift) const {
  ZPoly p = *this;
  const int s = (p.is_zero() || p.c_.front() > 0) ? 1 : -1;
  const std::int64_t sh = p.low_;
  if (s < 0)
    for (auto& x : p.c_) x = -x;
  p.low_ = 0;
  if (sign) *sign = s;
  if (shift) *shift = sh;
  return p;
}

ZPoly ZPoly::gcd(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero()) return b.normalized_unit();
  if (b.is_zero()) return a.normalized_unit();
  mpz_class ca = a.content();
  mpz_class cb = b.content();
  mpz_class cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  if (a.is_monomial() || b.is_monomial()) return ZPoly(cg);
  std::vector<mpz_class> pa = a.c_;
  std::vector<mpz_class> pb = b.c_;
  for (auto& x : pa) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), ca.get_mpz_t());
  for (auto& x : pb) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), cb.get_mpz_t());
  std::vector<mpz_class> g;
  if (pa == pb) {
    g = pa;
  } else {
    std::vector<mpz_class> q;
    if (pa.size() <= pb.size() && divexact_dense(pb, pa, q))
      g = pa;
    else if (pb.size() < pa.size() && divexact_dense(pa, pb, q))
      g = pb;
    else if (!gcd_heuristic(pa, pb, g))
      g = gcd_prs(pa, pb);
  }
  ZPoly r = from_dense(0, std::move(g));
  r *= cg;
  return r.normalized_unit();
}

std::complex<double> ZPoly::eval(std::complex<double> z) const {
  if (c_.empty()) return {0.0, 0.0};
  std::complex<double> v{0.0, 0.0};
  for (std::size_t k = c_.size(); k-- > 0;) v = v * z + c_[k].get_d();
  if (low_ == 0) return v;
  return v * std::pow(z, static_cast<int>(low_));
}

double ZPoly::abs_scale(double r) const {
  double s = 0.0;
  for (std::size_t k = 0; k < c_.size(); ++k)
    s += std::abs(c_[k].get_d()) * std::pow(r, static_cast<double>(low_ + static_cast<std::int64_t>(k)));
  return s;
}

std::size_t ZPoly::hash() const {
  std::size_t h = std::hash<std::int64_t>{}(low_) ^ (c_.size() * 0x9e3779b97f4a7c15ULL);
  for (const auto& x : c_) {
    const std::size_t v = mpz_size(x.get_mpz_t()) ? mpz_getlimbn(x.get_mpz_t(), 0) : 0;
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(mpz_sgn(x.get_mpz_t()) + 1);
  }
  return h;
}

std::string ZPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const mpz_class& c = c_[k];
    if (c == 0) continue;
    const std::int64_t e = low_ + static_cast<std::int64_t>(k);
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "A";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

}  // namespace tlk
