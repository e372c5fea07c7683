#include "tlk/mahler.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "tlk/serialize.hpp"

namespace tlk {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

cplx unit(double turns) {
  turns -= std::floor(turns);
  return std::polar(1.0, kTwoPi * turns);
}

// Strip zeros at both ends and compress f(z) = g(z^d).
std::vector<cplx> reduce(const std::vector<cplx>& coeffs) {
  std::size_t low = 0;
  while (low < coeffs.size() && coeffs[low] == cplx(0)) ++low;
  std::size_t high = coeffs.size();
  while (high > low && coeffs[high - 1] == cplx(0)) --high;
  std::vector<cplx> a(coeffs.begin() + static_cast<long>(low), coeffs.begin() + static_cast<long>(high));
  std::size_t g = 0;
  for (std::size_t j = 1; j < a.size(); ++j)
    if (a[j] != cplx(0)) g = std::gcd(g, j);
  if (g > 1) {
    std::vector<cplx> c;
    for (std::size_t j = 0; j < a.size(); j += g) c.push_back(a[j]);
    a = std::move(c);
  }
  return a;
}

std::vector<cplx> to_complex(const LaurentPoly& f) {
  std::vector<cplx> a;
  if (f.is_zero()) return a;
  const double den = mpz_class(f.denominator()).get_d();
  for (const auto& c : f.numerator().coeffs()) a.emplace_back(c.get_d() / den, 0.0);
  return a;
}

// log M by Jensen; a is reduced and non-empty.
double log_mahler_reduced(const std::vector<cplx>& a, const RootOptions& opts) {
  double lm = std::log(std::abs(a.back()));
  if (a.size() == 2) {
    // a_0 + a_1 z: M = max(|a_0|, |a_1|)
    return std::log(std::max(std::abs(a[0]), std::abs(a[1])));
  }
  if (a.size() > 2)
    for (const cplx& r : poly_roots(a, opts)) {
      const double m = std::abs(r);
      if (m > 1) lm += std::log(m);
    }
  return lm;
}

double log_abs_horner(const std::vector<cplx>& a, cplx z) {
  cplx p = 0;
  for (std::size_t j = a.size(); j-- > 0;) p = p * z + a[j];
  return std::log(std::abs(p));
}

double midpoint_log_mean(const std::vector<cplx>& a, std::size_t n) {
  long double sum = 0;
  for (std::size_t k = 0; k < n; ++k)
    sum += log_abs_horner(a, unit((static_cast<double>(k) + 0.5) / static_cast<double>(n)));
  return static_cast<double>(sum / static_cast<long double>(n));
}

}  // namespace

MahlerResult mahler_1var(const std::vector<cplx>& coeffs, const RootOptions& opts) {
  const std::vector<cplx> a = reduce(coeffs);
  if (a.empty()) throw std::domain_error("mahler_1var: zero polynomial");
  MahlerResult r;
  r.method = "jensen";
  r.value = std::exp(log_mahler_reduced(a, opts));
  r.samples = a.size() - 1;
  return r;
}

MahlerResult mahler_1var(const LaurentPoly& f, const RootOptions& opts) {
  if (f.is_zero()) throw std::domain_error("mahler_1var: zero polynomial");
  return mahler_1var(to_complex(f), opts);
}

MahlerResult mahler_1var_quadrature(const LaurentPoly& f, std::size_t n) {
  if (f.is_zero()) throw std::domain_error("mahler_1var_quadrature: zero polynomial");
  if (n < 2) throw std::invalid_argument("mahler_1var_quadrature: need at least two points");
  const std::vector<cplx> a = to_complex(f);
  MahlerResult r;
  r.method = "quadrature";
  r.value = std::exp(midpoint_log_mean(a, n));
  r.error_estimate = std::abs(r.value - std::exp(midpoint_log_mean(a, n / 2)));
  r.samples = n;
  return r;
}

BivariatePoly BivariatePoly::from_z_coefficients(const std::vector<LaurentPoly>& polys) {
  BivariatePoly p;
  for (std::size_t j = 0; j < polys.size(); ++j)
    for (const auto& t : polys[j].terms()) p.add(t.exponent, static_cast<std::int64_t>(j), t.coeff);
  return p;
}

void BivariatePoly::add(std::int64_t a, std::int64_t b, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = c_.emplace(Key{a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

bool BivariatePoly::depends_on_z() const {
  if (c_.empty()) return false;
  const std::int64_t b = c_.begin()->first.second;
  for (const auto& [key, c] : c_)
    if (key.second != b) return true;
  return false;
}

LaurentPoly BivariatePoly::substitute(std::int64_t d) const {
  std::vector<LaurentPoly::Term> terms;
  std::map<std::int64_t, mpq_class> acc;
  for (const auto& [key, c] : c_) acc[key.first + d * key.second] += c;
  for (const auto& [e, c] : acc)
    if (c != 0) terms.push_back({e, c});
  return LaurentPoly::from_terms(terms);
}

std::vector<cplx> BivariatePoly::slice(cplx a) const {
  if (c_.empty()) return {};
  std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
  for (const auto& [key, c] : c_) {
    lo = std::min(lo, key.second);
    hi = std::max(hi, key.second);
  }
  std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1), cplx(0));
  for (const auto& [key, c] : c_) out[static_cast<std::size_t>(key.second - lo)] += c.get_d() * std::pow(a, key.first);
  return out;
}

cplx BivariatePoly::eval(cplx a, cplx z) const {
  cplx s = 0;
  for (const auto& [key, c] : c_) s += c.get_d() * std::pow(a, key.first) * std::pow(z, key.second);
  return s;
}

std::string BivariatePoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream o;
  bool first = true;
  for (const auto& [key, c] : c_) {
    if (!first) o << (c > 0 ? " + " : " - ");
    else if (c < 0) o << "-";
    first = false;
    o << abs(c) << "*A^" << key.first << "*z^" << key.second;
  }
  return o.str();
}

namespace {

BivariatePoly transposed(const BivariatePoly& f) {
  BivariatePoly t;
  for (const auto& [key, c] : f.terms()) t.add(key.second, key.first, c);
  return t;
}

// Mean of log M over slices on the n-point midpoint grid of the A angle;
// powers of A are taken from exact turn counts to keep the phase accurate.
double slice_log_mean(const BivariatePoly& f, std::size_t n, const RootOptions& opts, std::size_t* skipped) {
  std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
  for (const auto& [key, c] : f.terms()) {
    lo = std::min(lo, key.second);
    hi = std::max(hi, key.second);
  }
  long double sum = 0;
  std::size_t used = 0;
  std::vector<cplx> s(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    std::fill(s.begin(), s.end(), cplx(0));
    for (const auto& [key, c] : f.terms())
      s[static_cast<std::size_t>(key.second - lo)] += c.get_d() * unit(theta * static_cast<double>(key.first));
    const std::vector<cplx> a = reduce(s);
    if (a.empty()) {
      ++*skipped;
      continue;
    }
    sum += log_mahler_reduced(a, opts);
    ++used;
  }
  if (used == 0) throw std::domain_error("mahler_2var: every slice vanished");
  return static_cast<double>(sum / static_cast<long double>(used));
}

}  // namespace

MahlerResult mahler_2var(const BivariatePoly& f, std::size_t n, const RootOptions& opts) {
  if (f.is_zero()) throw std::domain_error("mahler_2var: zero polynomial");
  if (n < 2) throw std::invalid_argument("mahler_2var: need at least two grid points");
  // Jensen is exact in the sliced variable; put the one f depends on there.
  const BivariatePoly g = f.depends_on_z() ? f : transposed(f);
  MahlerResult r;
  r.method = "jensen";
  std::size_t skipped_half = 0;
  r.value = std::exp(slice_log_mean(g, n, opts, &r.skipped));
  r.error_estimate = std::abs(r.value - std::exp(slice_log_mean(g, n / 2, opts, &skipped_half)));
  r.samples = n;
  return r;
}

MahlerResult mahler_2var_quadrature(const BivariatePoly& f, std::size_t n) {
  if (f.is_zero()) throw std::domain_error("mahler_2var_quadrature: zero polynomial");
  if (n < 2) throw std::invalid_argument("mahler_2var_quadrature: need at least two grid points");
  auto mean = [&](std::size_t m) {
    long double sum = 0;
    std::vector<cplx> zs(m);
    for (std::size_t j = 0; j < m; ++j) zs[j] = unit((static_cast<double>(j) + 0.5) / static_cast<double>(m));
    for (std::size_t k = 0; k < m; ++k) {
      const double theta = (static_cast<double>(k) + 0.5) / static_cast<double>(m);
      std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
      for (const auto& [key, c] : f.terms()) {
        lo = std::min(lo, key.second);
        hi = std::max(hi, key.second);
      }
      std::vector<cplx> s(static_cast<std::size_t>(hi - lo + 1), cplx(0));
      for (const auto& [key, c] : f.terms())
        s[static_cast<std::size_t>(key.second - lo)] += c.get_d() * unit(theta * static_cast<double>(key.first));
      long double row = 0;
      for (std::size_t j = 0; j < m; ++j) row += log_abs_horner(s, zs[j]);
      sum += row;
    }
    return static_cast<double>(sum / (static_cast<long double>(m) * static_cast<long double>(m)));
  };
  MahlerResult r;
  r.method = "quadrature";
  r.value = std::exp(mean(n));
  r.error_estimate = std::abs(r.value - std::exp(mean(n / 2)));
  r.samples = n * n;
  return r;
}

LawtonReport lawton_sequence(const BivariatePoly& f, std::int64_t d_max, std::size_t grid) {
  if (f.is_zero()) throw std::domain_error("lawton_sequence: zero polynomial");
  if (d_max < 1) throw std::invalid_argument("lawton_sequence: d_max must be positive");
  LawtonReport rep;
  for (std::int64_t d = 1; d <= d_max; ++d) {
    const LaurentPoly g = f.substitute(d);
    rep.values.emplace_back(d, g.is_zero() ? 0.0 : mahler_1var(g).value);
  }
  rep.limit = mahler_2var(f, grid).value;
  for (const auto& [d, v] : rep.values)
    if (2 * d >= d_max) rep.tail_deviation = std::max(rep.tail_deviation, std::abs(v - rep.limit));
  for (std::size_t t = 1; t < rep.values.size(); ++t)
    if (4 * rep.values[t - 1].first >= 3 * d_max)
      rep.tail_cauchy = std::max(rep.tail_cauchy, std::abs(rep.values[t].second - rep.values[t - 1].second));
  return rep;
}

LimitPolynomial limit_polynomial(const TwistFamily& fam) {
  if (fam.terms.empty()) throw std::domain_error("limit_polynomial: empty family");
  for (const auto& t : fam.terms)
    if (t.sign != fam.terms.front().sign)
      throw std::invalid_argument("limit_polynomial: mixed signs; the limit depends on the parity of m");
  LimitPolynomial lp;
  lp.e_min = fam.terms.front().exponent;
  std::int64_t g = 0;
  for (const auto& t : fam.terms) g = std::gcd(g, t.exponent - lp.e_min);
  lp.gap = g == 0 ? 1 : g;
  const ZPoly d = fam.common_denominator();
  lp.denominator = LaurentPoly(d);
  const RationalFn df = RationalFn::from_zpolys(d, ZPoly(1));
  for (const auto& t : fam.terms) {
    const LaurentPoly q = (t.q * df).to_laurent();
    for (const auto& term : q.terms()) lp.p.add(term.exponent, (t.exponent - lp.e_min) / lp.gap, term.coeff);
  }
  return lp;
}

TwistConvergence twist_convergence(const TwistFamily& fam, int m_max, std::size_t grid, UnknotNormalization norm) {
  return twist_convergence_range(fam, 1, m_max, grid, norm);
}

TwistConvergence twist_convergence_range(const TwistFamily& fam, int m_min, int m_max, std::size_t grid,
                                         UnknotNormalization norm) {
  if (m_min < 0 || m_max < m_min) throw std::invalid_argument("twist_convergence: bad range of m");
  TwistConvergence out;
  for (int m = m_min; m <= m_max; ++m) {
    const double v = mahler_1var(colored_jones_twist(fam, m, norm)).value;
    const double prev = out.rows.empty() ? std::numeric_limits<double>::quiet_NaN() : v - out.rows.back().value;
    out.rows.push_back({m, v, prev});
  }
  const LimitPolynomial lp = limit_polynomial(fam);
  const MahlerResult mp = mahler_2var(lp.p, grid);
  double scale = mahler_1var(lp.denominator).value;
  if (norm == UnknotNormalization::One) scale *= mahler_1var(delta_closed(fam.i)).value;
  out.limit = mp.value / scale;
  out.limit_error_estimate = mp.error_estimate / scale;
  const std::size_t first = out.rows.size() > 10 ? out.rows.size() - 10 : 0;
  for (std::size_t t = first; t < out.rows.size(); ++t)
    out.deviations.emplace_back(out.rows[t].m, std::abs(out.rows[t].value - out.limit));
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string convergence_csv(const TwistConvergence& c) {
  std::string s = "m,value,delta_prev\n";
  for (const auto& r : c.rows)
    s += std::to_string(r.m) + "," + format_double(r.value) + "," + (std::isnan(r.delta_prev) ? "" : format_double(r.delta_prev)) + "\n";
  return s;
}

std::string lawton_csv(const LawtonReport& r) {
  std::string s = "d,value\n";
  for (const auto& [d, v] : r.values) s += std::to_string(d) + "," + format_double(v) + "\n";
  return s;
}

nlohmann::json to_json(const BivariatePoly& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [key, c] : f.terms())
    terms.push_back({key.first, key.second, mpz_to_json(c.get_num()), mpz_to_json(c.get_den())});
  return terms;
}

BivariatePoly bivariate_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("bivariate polynomial: expected an array of terms");
  BivariatePoly f;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 4) throw std::invalid_argument("bivariate polynomial: term must be [a, b, num, den]");
    const mpz_class den = mpz_from_json(t[3]);
    if (den == 0) throw std::invalid_argument("bivariate polynomial: zero denominator");
    mpq_class c(mpz_from_json(t[2]), den);
    c.canonicalize();
    if (c == 0) throw std::invalid_argument("bivariate polynomial: zero coefficient");
    f.add(t[0].get<std::int64_t>(), t[1].get<std::int64_t>(), c);
  }
  return f;
}

}  // namespace tlk
