// Numeric Mahler measures: Jensen's formula on roots, torus quadrature,
// Lawton substitutions and the limit of twist families.
//
// All floating point is double precision. Error estimates are heuristic
// (comparison of two resolutions), not certified bounds.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "tlk/laurent.hpp"
#include "tlk/twist.hpp"

namespace tlk {

using cplx = std::complex<double>;

struct RootOptions {
  int max_iterations = 1000;
  /// Stop once |f(z)| <= tolerance · Σ|a_j||z|^j for every root.
  double tolerance = 1e-12;
  /// Accept the result only if every relative residual is <= this.
  double acceptance = 1e-8;
  int restarts = 2;
  std::uint64_t seed = 0x5eed;
};

class RootFindingError : public std::runtime_error {
 public:
  RootFindingError(const std::string& what, double worst_residual)
      : std::runtime_error(what), worst_residual_(worst_residual) {}
  double worst_residual() const { return worst_residual_; }

 private:
  double worst_residual_;
};

/// All roots, with multiplicity, of a_0 + a_1 z + ... + a_n z^n (ascending
/// coefficients, a_n != 0) by Aberth-Ehrlich iteration from Newton polygon
/// starting points. Zero roots are split off exactly.
std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs, const RootOptions& opts = {});

/// |f(z)| / Σ|a_j||z|^j
double relative_residual(const std::vector<cplx>& coeffs, cplx z);

struct MahlerResult {
  double value = 0;
  std::string method;
  double error_estimate = 0;
  /// Roots found (Jensen) or torus samples (quadrature).
  std::size_t samples = 0;
  /// Slices skipped because they vanished identically.
  std::size_t skipped = 0;
};

/// M(f) = |lead| Π max(1, |root|), after stripping the monomial factor and
/// compressing f(z) = g(z^d) to g. Throws std::domain_error for f = 0.
MahlerResult mahler_1var(const LaurentPoly& f, const RootOptions& opts = {});
MahlerResult mahler_1var(const std::vector<cplx>& coeffs, const RootOptions& opts = {});
/// exp of the midpoint rule for ∫ log|f(e^{2πiθ})| dθ on n points; the
/// error estimate compares against n/2 points.
MahlerResult mahler_1var_quadrature(const LaurentPoly& f, std::size_t n = std::size_t{1} << 20);

/// Σ c_{a,b} A^a z^b with exact rational coefficients.
class BivariatePoly {
 public:
  using Key = std::pair<std::int64_t, std::int64_t>;

  BivariatePoly() = default;
  /// P(A, z) = Σ_j z^j polys[j]
  static BivariatePoly from_z_coefficients(const std::vector<LaurentPoly>& polys);

  void add(std::int64_t a, std::int64_t b, const mpq_class& c);
  bool is_zero() const { return c_.empty(); }
  const std::map<Key, mpq_class>& terms() const { return c_; }
  bool depends_on_z() const;

  /// f(A, A^d), exactly.
  LaurentPoly substitute(std::int64_t d) const;
  /// Coefficients in z (ascending from the lowest z exponent) at a fixed A.
  std::vector<cplx> slice(cplx a) const;
  cplx eval(cplx a, cplx z) const;
  std::string to_string() const;

  friend bool operator==(const BivariatePoly& x, const BivariatePoly& y) = default;

 private:
  std::map<Key, mpq_class> c_;
};

/// exp of the mean over an n-point midpoint grid in the A angle of
/// log M(f(e^{2πiθ}, z)), each slice by Jensen. The error estimate is
/// |M_n - M_{n/2}|.
MahlerResult mahler_2var(const BivariatePoly& f, std::size_t n = 4096, const RootOptions& opts = {});
/// Cross-check: the n × n midpoint rule for log|f| on the torus.
MahlerResult mahler_2var_quadrature(const BivariatePoly& f, std::size_t n = 4096);

struct LawtonReport {
  std::vector<std::pair<std::int64_t, double>> values;  // (d, M(f(z, z^d)))
  double limit = 0;
  /// sup |M_d - limit| over d in [d_max/2, d_max].
  double tail_deviation = 0;
  /// max |M_{d+1} - M_d| over the last quarter of the range.
  double tail_cauchy = 0;
};
LawtonReport lawton_sequence(const BivariatePoly& f, std::int64_t d_max, std::size_t grid = 4096);

/// P(A, z) = D(A) Σ_u z^{(e_u - e_min)/g} q_u(A) for a family with a single
/// sign, where D clears the denominators of the q_u and g is the gcd of the
/// exponent gaps, so that D p_m = A^{m e_min} P(A, A^{m g}).
struct LimitPolynomial {
  BivariatePoly p;
  LaurentPoly denominator;
  std::int64_t e_min = 0;
  std::int64_t gap = 1;
};
LimitPolynomial limit_polynomial(const TwistFamily& fam);

struct ConvergenceRow {
  int m;
  double value;
  double delta_prev;  // NaN for the first row
};
struct TwistConvergence {
  std::vector<ConvergenceRow> rows;
  /// M(P) / M(D)
  double limit = 0;
  double limit_error_estimate = 0;
  /// |M(J_m) - limit| for the last ten rows.
  std::vector<std::pair<int, double>> deviations;
};
/// M(J_m) for m = 1..m_max and the two-variable limit.
TwistConvergence twist_convergence(const TwistFamily& fam, int m_max, std::size_t grid = 4096,
                                   UnknotNormalization norm = UnknotNormalization::Raw);
/// Rows for m = m_min..m_max only.
TwistConvergence twist_convergence_range(const TwistFamily& fam, int m_min, int m_max, std::size_t grid = 4096,
                                         UnknotNormalization norm = UnknotNormalization::Raw);

/// `m,value,delta_prev` and `d,value` tables.
std::string convergence_csv(const TwistConvergence& c);
std::string lawton_csv(const LawtonReport& r);
/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

nlohmann::json to_json(const BivariatePoly& f);
BivariatePoly bivariate_from_json(const nlohmann::json& j);

}  // namespace tlk
