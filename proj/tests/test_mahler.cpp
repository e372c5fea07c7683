#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gen.hpp"
#include "tlk/mahler.hpp"

using namespace tlk;
using tlk::testing::Gen;

namespace {

const double kPhi = (1 + std::sqrt(5.0)) / 2;

LaurentPoly poly(std::int64_t low, const std::vector<long>& c) {
  std::vector<LaurentPoly::Term> t;
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != 0) t.push_back({low + static_cast<std::int64_t>(j), mpq_class(c[j])});
  return LaurentPoly::from_terms(t);
}

LaurentPoly random_poly(Gen& g, int max_degree, long range) {
  std::vector<long> c(static_cast<std::size_t>(g.integer(1, max_degree)) + 1);
  for (auto& x : c) x = g.integer(-range, range);
  if (c.front() == 0) c.front() = 1;
  if (c.back() == 0) c.back() = -1;
  return poly(0, c);
}

// Greedy matching of two root lists.
double max_mismatch(std::vector<cplx> a, std::vector<cplx> b) {
  double worst = 0;
  for (const cplx& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](cplx p, cplx q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

std::vector<cplx> from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1};
  for (const cplx& r : roots) {
    std::vector<cplx> n(c.size() + 1, 0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      n[j + 1] += c[j];
      n[j] -= r * c[j];
    }
    c = n;
  }
  return c;
}

BivariatePoly biv(const std::vector<std::tuple<std::int64_t, std::int64_t, long>>& terms) {
  BivariatePoly f;
  for (auto [a, b, c] : terms) f.add(a, b, c);
  return f;
}

// exp((3√3 / 4π) L(χ_{-3}, 2)) by direct summation of the L-series; the
// Mahler measure of 1 + x + y.
double smyth_constant() {
  long double l = 0;
  for (long n = 1; n <= 3000000; ++n) {
    const long r = n % 3;
    if (r == 0) continue;
    l += (r == 1 ? 1.0L : -1.0L) / (static_cast<long double>(n) * static_cast<long double>(n));
  }
  return std::exp(static_cast<double>(3 * std::sqrt(3.0L) / (4 * std::numbers::pi_v<long double>) * l));
}

}  // namespace

TEST_CASE("roots of small polynomials") {
  CHECK(max_mismatch(poly_roots({-1, 0, 1}), {1, -1}) < 1e-14);
  CHECK(max_mismatch(poly_roots({-1, -1, 1}), {kPhi, 1 - kPhi}) < 1e-14);
  const auto cube = poly_roots({-8, 12, -6, 1});
  REQUIRE(cube.size() == 3);
  cplx centre = 0;
  for (const cplx& r : cube) {
    centre += r / 3.0;
    CHECK(std::abs(r - 2.0) < 1e-4);
  }
  CHECK(std::abs(centre - 2.0) < 1e-6);
  // (z - 1)^2 (z + 1)^2 (z - i)^3: multiple roots on the unit circle.
  const auto mult = from_roots({1, 1, -1, -1, cplx(0, 1), cplx(0, 1), cplx(0, 1)});
  CHECK(max_mismatch(poly_roots(mult), {1, 1, -1, -1, cplx(0, 1), cplx(0, 1), cplx(0, 1)}) < 1e-10);
  // Close but distinct roots stay apart.
  const auto close = poly_roots(from_roots({1, 1 + 1e-5, -0.5}));
  CHECK(max_mismatch(close, {1, 1 + 1e-5, -0.5}) < 1e-9);
  // Zero roots split off exactly.
  const auto z = poly_roots({0, 0, -2, 1});
  CHECK(std::count(z.begin(), z.end(), cplx(0)) == 2);
  CHECK(max_mismatch(z, {0, 0, 2}) < 1e-15);
  CHECK(max_mismatch(poly_roots({cplx(0, -1), 1}), {cplx(0, 1)}) < 1e-15);
  CHECK_THROWS_AS(poly_roots({0, 0}), std::domain_error);
  CHECK_THROWS_AS(poly_roots({3}), std::domain_error);
  RootOptions starved;
  starved.max_iterations = 1;
  starved.restarts = 0;
  std::vector<cplx> hard(31, 0);
  hard[0] = 1;
  hard[17] = -3;
  hard[30] = 1;
  CHECK_THROWS_AS(poly_roots(hard, starved), RootFindingError);
}

TEST_CASE("roots of constructed polynomials") {
  Gen g(17);
  for (int c = 0; c < 200; ++c) {
    const int n = static_cast<int>(g.integer(1, 25));
    std::vector<cplx> roots;
    for (int j = 0; j < n; ++j) {
      // Radii spread over several orders of magnitude, roots well separated.
      cplx r;
      bool ok = false;
      while (!ok) {
        r = std::polar(std::exp(g.real(-2, 2)), g.real(0, 2 * std::numbers::pi));
        ok = std::all_of(roots.begin(), roots.end(), [&](cplx q) { return std::abs(q - r) > 0.05; });
      }
      roots.push_back(r);
    }
    const auto coeffs = from_roots(roots);
    const auto found = poly_roots(coeffs);
    CHECK(found.size() == roots.size());
    for (const cplx& z : found) CHECK(relative_residual(coeffs, z) <= 1e-8);
    CHECK(max_mismatch(found, roots) < 1e-6);
  }
}

TEST_CASE("roots of high degree sparse polynomials") {
  for (int n : {64, 256, 1024}) {
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1, 0);
    c[0] = -1;
    c[1] = 1;
    c[static_cast<std::size_t>(n)] = 1;
    const auto r = poly_roots(c);
    CHECK(r.size() == static_cast<std::size_t>(n));
    double worst = 0;
    for (const cplx& z : r) worst = std::max(worst, relative_residual(c, z));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("mahler measure in one variable") {
  for (long k : {-7L, 0L, 1L, 12L}) CHECK(mahler_1var(LaurentPoly::monomial(1, k)).value == 1.0);
  CHECK(mahler_1var(LaurentPoly::monomial(-5, 3)).value == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(std::abs(mahler_1var(poly(0, {-1, -1, 1})).value - 1.6180339887) < 1e-9);
  CHECK(std::abs(mahler_1var(poly(0, {-1, -1, 1})).value - kPhi) < 1e-14);
  const LaurentPoly lehmer = poly(0, {1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
  const MahlerResult lj = mahler_1var(lehmer);
  CHECK(std::abs(lj.value - 1.17628082) < 1e-6);
  CHECK(lj.method == "jensen");
  CHECK(std::abs(mahler_1var_quadrature(lehmer).value - lj.value) < 1e-4);
  CHECK_THROWS_AS(mahler_1var(LaurentPoly()), std::domain_error);
  CHECK_THROWS_AS(mahler_1var_quadrature(LaurentPoly()), std::domain_error);
  // Quadratic oracle: |a| max(1,|r1|) max(1,|r2|) by the quadratic formula.
  Gen g(3);
  for (int c = 0; c < 100; ++c) {
    const long a = g.integer(1, 9) * (g.coin() ? 1 : -1), b = g.integer(-9, 9), d = g.integer(1, 9);
    const cplx disc = std::sqrt(cplx(static_cast<double>(b * b - 4 * a * d)));
    const cplx r1 = (-static_cast<double>(b) + disc) / (2.0 * a), r2 = (-static_cast<double>(b) - disc) / (2.0 * a);
    const double expect = std::abs(a) * std::max(1.0, std::abs(r1)) * std::max(1.0, std::abs(r2));
    CHECK(std::abs(mahler_1var(poly(-3, {d, b, a})).value - expect) < 1e-12 * expect);
  }
}

TEST_CASE("monomial invariance, compression and multiplicativity") {
  Gen g(23);
  for (int c = 0; c < 200; ++c) {
    const LaurentPoly f = random_poly(g, 10, 5);
    const LaurentPoly h = random_poly(g, 10, 5);
    const double mf = mahler_1var(f).value;
    CHECK(mahler_1var(LaurentPoly::monomial(1, g.integer(-20, 20)) * f).value == mf);
    CHECK(std::abs(mahler_1var(f * h).value - mf * mahler_1var(h).value) < 1e-9);
    const BivariatePoly fb = BivariatePoly::from_z_coefficients({f});
    CHECK(std::abs(mahler_1var(fb.substitute(0)).value - mf) == 0);
  }
  const LaurentPoly f = poly(0, {2, -3, 0, 1});
  std::vector<LaurentPoly::Term> spread;
  for (const auto& t : f.terms()) spread.push_back({t.exponent * 5, t.coeff});
  CHECK(std::abs(mahler_1var(LaurentPoly::from_terms(spread)).value - mahler_1var(f).value) < 1e-13);
}

TEST_CASE("jensen against quadrature") {
  Gen g(41);
  for (int c = 0; c < 60; ++c) {
    const LaurentPoly f = random_poly(g, 10, 6);
    const MahlerResult j = mahler_1var(f);
    const MahlerResult q = mahler_1var_quadrature(f);
    CHECK_MESSAGE(std::abs(j.value - q.value) <= 1e-4, f.to_string());
    CHECK(q.samples == std::size_t{1} << 20);
  }
}

TEST_CASE("mahler measure in two variables") {
  CHECK(std::abs(mahler_2var(biv({{0, 1, 1}})).value - 1.0) < 1e-10);
  CHECK(std::abs(mahler_2var(biv({{0, 0, -7}})).value - 7.0) < 1e-12);
  CHECK(std::abs(mahler_2var(biv({{3, 0, 2}, {0, 0, -1}})).value - 2.0) < 1e-12);
  const BivariatePoly f = biv({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}});
  const MahlerResult j = mahler_2var(f, 4096);
  const MahlerResult q = mahler_2var_quadrature(f, 4096);
  CHECK(std::abs(j.value - q.value) < 1e-3);
  CHECK(j.error_estimate < 1e-4);
  CHECK(j.skipped == 0);
  CHECK(std::abs(j.value - smyth_constant()) < 1e-5);
  // The grid rotates with A's exponent; transposing the roles of the
  // variables leaves the value unchanged.
  const BivariatePoly ft = biv({{0, 0, 1}, {0, 1, 1}, {1, 0, 1}});
  CHECK(std::abs(mahler_2var(ft).value - j.value) < 1e-12);
  // (1 + A)(1 + z) has measure 1.
  CHECK(std::abs(mahler_2var(biv({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}})).value - 1.0) < 1e-3);
  // Slices of (A - 1) z + 1 never vanish on the midpoint grid.
  CHECK(mahler_2var(biv({{1, 1, 1}, {0, 1, -1}, {0, 0, 1}}), 64).skipped == 0);
  CHECK_THROWS_AS(mahler_2var(BivariatePoly()), std::domain_error);
}

TEST_CASE("lawton sequences") {
  const BivariatePoly flat = biv({{0, 0, -1}, {1, 0, -1}, {2, 0, 1}});
  const LawtonReport fr = lawton_sequence(flat, 20, 256);
  for (const auto& [d, v] : fr.values) CHECK(v == mahler_1var(poly(0, {-1, -1, 1})).value);
  CHECK(std::abs(fr.limit - kPhi) < 1e-12);

  const BivariatePoly f = biv({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}});
  for (std::int64_t d : {1, 5, 40, 100}) CHECK(f.substitute(d).high() == d);
  const LawtonReport r = lawton_sequence(f, 100);
  CHECK(r.values.size() == 100);
  CHECK(r.tail_deviation < 1e-2);
  CHECK(r.tail_cauchy < 1e-2);

  const std::vector<BivariatePoly> corpus = {
      f,
      biv({{0, 0, 3}, {1, 0, 1}, {-1, 0, 1}, {0, 1, 1}, {0, -1, 1}}),
      biv({{0, 0, 1}, {1, 0, 1}, {2, 0, 1}, {0, 1, 1}}),
      biv({{0, 0, 2}, {1, 0, 1}, {0, 1, -1}, {1, 2, 1}}),
      biv({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}),
  };
  for (const auto& p : corpus) {
    const LawtonReport rep = lawton_sequence(p, 100);
    CHECK_MESSAGE(rep.tail_cauchy < 1e-2, p.to_string());
    CHECK_MESSAGE(rep.tail_deviation < 1e-2, p.to_string());
  }
  const std::string csv = lawton_csv(fr);
  CHECK(csv.rfind("d,value\n1,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
}

TEST_CASE("limit polynomial of a twist family") {
  for (int i : {1, 2}) {
    const TwistFamily fam = braid_twist_family({2, {1}}, i);
    const LimitPolynomial lp = limit_polynomial(fam);
    const RationalFn d(lp.denominator);
    for (int m = 0; m <= 5; ++m) {
      const RationalFn lhs = d * fam.evaluate(m);
      const RationalFn rhs = RationalFn::monomial(1, m * lp.e_min) * RationalFn(lp.p.substitute(m * lp.gap));
      CHECK(lhs == rhs);
    }
  }
  const TwistFamily single = twist_family(full_twist(2, 1), CellElement::basis(2, 1, {1, 0}, {1, 0}), 0, 2);
  REQUIRE(single.terms.size() == 1);
  const TwistConvergence sc = twist_convergence(single, 6, 64);
  for (const auto& row : sc.rows) CHECK(row.value == sc.rows.front().value);
  CHECK(std::abs(sc.limit - sc.rows.front().value) < 1e-12);
  TwistFamily mixed = braid_twist_family({2, {1}}, 1);
  mixed.terms.front().sign = -1;
  CHECK_THROWS_AS(limit_polynomial(mixed), std::invalid_argument);
}

TEST_CASE("twist family convergence") {
  const TwistFamily fam = braid_twist_family({2, {1}}, 1);
  const TwistConvergence c = twist_convergence(fam, 200);
  REQUIRE(c.rows.size() == 200);
  CHECK(std::isnan(c.rows.front().delta_prev));
  for (const auto& row : c.rows)
    if (row.m >= 80) CHECK(std::abs(row.delta_prev) < 1e-3);
  REQUIRE(c.deviations.size() == 10);
  CHECK(c.deviations.back().first == 200);
  CHECK(c.deviations.back().second < 1e-2);
  // Normalizing by the unknot divides every term and the limit alike.
  const TwistConvergence n = twist_convergence_range(fam, 195, 200, 4096, UnknotNormalization::One);
  const double md = mahler_1var(delta_closed(1)).value;
  CHECK(std::abs(n.rows.back().value * md - c.rows.back().value) < 1e-9);
  CHECK(std::abs(n.limit * md - c.limit) < 1e-9);
  const std::string csv = convergence_csv(c);
  CHECK(csv.rfind("m,value,delta_prev\n1,", 0) == 0);
  CHECK(csv.find("\n2,") != std::string::npos);
}

TEST_CASE("formatting and serialization") {
  Gen g(5);
  for (int c = 0; c < 200; ++c) {
    const double x = g.real(-1e6, 1e6) * std::pow(10.0, static_cast<double>(g.integer(-30, 30)));
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(std::nan("")) == "nan");
  const BivariatePoly f = biv({{0, 0, 3}, {1, 0, 1}, {-1, 0, 1}, {0, 1, 1}, {0, -1, 1}});
  CHECK(bivariate_from_json(nlohmann::json::parse(to_json(f).dump())) == f);
  CHECK_THROWS(bivariate_from_json(nlohmann::json::parse("[[0,0,1,0]]")));
  CHECK_THROWS(bivariate_from_json(nlohmann::json::parse("[[0,0,0,1]]")));
  CHECK_THROWS(bivariate_from_json(nlohmann::json::parse("{}")));
}
