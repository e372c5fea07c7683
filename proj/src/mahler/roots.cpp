#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "tlk/mahler.hpp"

namespace tlk {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Newton {
  cplx step;        // f / f'
  double residual;  // |f| / Σ|a_j||z|^j
};

// Horner on f for |z| <= 1 and on the reversed polynomial otherwise.
Newton newton_step(const std::vector<cplx>& a, cplx z) {
  const std::size_t n = a.size() - 1;
  if (std::abs(z) <= 1.0) {
    cplx p = a[n], dp = 0;
    double scale = std::abs(a[n]);
    const double r = std::abs(z);
    for (std::size_t j = n; j-- > 0;) {
      dp = dp * z + p;
      p = p * z + a[j];
      scale = scale * r + std::abs(a[j]);
    }
    return {dp == cplx(0) ? cplx(0) : p / dp, std::abs(p) / scale};
  }
  const cplx w = 1.0 / z;
  cplx q = a[0], dq = 0;
  double scale = std::abs(a[0]);
  const double r = std::abs(w);
  for (std::size_t j = 1; j <= n; ++j) {
    dq = dq * w + q;
    q = q * w + a[j];
    scale = scale * r + std::abs(a[j]);
  }
  // f'/f = w (n - w q'/q)
  if (q == cplx(0)) return {0, 0};
  const cplx ratio = w * (static_cast<double>(n) - w * dq / q);
  return {ratio == cplx(0) ? cplx(0) : 1.0 / ratio, std::abs(q) / scale};
}

// Starting points on circles whose radii come from the upper convex hull of
// (j, log|a_j|).
std::vector<cplx> initial_guesses(const std::vector<cplx>& a, double offset) {
  const std::size_t n = a.size() - 1;
  std::vector<std::size_t> idx;
  std::vector<double> lg;
  for (std::size_t j = 0; j <= n; ++j)
    if (a[j] != cplx(0)) {
      idx.push_back(j);
      lg.push_back(std::log(std::abs(a[j])));
    }
  std::vector<std::size_t> hull;
  for (std::size_t t = 0; t < idx.size(); ++t) {
    while (hull.size() >= 2) {
      const std::size_t p = hull[hull.size() - 2], q = hull.back();
      const double cross = (static_cast<double>(idx[q]) - static_cast<double>(idx[p])) * (lg[t] - lg[p]) -
                           (lg[q] - lg[p]) * (static_cast<double>(idx[t]) - static_cast<double>(idx[p]));
      if (cross >= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(t);
  }
  std::vector<cplx> z;
  z.reserve(n);
  const double two_pi = 2 * std::numbers::pi;
  for (std::size_t h = 1; h < hull.size(); ++h) {
    const std::size_t lo = idx[hull[h - 1]], hi = idx[hull[h]];
    const auto m = static_cast<double>(hi - lo);
    const double radius = std::exp((lg[hull[h - 1]] - lg[hull[h]]) / m);
    for (std::size_t j = 0; j < hi - lo; ++j)
      z.push_back(std::polar(radius, two_pi * static_cast<double>(j) / m +
                                         two_pi * static_cast<double>(lo) / static_cast<double>(n) + offset));
  }
  return z;
}

std::vector<cplx> derivative(const std::vector<cplx>& a) {
  std::vector<cplx> d;
  for (std::size_t j = 1; j < a.size(); ++j) d.push_back(a[j] * static_cast<double>(j));
  return d;
}

// Roots of multiplicity m come out of the iteration spread over a disc of
// radius ~ eps^(1/m). Replace such a cluster by the simple root of
// f^(m-1) near its centroid, provided f, f', ..., f^(m-2) vanish there too.
void merge_multiple_roots(const std::vector<cplx>& a, std::vector<cplx>& z) {
  const std::size_t n = z.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t k = 0; k < n; ++k) parent[k] = k;
  auto find = [&](std::size_t k) {
    while (parent[k] != k) k = parent[k] = parent[parent[k]];
    return k;
  };
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      if (std::abs(z[j] - z[k]) <= 1e-3 * std::max(1.0, std::abs(z[j]))) parent[find(j)] = find(k);
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t k = 0; k < n; ++k) groups[find(k)].push_back(k);
  for (const auto& g : groups) {
    const std::size_t m = g.size();
    if (m < 2 || m > 16) continue;
    std::vector<std::vector<cplx>> ders{a};
    for (std::size_t j = 1; j < m; ++j) ders.push_back(derivative(ders.back()));
    if (ders.back().size() < 2) continue;
    cplx c = 0;
    for (std::size_t k : g) c += z[k];
    c /= static_cast<double>(m);
    for (int it = 0; it < 50; ++it) {
      const Newton nw = newton_step(ders.back(), c);
      c -= nw.step;
      if (std::abs(nw.step) <= 4 * kEps * std::abs(c)) break;
    }
    bool multiple = true;
    for (std::size_t j = 0; j + 1 < m && multiple; ++j)
      multiple = newton_step(ders[j], c).residual <= 1e-12;
    if (multiple)
      for (std::size_t k : g) z[k] = c;
  }
}

}  // namespace

double relative_residual(const std::vector<cplx>& coeffs, cplx z) {
  if (coeffs.size() < 2) return coeffs.empty() || coeffs[0] == cplx(0) ? 0.0 : 1.0;
  return newton_step(coeffs, z).residual;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs, const RootOptions& opts) {
  std::size_t low = 0;
  while (low < coeffs.size() && coeffs[low] == cplx(0)) ++low;
  std::size_t high = coeffs.size();
  while (high > low && coeffs[high - 1] == cplx(0)) --high;
  if (high <= low + 1) {
    if (high == low) throw std::domain_error("poly_roots: zero polynomial");
    if (low == 0) throw std::domain_error("poly_roots: constant polynomial has no roots");
  }
  std::vector<cplx> roots(low, cplx(0));
  const std::vector<cplx> a(coeffs.begin() + static_cast<long>(low), coeffs.begin() + static_cast<long>(high));
  const std::size_t n = a.size() - 1;
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(-a[0] / a[1]);
    return roots;
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::vector<cplx> z;
  // Each root is polished until its residual reaches the rounding level of
  // Horner's rule, which clusters need to settle.
  const double floor = 2.0 * static_cast<double>(n + 1) * kEps;
  for (int attempt = 0; attempt <= opts.restarts; ++attempt) {
    z = initial_guesses(a, attempt == 0 ? 0.7 : angle(rng));
    std::vector<char> done(n, 0);
    std::size_t remaining = n;
    for (int it = 0; it < opts.max_iterations && remaining > 0; ++it) {
      for (std::size_t k = 0; k < n; ++k) {
        if (done[k]) continue;
        const Newton nw = newton_step(a, z[k]);
        if (nw.residual <= floor) {
          done[k] = 1;
          --remaining;
          continue;
        }
        cplx s = 0;
        for (std::size_t j = 0; j < n; ++j)
          if (j != k) {
            const cplx d = z[k] - z[j];
            if (d != cplx(0)) s += 1.0 / d;
          }
        const cplx corr = nw.step / (1.0 - nw.step * s);
        if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) {
          z[k] += std::polar(kEps * (1 + std::abs(z[k])) * 1e3, angle(rng));
          continue;
        }
        z[k] -= corr;
        if (std::abs(corr) <= 4 * kEps * std::abs(z[k])) {
          done[k] = 1;
          --remaining;
        }
      }
    }
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, newton_step(a, z[k]).residual);
    const bool converged = worst <= std::max(opts.tolerance, floor);
    if (converged || (attempt == opts.restarts && worst <= opts.acceptance)) {
      merge_multiple_roots(a, z);
      roots.insert(roots.end(), z.begin(), z.end());
      return roots;
    }
    if (attempt == opts.restarts) {
      std::ostringstream msg;
      msg << "poly_roots: no convergence for degree " << n << " after " << opts.restarts + 1
          << " attempts; worst relative residual " << worst;
      throw RootFindingError(msg.str(), worst);
    }
  }
  return roots;
}

}  // namespace tlk
