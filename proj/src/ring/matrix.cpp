#include "tlk/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace tlk {

namespace {

template <class T>
void require_square(const Matrix<T>& m) {
  for (const auto& row : m)
    if (row.size() != m.size()) throw std::invalid_argument("determinant: matrix is not square");
}

template <class T, class IsZero, class Eliminate>
std::size_t row_reduce(Matrix<T>& m, IsZero is_zero, Eliminate eliminate, int* swaps = nullptr) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(m[p], m[r]);
      if (swaps) ++*swaps;
    }
    for (std::size_t q = r + 1; q < rows; ++q)
      if (!is_zero(m[q][c])) eliminate(m[r], m[q], c);
    ++r;
  }
  return r;
}

}  // namespace

ZPoly bareiss_determinant(Matrix<ZPoly> m) {
  require_square(m);
  const std::size_t n = m.size();
  if (n == 0) return ZPoly(1L);
  ZPoly prev(1L);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return ZPoly();
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = ZPoly::divexact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = ZPoly();
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

RationalFn determinant(Matrix<RationalFn> m) {
  require_square(m);
  int swaps = 0;
  const std::size_t r = row_reduce(
      m, [](const RationalFn& x) { return x.is_zero(); },
      [](const std::vector<RationalFn>& piv, std::vector<RationalFn>& row, std::size_t c) {
        const RationalFn f = row[c] / piv[c];
        for (std::size_t j = c; j < row.size(); ++j) row[j] -= f * piv[j];
      },
      &swaps);
  if (r < m.size()) return RationalFn(0);
  RationalFn d(swaps % 2 == 0 ? 1 : -1);
  for (std::size_t k = 0; k < m.size(); ++k) d *= m[k][k];
  return d;
}

std::size_t rank(Matrix<RationalFn> m) {
  return row_reduce(
      m, [](const RationalFn& x) { return x.is_zero(); },
      [](const std::vector<RationalFn>& piv, std::vector<RationalFn>& row, std::size_t c) {
        const RationalFn f = row[c] / piv[c];
        for (std::size_t j = c; j < row.size(); ++j) row[j] -= f * piv[j];
      });
}

std::size_t rank(Matrix<mpq_class> m) {
  return row_reduce(
      m, [](const mpq_class& x) { return x == 0; },
      [](const std::vector<mpq_class>& piv, std::vector<mpq_class>& row, std::size_t c) {
        const mpq_class f = row[c] / piv[c];
        for (std::size_t j = c; j < row.size(); ++j) row[j] -= f * piv[j];
      });
}

mpq_class eval_at(const ZPoly& p, const mpq_class& a) {
  if (p.is_zero()) return 0;
  if (a == 0 && p.low() < 0) throw std::domain_error("eval_at: negative power at zero");
  mpq_class v = 0;
  const auto& c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) v = v * a + c[k];
  mpq_class s = 1;
  const mpq_class base = p.low() < 0 ? mpq_class(1) / a : a;
  for (std::int64_t e = p.low() < 0 ? -p.low() : p.low(); e > 0; --e) s *= base;
  return v * s;
}

mpq_class eval_at(const RationalFn& f, const mpq_class& a) {
  const mpq_class d = eval_at(f.den(), a);
  if (d == 0) throw std::domain_error("eval_at: pole");
  return eval_at(f.num(), a) / d;
}

}  // namespace tlk
