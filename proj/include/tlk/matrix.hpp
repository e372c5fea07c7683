// Dense exact linear algebra over Z[A^±1], Q(A) and Q.
#pragma once

#include <vector>

#include <gmpxx.h>

#include "tlk/rational_fn.hpp"
#include "tlk/zpoly.hpp"

namespace tlk {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Fraction-free (Bareiss) determinant of a square matrix over Z[A^±1].
ZPoly bareiss_determinant(Matrix<ZPoly> m);

/// Determinant over Q(A) by Gaussian elimination.
RationalFn determinant(Matrix<RationalFn> m);

/// Rank over Q(A) by Gaussian elimination.
std::size_t rank(Matrix<RationalFn> m);

/// Rank over Q.
std::size_t rank(Matrix<mpq_class> m);

/// Exact value at a rational point; throws std::domain_error at a pole.
mpq_class eval_at(const ZPoly& p, const mpq_class& a);
mpq_class eval_at(const RationalFn& f, const mpq_class& a);

}  // namespace tlk
