// Jucys-Murphy elements of TL_(k,i) and the idempotents they interpolate.
#pragma once

#include <vector>

#include "tlk/cell.hpp"
#include "tlk/matrix.hpp"

namespace tlk {

/// c_s(j) = (λ_{s_j}^{s_{j-1}, i})^2, a signless power of A; c_s(1) = 1.
RationalFn jm_eigenvalue(const Sequence& s, int j, int i);

/// L_j = Σ_s c_s(j) G_{s,s}, 1 <= j <= k.
CellElement jm_element(int j, int k, int i);

/// 𝒞(j): the distinct eigenvalues of L_j, in order of first appearance
/// over all_sequences(k, i).
std::vector<RationalFn> jm_spectrum(int j, int k, int i);

/// Commutation, self-adjointness and spectral separation, one record each.
std::vector<CheckResult> jm_checks(int k, int i);
/// True iff every record of jm_checks passes.
bool check_separating(int k, int i);

/// F_t = Π_j Π_{c ∈ 𝒞(j), c ≠ c_t(j)} (L_j - c) / (c_t(j) - c), multiplied out
/// in the cell algebra.
CellElement ft_interpolation(const Sequence& t, int k, int i);

/// z_λ = Σ_{t ∈ T(λ)} G_{t,t}
CellElement central_idempotent(int lambda, int k, int i);

/// The right ideal G_{s,s}·TL_(k,i) with basis G_{s,t}, ω(t) = ω(s).
struct IrreducibleModule {
  int k;
  int i;
  Sequence s;
  std::vector<Sequence> basis;

  std::size_t dimension() const { return basis.size(); }
  /// M with G_{s,t}·x = Σ_v M[t][v] G_{s,v}.
  Matrix<RationalFn> right_action(const CellElement& x) const;
  /// M with x·G_{s,t} = Σ_v M[t][v] G_{s,v}; requires x to preserve the ideal.
  Matrix<RationalFn> left_action(const CellElement& x) const;
};
IrreducibleModule irreducible_module(const Sequence& s, int k, int i);

}  // namespace tlk
