// Recursive tangles and closed forms for twist families.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "tlk/cell.hpp"
#include "tlk/laurent.hpp"

namespace tlk {

/// R = Σ_s α_s G_{s,s}.
struct RecursiveTangle {
  int k;
  int i;
  std::map<Sequence, RationalFn> alpha;

  CellElement element() const;
  /// True when every α_s is ±A^e.
  bool is_monomial() const;
};

RecursiveTangle recursive_tangle(const CellElement& diagonal);

/// ⟨R^n, T⟩ = Σ_u α_u^n β_{u,u} Δ_{ω(u)} with β the coefficients of T.
RationalFn pair_power(const RecursiveTangle& r, const CellElement& t, int n);

/// L_2 ⋯ L_k
RecursiveTangle full_twist(int k, int i);
/// L_2^{p_2} ⋯ L_k^{p_k}; powers holds p_2..p_k.
RecursiveTangle jm_product(const std::vector<int>& powers, int k, int i);

/// One exponent group of p_m = Σ_u (sign_u A^{e_u})^m q_u.
struct TwistTerm {
  int sign;
  std::int64_t exponent;
  RationalFn q;
};

struct TwistFamily {
  int k;
  int i;
  /// Sorted by (exponent, sign); q never zero.
  std::vector<TwistTerm> terms;
  /// Writhe of the link with no twist inserted, and the writhe each full
  /// twist adds.
  int base_writhe = 0;
  int writhe_per_twist = 0;

  /// p_m, the bracket of the closure with m twists inserted.
  RationalFn evaluate(int m) const;
  /// Least common denominator of the q_u, normalized.
  ZPoly common_denominator() const;
  int writhe(int m) const { return base_writhe + m * writhe_per_twist; }
};

/// Groups ⟨R^m, T⟩ by exponent. Throws std::invalid_argument if some α is
/// not ±A^e.
TwistFamily twist_family(const RecursiveTangle& r, const CellElement& t, int base_writhe, int writhe_per_twist);

/// Family of the trace closure of t ∈ TL_(k,i) (already projected) with m
/// full twists stacked on top.
TwistFamily tangle_twist_family(const SkeinElement& t, int k, int i, int base_writhe, int writhe_per_twist);

/// Family of the closure of a braid on k strands, cabled by i and projected,
/// with m full twists stacked on top. Writhe: the exponent sum of the word
/// and k(k-1) per twist, unless overridden.
TwistFamily braid_twist_family(const BraidWord& word, int i, std::optional<int> base_writhe = {},
                               std::optional<int> writhe_per_twist = {});

enum class UnknotNormalization { Raw, One };

/// J_i = A^{-(i^2+2i) w} p_m, divided by Δ_i under UnknotNormalization::One.
/// Throws std::domain_error if a denominator survives.
LaurentPoly colored_jones_twist(const TwistFamily& fam, int m,
                                UnknotNormalization norm = UnknotNormalization::Raw);
/// Direct path for braid input: builds braid_twist_family and evaluates.
LaurentPoly colored_jones_twist(const BraidWord& word, int i, int m,
                                UnknotNormalization norm = UnknotNormalization::Raw);

nlohmann::json to_json(const TwistFamily& fam);
TwistFamily twist_family_from_json(const nlohmann::json& j);

}  // namespace tlk
