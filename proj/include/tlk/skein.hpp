// Formal Q(A)-linear combinations of planar diagrams.
#pragma once

#include <utility>
#include <vector>

#include <json.hpp>

#include "tlk/diagram.hpp"
#include "tlk/rational_fn.hpp"
#include "tlk/zpoly.hpp"

namespace tlk {

/// A morphism from `bottom` to `top` points in the Kauffman bracket skein
/// category; for bottom == top an element of TL_n.
///
/// All coefficients share one denominator: the element is
/// (Σ num_D · D) / den, reduced so that den and the numerators have no
/// common factor, den has lowest exponent 0 and positive lowest coefficient.
/// Terms are sorted by diagram and never zero, so equality is structural.
class SkeinElement {
 public:
  SkeinElement() = default;
  /// The zero morphism bottom -> top.
  SkeinElement(int bottom, int top);
  SkeinElement(const Diagram& d, const RationalFn& c = RationalFn(1));  // NOLINT(google-explicit-constructor)

  static SkeinElement identity(int n);
  static SkeinElement generator_e(int i, int n);
  /// A·1 + A^-1·e_j for sign > 0, A^-1·1 + A·e_j for sign < 0.
  static SkeinElement crossing(int j, int n, int sign);

  int bottom() const { return bottom_; }
  int top() const { return top_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  RationalFn coeff(const Diagram& d) const;
  std::vector<std::pair<Diagram, RationalFn>> terms() const;
  const std::vector<std::pair<Diagram, ZPoly>>& numerators() const { return terms_; }
  const ZPoly& denominator() const { return den_; }

  SkeinElement operator-() const;
  SkeinElement& operator+=(const SkeinElement& o);
  SkeinElement& operator-=(const SkeinElement& o);
  SkeinElement& operator*=(const RationalFn& c);
  friend SkeinElement operator+(SkeinElement a, const SkeinElement& b) { return a += b; }
  friend SkeinElement operator-(SkeinElement a, const SkeinElement& b) { return a -= b; }
  friend SkeinElement operator*(const RationalFn& c, SkeinElement x) { return x *= c; }
  friend SkeinElement operator*(SkeinElement x, const RationalFn& c) { return x *= c; }
  friend bool operator==(const SkeinElement& a, const SkeinElement& b) = default;

  /// Mirror in a horizontal line; an anti-homomorphism and an involution.
  SkeinElement reflected() const;
  /// Side by side, this on the left.
  SkeinElement tensor(const SkeinElement& right) const;

 private:
  friend SkeinElement compose(const SkeinElement& upper, const SkeinElement& lower);
  friend RationalFn trace_closure_value(const SkeinElement& x);
  friend RationalFn inner_product(const SkeinElement& l, const SkeinElement& f);
  void canonicalize();

  int bottom_ = 0;
  int top_ = 0;
  ZPoly den_ = ZPoly(1L);
  std::vector<std::pair<Diagram, ZPoly>> terms_;
};

/// upper ∘ lower (lower drawn below); each closed loop contributes δ.
SkeinElement compose(const SkeinElement& upper, const SkeinElement& lower);
/// Compose a list drawn top to bottom: xs[0] ∘ xs[1] ∘ ...
SkeinElement compose_all(const std::vector<SkeinElement>& xs);

/// Close top point j to bottom point j around the side; δ per loop.
RationalFn trace_closure_value(const SkeinElement& x);

/// ⟨L, F⟩ = trace_closure_value(L ∘ reflect(F)), computed without forming
/// the composite.
RationalFn inner_product(const SkeinElement& l, const SkeinElement& f);

/// Braid generators: +j is σ_j, -j is σ_j^-1.
struct BraidWord {
  int strands = 0;
  std::vector<int> letters;
  /// Sum of the signs of the letters.
  int writhe() const;
};

/// Kauffman resolution of a braid read bottom to top: the first letter is
/// the lowest crossing. Collects into the diagram basis after every crossing.
SkeinElement braid_to_skein(const BraidWord& word);

/// The i-parallel cable: each strand becomes i strands and each crossing a
/// grid of i·i crossings of the same sign.
BraidWord cable(const BraidWord& word, int i);

/// Bracket of the braid closure by expanding all 2^c states directly,
/// without the diagram basis. Independent check of braid_to_skein.
RationalFn state_sum_bracket(const BraidWord& word);

nlohmann::json to_json(const SkeinElement& x);
SkeinElement skein_from_json(const nlohmann::json& j);

}  // namespace tlk
