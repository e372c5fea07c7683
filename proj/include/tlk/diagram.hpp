// Crossingless matchings between a row of bottom points and a row of top
// points (morphisms of the Temperley-Lieb category).
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tlk {

inline constexpr int kMaxBoundaryPoints = 32;

/// Point numbering: bottom points are 0..bottom-1 left to right, top points
/// are bottom..bottom+top-1 left to right. partner(p) is the point p is
/// joined to.
class Diagram {
 public:
  Diagram() = default;
  /// Build from a partner table; throws if it is not a non-crossing perfect
  /// matching.
  Diagram(int bottom, int top, const std::vector<int>& partner);

  static Diagram identity(int n);
  /// e_i on n strands, 1 <= i <= n-1.
  static Diagram generator_e(int i, int n);
  /// All crossingless matchings from `bottom` to `top` points in canonical order.
  static std::vector<Diagram> enumerate(int bottom, int top);

  int bottom() const { return bottom_; }
  int top() const { return top_; }
  int size() const { return bottom_ + top_; }
  int partner(int p) const { return p_[static_cast<std::size_t>(p)]; }
  bool is_endomorphism() const { return bottom_ == top_; }

  /// Number of through-strands (arcs joining bottom to top).
  int through_strands() const;

  /// Mirror in a horizontal line: bottom <-> top.
  Diagram reflected() const;
  /// Side by side, this on the left.
  Diagram tensor(const Diagram& right) const;

  /// Matched pairs, 1-based, bottom points 1..b left to right and top points
  /// b+1..b+t right to left (counterclockwise); each pair (lo, hi), sorted.
  std::vector<std::pair<int, int>> ccw_pairs() const;
  static Diagram from_ccw_pairs(int bottom, int top, const std::vector<std::pair<int, int>>& pairs);

  std::string to_string() const;

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.bottom_ == b.bottom_ && a.top_ == b.top_ && a.p_ == b.p_;
  }
  friend bool operator<(const Diagram& a, const Diagram& b) {
    if (a.bottom_ != b.bottom_) return a.bottom_ < b.bottom_;
    if (a.top_ != b.top_) return a.top_ < b.top_;
    return a.p_ < b.p_;
  }
  std::size_t hash() const;

 private:
  friend struct DiagramOps;
  std::uint8_t bottom_ = 0;
  std::uint8_t top_ = 0;
  std::array<std::uint8_t, kMaxBoundaryPoints> p_{};
};

struct DiagramHash {
  std::size_t operator()(const Diagram& d) const { return d.hash(); }
};

/// upper ∘ lower: lower is drawn below upper. Returns the resulting diagram
/// and the number of closed loops removed.
std::pair<Diagram, int> compose(const Diagram& upper, const Diagram& lower);

/// Loops formed by joining top point j to bottom point j around the side.
int trace_loops(const Diagram& d);

/// Catalan number C_n.
std::uint64_t catalan(int n);

}  // namespace tlk
