#include "tlk/diagram.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace tlk {

namespace {

// Position of a point on the boundary circle, counterclockwise from the
// bottom-left corner.
int ccw_index(int bottom, int top, int p) {
  if (p < bottom) return p;
  return bottom + (top - 1 - (p - bottom));
}

int from_ccw(int bottom, int top, int c) {
  if (c < bottom) return c;
  return bottom + (top - 1 - (c - bottom));
}

}  // namespace

Diagram::Diagram(int bottom, int top, const std::vector<int>& partner) {
  if (bottom < 0 || top < 0 || bottom + top > kMaxBoundaryPoints)
    throw std::invalid_argument("Diagram: point count out of range");
  if (static_cast<int>(partner.size()) != bottom + top)
    throw std::invalid_argument("Diagram: partner table has wrong size");
  if ((bottom + top) % 2 != 0) throw std::invalid_argument("Diagram: odd number of points");
  bottom_ = static_cast<std::uint8_t>(bottom);
  top_ = static_cast<std::uint8_t>(top);
  const int n = bottom + top;
  for (int p = 0; p < n; ++p) {
    const int q = partner[static_cast<std::size_t>(p)];
    if (q < 0 || q >= n || q == p || partner[static_cast<std::size_t>(q)] != p)
      throw std::invalid_argument("Diagram: not a perfect matching");
    p_[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(q);
  }
  // Non-crossing: with points on a circle, chords (a,b) and (c,d) cross iff
  // exactly one of c, d lies strictly between a and b.
  for (int p = 0; p < n; ++p) {
    const int q = partner[static_cast<std::size_t>(p)];
    if (q < p) continue;
    int a = ccw_index(bottom, top, p);
    int b = ccw_index(bottom, top, q);
    if (a > b) std::swap(a, b);
    for (int r = 0; r < n; ++r) {
      const int s = partner[static_cast<std::size_t>(r)];
      if (s < r) continue;
      const int c = ccw_index(bottom, top, r);
      const int d = ccw_index(bottom, top, s);
      const bool c_in = a < c && c < b;
      const bool d_in = a < d && d < b;
      if (c_in != d_in) throw std::invalid_argument("Diagram: matching is not planar");
    }
  }
}

Diagram Diagram::identity(int n) {
  std::vector<int> p(static_cast<std::size_t>(2 * n));
  for (int j = 0; j < n; ++j) {
    p[static_cast<std::size_t>(j)] = n + j;
    p[static_cast<std::size_t>(n + j)] = j;
  }
  return Diagram(n, n, p);
}

Diagram Diagram::generator_e(int i, int n) {
  if (i < 1 || i > n - 1) throw std::out_of_range("generator_e: index out of range");
  std::vector<int> p(static_cast<std::size_t>(2 * n));
  for (int j = 0; j < n; ++j) {
    p[static_cast<std::size_t>(j)] = n + j;
    p[static_cast<std::size_t>(n + j)] = j;
  }
  const int a = i - 1;
  const int b = i;
  p[static_cast<std::size_t>(a)] = b;
  p[static_cast<std::size_t>(b)] = a;
  p[static_cast<std::size_t>(n + a)] = n + b;
  p[static_cast<std::size_t>(n + b)] = n + a;
  return Diagram(n, n, p);
}

std::vector<Diagram> Diagram::enumerate(int bottom, int top) {
  const int n = bottom + top;
  std::vector<Diagram> out;
  if (n % 2 != 0) return out;
  if (n > kMaxBoundaryPoints) throw std::invalid_argument("Diagram::enumerate: too many points");
  // Non-crossing perfect matchings of n points on a circle (ccw order).
  std::vector<int> ccw(static_cast<std::size_t>(n), -1);
  std::function<void(int)> rec = [&](int first) {
    while (first < n && ccw[static_cast<std::size_t>(first)] >= 0) ++first;
    if (first == n) {
      std::vector<int> partner(static_cast<std::size_t>(n));
      for (int c = 0; c < n; ++c)
        partner[static_cast<std::size_t>(from_ccw(bottom, top, c))] =
            from_ccw(bottom, top, ccw[static_cast<std::size_t>(c)]);
      Diagram d;
      d.bottom_ = static_cast<std::uint8_t>(bottom);
      d.top_ = static_cast<std::uint8_t>(top);
      for (int p = 0; p < n; ++p)
        d.p_[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(partner[static_cast<std::size_t>(p)]);
      out.push_back(d);
      return;
    }
    // Pair `first` with a later free point leaving an even gap inside.
    for (int second = first + 1; second < n; second += 2) {
      bool inner_free = true;
      for (int c = first + 1; c < second; ++c)
        if (ccw[static_cast<std::size_t>(c)] >= 0) {
          inner_free = false;
          break;
        }
      if (!inner_free || ccw[static_cast<std::size_t>(second)] >= 0) break;
      ccw[static_cast<std::size_t>(first)] = second;
      ccw[static_cast<std::size_t>(second)] = first;
      rec(first + 1);
      ccw[static_cast<std::size_t>(first)] = -1;
      ccw[static_cast<std::size_t>(second)] = -1;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

int Diagram::through_strands() const {
  int t = 0;
  for (int p = 0; p < bottom_; ++p)
    if (p_[static_cast<std::size_t>(p)] >= bottom_) ++t;
  return t;
}

Diagram Diagram::reflected() const {
  Diagram r;
  r.bottom_ = top_;
  r.top_ = bottom_;
  const int b = bottom_;
  const int t = top_;
  // old bottom j -> new top j (index t + j); old top j -> new bottom j.
  auto map = [&](int p) { return p < b ? t + p : p - b; };
  for (int p = 0; p < b + t; ++p)
    r.p_[static_cast<std::size_t>(map(p))] = static_cast<std::uint8_t>(map(p_[static_cast<std::size_t>(p)]));
  return r;
}

Diagram Diagram::tensor(const Diagram& right) const {
  if (size() + right.size() > kMaxBoundaryPoints)
    throw std::invalid_argument("Diagram::tensor: too many points");
  Diagram r;
  const int b1 = bottom_;
  const int t1 = top_;
  const int b2 = right.bottom_;
  const int t2 = right.top_;
  r.bottom_ = static_cast<std::uint8_t>(b1 + b2);
  r.top_ = static_cast<std::uint8_t>(t1 + t2);
  const int B = b1 + b2;
  auto map_left = [&](int p) { return p < b1 ? p : B + (p - b1); };
  auto map_right = [&](int p) { return p < b2 ? b1 + p : B + t1 + (p - b2); };
  for (int p = 0; p < b1 + t1; ++p)
    r.p_[static_cast<std::size_t>(map_left(p))] =
        static_cast<std::uint8_t>(map_left(p_[static_cast<std::size_t>(p)]));
  for (int p = 0; p < b2 + t2; ++p)
    r.p_[static_cast<std::size_t>(map_right(p))] =
        static_cast<std::uint8_t>(map_right(right.p_[static_cast<std::size_t>(p)]));
  return r;
}

std::vector<std::pair<int, int>> Diagram::ccw_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p < size(); ++p) {
    const int q = p_[static_cast<std::size_t>(p)];
    int a = ccw_index(bottom_, top_, p) + 1;
    int b = ccw_index(bottom_, top_, q) + 1;
    if (a < b) out.emplace_back(a, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Diagram Diagram::from_ccw_pairs(int bottom, int top, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> partner(static_cast<std::size_t>(bottom + top), -1);
  for (auto [a, b] : pairs) {
    if (a < 1 || b < 1 || a > bottom + top || b > bottom + top)
      throw std::invalid_argument("Diagram: pair index out of range");
    const int p = from_ccw(bottom, top, a - 1);
    const int q = from_ccw(bottom, top, b - 1);
    partner[static_cast<std::size_t>(p)] = q;
    partner[static_cast<std::size_t>(q)] = p;
  }
  return Diagram(bottom, top, partner);
}

std::string Diagram::to_string() const {
  std::ostringstream os;
  os << "[" << int(bottom_) << "->" << int(top_) << ":";
  for (auto [a, b] : ccw_pairs()) os << " " << a << "-" << b;
  os << "]";
  return os.str();
}

std::size_t Diagram::hash() const {
  std::size_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint8_t x) {
    h ^= x;
    h *= 1099511628211ULL;
  };
  mix(bottom_);
  mix(top_);
  for (int p = 0; p < size(); ++p) mix(p_[static_cast<std::size_t>(p)]);
  return h;
}

struct DiagramOps {
  static std::pair<Diagram, int> compose(const Diagram& x, const Diagram& y) {
    // x above y; y.top == x.bottom.
    if (y.top_ != x.bottom_) throw std::invalid_argument("compose: boundary mismatch");
    const int yb = y.bottom_;
    const int m = y.top_;
    const int xt = x.top_;
    Diagram r;
    r.bottom_ = static_cast<std::uint8_t>(yb);
    r.top_ = static_cast<std::uint8_t>(xt);
    std::array<bool, kMaxBoundaryPoints> seen{};  // middle points
    std::array<bool, kMaxBoundaryPoints> done{};  // result points

    // Walk from a point of y's bottom (side 0) or x's top (side 1) until we
    // exit on an outer boundary. Returns the result-index of the exit.
    auto walk = [&](int side, int start) -> int {
      int side_now = side;
      int q = start;
      while (true) {
        if (side_now == 0) {
          const int t = y.p_[static_cast<std::size_t>(q)];
          if (t < yb) return t;  // y bottom
          const int mid = t - yb;
          seen[static_cast<std::size_t>(mid)] = true;
          const int u = x.p_[static_cast<std::size_t>(mid)];
          if (u >= m) return yb + (u - m);  // x top
          seen[static_cast<std::size_t>(u)] = true;
          q = yb + u;  // continue in y from its top point u
        } else {
          const int t = x.p_[static_cast<std::size_t>(q)];
          if (t >= m) return yb + (t - m);
          seen[static_cast<std::size_t>(t)] = true;
          const int u = y.p_[static_cast<std::size_t>(yb + t)];
          if (u < yb) return u;
          const int mid = u - yb;
          seen[static_cast<std::size_t>(mid)] = true;
          q = mid;  // continue in x from its bottom point mid
        }
      }
    };

    for (int p = 0; p < yb; ++p) {
      if (done[static_cast<std::size_t>(p)]) continue;
      const int e = walk(0, p);
      r.p_[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(e);
      r.p_[static_cast<std::size_t>(e)] = static_cast<std::uint8_t>(p);
      done[static_cast<std::size_t>(p)] = done[static_cast<std::size_t>(e)] = true;
    }
    for (int j = 0; j < xt; ++j) {
      const int p = yb + j;
      if (done[static_cast<std::size_t>(p)]) continue;
      const int e = walk(1, m + j);
      r.p_[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(e);
      r.p_[static_cast<std::size_t>(e)] = static_cast<std::uint8_t>(p);
      done[static_cast<std::size_t>(p)] = done[static_cast<std::size_t>(e)] = true;
    }
    int loops = 0;
    for (int s = 0; s < m; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      ++loops;
      int mid = s;
      do {
        seen[static_cast<std::size_t>(mid)] = true;
        const int u = x.p_[static_cast<std::size_t>(mid)];  // x bottom -> x bottom
        seen[static_cast<std::size_t>(u)] = true;
        mid = y.p_[static_cast<std::size_t>(yb + u)] - yb;  // y top -> y top
      } while (!seen[static_cast<std::size_t>(mid)]);
    }
    return {r, loops};
  }
};

std::pair<Diagram, int> compose(const Diagram& upper, const Diagram& lower) {
  return DiagramOps::compose(upper, lower);
}

int trace_loops(const Diagram& d) {
  if (!d.is_endomorphism()) throw std::invalid_argument("trace_loops: diagram is not square");
  const int n = d.bottom();
  std::array<bool, kMaxBoundaryPoints> seen{};
  int loops = 0;
  for (int s = 0; s < 2 * n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    ++loops;
    int p = s;
    while (!seen[static_cast<std::size_t>(p)]) {
      seen[static_cast<std::size_t>(p)] = true;
      const int q = d.partner(p);
      seen[static_cast<std::size_t>(q)] = true;
      p = q < n ? q + n : q - n;  // closure arc
    }
  }
  return loops;
}

std::uint64_t catalan(int n) {
  std::uint64_t c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * static_cast<std::uint64_t>(k) + 1) / (static_cast<std::uint64_t>(k) + 2);
  return c;
}

}  // namespace tlk
