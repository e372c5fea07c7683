#include "tlk/skein.hpp"

#include "tlk/serialize.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace tlk {

namespace {

const ZPoly& delta_power(int l) {
  static thread_local std::vector<ZPoly> cache{ZPoly(1L)};
  while (static_cast<int>(cache.size()) <= l)
    cache.push_back(cache.back() * (ZPoly::monomial(-1, 2) + ZPoly::monomial(-1, -2)));
  return cache[static_cast<std::size_t>(l)];
}

// Σ_l sums[l] δ^l
ZPoly collect_loops(const std::vector<ZPoly>& sums) {
  ZPoly r;
  for (std::size_t l = 0; l < sums.size(); ++l)
    if (!sums[l].is_zero()) r += l == 0 ? sums[l] : sums[l] * delta_power(static_cast<int>(l));
  return r;
}

void add_at(std::vector<ZPoly>& sums, int l, ZPoly v) {
  if (static_cast<int>(sums.size()) <= l) sums.resize(static_cast<std::size_t>(l) + 1);
  sums[static_cast<std::size_t>(l)] += v;
}

}  // namespace

SkeinElement::SkeinElement(int bottom, int top) : bottom_(bottom), top_(top) {
  if (bottom < 0 || top < 0 || (bottom + top) % 2 != 0 || bottom + top > kMaxBoundaryPoints)
    throw std::invalid_argument("SkeinElement: invalid boundary");
}

SkeinElement::SkeinElement(const Diagram& d, const RationalFn& c) : bottom_(d.bottom()), top_(d.top()) {
  if (!c.is_zero()) {
    den_ = c.den();
    terms_.emplace_back(d, c.num());
  }
}

SkeinElement SkeinElement::identity(int n) { return SkeinElement(Diagram::identity(n)); }

SkeinElement SkeinElement::generator_e(int i, int n) { return SkeinElement(Diagram::generator_e(i, n)); }

SkeinElement SkeinElement::crossing(int j, int n, int sign) {
  const long s = sign > 0 ? 1 : -1;
  SkeinElement x(Diagram::identity(n), RationalFn::monomial(1, s));
  x += SkeinElement(Diagram::generator_e(j, n), RationalFn::monomial(1, -s));
  return x;
}

void SkeinElement::canonicalize() {
  std::erase_if(terms_, [](const auto& t) { return t.second.is_zero(); });
  if (terms_.empty()) {
    den_ = ZPoly(1L);
    return;
  }
  if (!(den_.is_constant() && den_.lowest_coeff() == 1)) {
    ZPoly g = den_.normalized_unit();
    for (const auto& t : terms_) {
      if (g.is_constant() && g.lowest_coeff() == 1) break;
      g = ZPoly::gcd(g, t.second);
    }
    if (!(g.is_constant() && g.lowest_coeff() == 1)) {
      den_ = ZPoly::divexact(den_, g);
      for (auto& t : terms_) t.second = ZPoly::divexact(t.second, g);
    }
  }
  int sign = 1;
  std::int64_t shift = 0;
  den_ = den_.normalized_unit(&sign, &shift);
  if (sign < 0 || shift != 0)
    for (auto& t : terms_) {
      t.second = t.second.shifted(-shift);
      if (sign < 0) t.second = -t.second;
    }
}

RationalFn SkeinElement::coeff(const Diagram& d) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), d,
                             [](const auto& t, const Diagram& key) { return t.first < key; });
  if (it == terms_.end() || !(it->first == d)) return RationalFn(0);
  return RationalFn::from_zpolys(it->second, den_);
}

std::vector<std::pair<Diagram, RationalFn>> SkeinElement::terms() const {
  std::vector<std::pair<Diagram, RationalFn>> out;
  out.reserve(terms_.size());
  for (const auto& [d, n] : terms_) out.emplace_back(d, RationalFn::from_zpolys(n, den_));
  return out;
}

SkeinElement SkeinElement::operator-() const {
  SkeinElement r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

SkeinElement& SkeinElement::operator+=(const SkeinElement& o) {
  if (bottom_ != o.bottom_ || top_ != o.top_) throw std::invalid_argument("SkeinElement: boundary mismatch in sum");
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  ZPoly sa(1L);
  ZPoly sb(1L);
  if (!(den_ == o.den_)) {
    ZPoly g = ZPoly::gcd(den_, o.den_);
    sa = ZPoly::divexact(o.den_, g);
    sb = ZPoly::divexact(den_, g);
    den_ = den_ * sa;
  }
  std::vector<std::pair<Diagram, ZPoly>> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.emplace_back(a->first, a->second * sa);
      ++a;
    } else if (a == terms_.end() || b->first < a->first) {
      merged.emplace_back(b->first, b->second * sb);
      ++b;
    } else {
      merged.emplace_back(a->first, a->second * sa + b->second * sb);
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  canonicalize();
  return *this;
}

SkeinElement& SkeinElement::operator-=(const SkeinElement& o) { return *this += -o; }

SkeinElement& SkeinElement::operator*=(const RationalFn& c) {
  if (c.is_zero()) {
    terms_.clear();
    den_ = ZPoly(1L);
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& t : terms_) t.second *= c.num();
  den_ *= c.den();
  canonicalize();
  return *this;
}

SkeinElement SkeinElement::reflected() const {
  SkeinElement r(top_, bottom_);
  r.den_ = den_;
  r.terms_.reserve(terms_.size());
  for (const auto& [d, n] : terms_) r.terms_.emplace_back(d.reflected(), n);
  std::sort(r.terms_.begin(), r.terms_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return r;
}

SkeinElement SkeinElement::tensor(const SkeinElement& right) const {
  SkeinElement r(bottom_ + right.bottom_, top_ + right.top_);
  if (is_zero() || right.is_zero()) return r;
  r.den_ = den_ * right.den_;
  r.terms_.reserve(terms_.size() * right.terms_.size());
  for (const auto& [d1, n1] : terms_)
    for (const auto& [d2, n2] : right.terms_) r.terms_.emplace_back(d1.tensor(d2), n1 * n2);
  std::sort(r.terms_.begin(), r.terms_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  r.canonicalize();
  return r;
}

SkeinElement compose(const SkeinElement& upper, const SkeinElement& lower) {
  if (upper.bottom_ != lower.top_) throw std::invalid_argument("compose: strand-count mismatch");
  SkeinElement r(lower.bottom_, upper.top_);
  if (upper.is_zero() || lower.is_zero()) return r;
  std::unordered_map<Diagram, std::vector<ZPoly>, DiagramHash> acc;
  acc.reserve(upper.terms_.size() * 2);
  for (const auto& [du, nu] : upper.terms_)
    for (const auto& [dl, nl] : lower.terms_) {
      auto [d, loops] = compose(du, dl);
      add_at(acc[d], loops, nu * nl);
    }
  r.terms_.reserve(acc.size());
  for (auto& [d, sums] : acc) r.terms_.emplace_back(d, collect_loops(sums));
  std::sort(r.terms_.begin(), r.terms_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  r.den_ = upper.den_ * lower.den_;
  r.canonicalize();
  return r;
}

SkeinElement compose_all(const std::vector<SkeinElement>& xs) {
  if (xs.empty()) throw std::invalid_argument("compose_all: empty list");
  SkeinElement r = xs.back();
  for (std::size_t k = xs.size() - 1; k-- > 0;) r = compose(xs[k], r);
  return r;
}

RationalFn trace_closure_value(const SkeinElement& x) {
  if (x.bottom_ != x.top_) throw std::invalid_argument("trace_closure_value: element is not square");
  std::vector<ZPoly> sums;
  for (const auto& [d, n] : x.terms_) add_at(sums, trace_loops(d), n);
  return RationalFn::from_zpolys(collect_loops(sums), x.den_);
}

RationalFn inner_product(const SkeinElement& l, const SkeinElement& f) {
  if (l.bottom_ != f.bottom_ || l.top_ != f.top_) throw std::invalid_argument("inner_product: strand-count mismatch");
  std::vector<ZPoly> sums;
  std::vector<Diagram> fr;
  fr.reserve(f.terms_.size());
  for (const auto& t : f.terms_) fr.push_back(t.first.reflected());
  for (const auto& [dl, nl] : l.terms_)
    for (std::size_t b = 0; b < fr.size(); ++b) {
      auto [d, loops] = compose(dl, fr[b]);
      add_at(sums, loops + trace_loops(d), nl * f.terms_[b].second);
    }
  return RationalFn::from_zpolys(collect_loops(sums), l.den_ * f.den_);
}

int BraidWord::writhe() const {
  int w = 0;
  for (int g : letters) w += g > 0 ? 1 : -1;
  return w;
}

namespace {

void check_word(const BraidWord& word) {
  if (word.strands < 1) throw std::invalid_argument("braid word: strand count must be positive");
  for (int g : word.letters)
    if (g == 0 || std::abs(g) >= word.strands)
      throw std::invalid_argument("braid word: generator index out of range");
}

}  // namespace

SkeinElement braid_to_skein(const BraidWord& word) {
  check_word(word);
  SkeinElement x = SkeinElement::identity(word.strands);
  for (int g : word.letters) x = compose(SkeinElement::crossing(std::abs(g), word.strands, g), x);
  return x;
}

BraidWord cable(const BraidWord& word, int i) {
  check_word(word);
  if (i < 1) throw std::invalid_argument("cable: color must be positive");
  BraidWord out{word.strands * i, {}};
  for (int letter : word.letters) {
    const int sign = letter > 0 ? 1 : -1;
    const int offset = (std::abs(letter) - 1) * i;
    for (int r = 0; r < i; ++r)
      for (int h = i + r; h >= r + 1; --h) out.letters.push_back(sign * (offset + h));
  }
  return out;
}

RationalFn state_sum_bracket(const BraidWord& word) {
  check_word(word);
  const int n = word.strands;
  const int c = static_cast<int>(word.letters.size());
  if (c > 24) throw std::invalid_argument("state_sum_bracket: too many crossings");
  // Nodes (level, position); level 0..c. Each crossing joins levels t-1 and t.
  auto node = [n](int level, int p) { return level * n + p; };
  const int count = (c + 1) * n;
  std::vector<ZPoly> by_loops;
  std::vector<int> parent(static_cast<std::size_t>(count));
  for (std::uint32_t state = 0; state < (1U << c); ++state) {
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[static_cast<std::size_t>(v)] != v) {
        parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        v = parent[static_cast<std::size_t>(v)];
      }
      return v;
    };
    int components = count;
    auto unite = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b) {
        parent[static_cast<std::size_t>(a)] = b;
        --components;
      }
    };
    std::int64_t a_power = 0;
    for (int t = 1; t <= c; ++t) {
      const int g = word.letters[static_cast<std::size_t>(t - 1)];
      const int j = std::abs(g) - 1;
      const bool smooth_identity = ((state >> (t - 1)) & 1U) == 0;
      for (int p = 0; p < n; ++p)
        if (p != j && p != j + 1) unite(node(t - 1, p), node(t, p));
      if (smooth_identity) {
        unite(node(t - 1, j), node(t, j));
        unite(node(t - 1, j + 1), node(t, j + 1));
        a_power += g > 0 ? 1 : -1;
      } else {
        unite(node(t - 1, j), node(t - 1, j + 1));
        unite(node(t, j), node(t, j + 1));
        a_power += g > 0 ? -1 : 1;
      }
    }
    for (int p = 0; p < n; ++p) unite(node(c, p), node(0, p));
    add_at(by_loops, components, ZPoly::monomial(1, a_power));
  }
  return RationalFn::from_zpolys(collect_loops(by_loops), ZPoly(1L));
}

nlohmann::json to_json(const SkeinElement& x) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [d, c] : x.terms()) {
    nlohmann::json pairs = nlohmann::json::array();
    for (auto [a, b] : d.ccw_pairs()) pairs.push_back({a, b});
    terms.push_back({{"pairs", pairs}, {"coeff", to_json(c)}});
  }
  return {{"bottom", x.bottom()}, {"top", x.top()}, {"terms", terms}};
}

SkeinElement skein_from_json(const nlohmann::json& j) {
  const int bottom = j.at("bottom").get<int>();
  const int top = j.at("top").get<int>();
  SkeinElement x(bottom, top);
  for (const auto& t : j.at("terms")) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& p : t.at("pairs")) pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    x += SkeinElement(Diagram::from_ccw_pairs(bottom, top, pairs), rational_fn_from_json(t.at("coeff")));
  }
  return x;
}

}  // namespace tlk
