#include "tlk/recoupling.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace tlk {

namespace {

std::mutex g_memo_mutex;
std::map<int, SkeinElement> g_memo;
ProjectorStore g_store;

void require_admissible(int a, int b, int c, const char* who) {
  if (!is_admissible(a, b, c))
    throw std::invalid_argument(std::string(who) + ": inadmissible triple (" + std::to_string(a) + "," +
                                std::to_string(b) + "," + std::to_string(c) + ")");
}

void require_budget(int strands, const char* who) {
  if (strands > kOracleStrandBudget)
    throw std::length_error(std::string(who) + ": oracle budget exceeded (" + std::to_string(strands) + " > " +
                            std::to_string(kOracleStrandBudget) + " strands)");
}

SkeinElement compute_jones_wenzl(int n) {
  if (n == 0) return SkeinElement(Diagram(0, 0, {}));
  if (n == 1) return SkeinElement::identity(1);
  const SkeinElement f = jones_wenzl(n - 1).tensor(SkeinElement::identity(1));
  const SkeinElement middle = compose(compose(f, SkeinElement::generator_e(n - 1, n)), f);
  const RationalFn ratio(delta_closed(n - 2), delta_closed(n - 1));
  return f - ratio * middle;
}

}  // namespace

bool is_admissible(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) return false;
  if ((a + b + c) % 2 != 0) return false;
  return a <= b + c && b <= a + c && c <= a + b;
}

const SkeinElement& jones_wenzl(int n) {
  if (n < 0) throw std::invalid_argument("jones_wenzl: n must be non-negative");
  require_budget(n, "jones_wenzl");
  ProjectorStore store;
  {
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    auto it = g_memo.find(n);
    if (it != g_memo.end()) return it->second;
    store = g_store;
  }
  std::optional<SkeinElement> loaded;
  if (store.load) loaded = store.load(n);
  SkeinElement f = loaded ? std::move(*loaded) : compute_jones_wenzl(n);
  if (!loaded && store.save) store.save(n, f);
  std::lock_guard<std::mutex> lock(g_memo_mutex);
  return g_memo.emplace(n, std::move(f)).first->second;
}

void set_projector_store(ProjectorStore store) {
  std::lock_guard<std::mutex> lock(g_memo_mutex);
  g_store = std::move(store);
}

void clear_projector_memo() {
  std::lock_guard<std::mutex> lock(g_memo_mutex);
  g_memo.clear();
}

SkeinElement projector_tensor(int k, int i) {
  if (k < 0 || i < 0) throw std::invalid_argument("projector_tensor: negative shape");
  require_budget(k * i, "projector_tensor");
  SkeinElement p(Diagram(0, 0, {}));
  for (int t = 0; t < k; ++t) p = p.tensor(jones_wenzl(i));
  return p;
}

SkeinElement color_embed(const SkeinElement& x, int k, int i) {
  if (x.bottom() != k * i || x.top() != k * i) throw std::invalid_argument("color_embed: strand-count mismatch");
  if (i == 1) return x;
  const SkeinElement p = projector_tensor(k, i);
  return compose(compose(p, x), p);
}

VertexArcs vertex_arcs(int a, int b, int c) {
  require_admissible(a, b, c, "vertex_arcs");
  return {(a + b - c) / 2, (b + c - a) / 2, (c + a - b) / 2};
}

Diagram vertex_arcs_diagram(int a, int b, int c) {
  const VertexArcs v = vertex_arcs(a, b, c);
  const int bottom = a + b;
  std::vector<int> p(static_cast<std::size_t>(a + b + c));
  auto join = [&](int u, int w) {
    p[static_cast<std::size_t>(u)] = w;
    p[static_cast<std::size_t>(w)] = u;
  };
  for (int t = 0; t < v.x; ++t) join(a - 1 - t, a + t);
  for (int j = 0; j < v.z; ++j) join(j, bottom + j);
  for (int j = 0; j < v.y; ++j) join(a + v.x + j, bottom + v.z + j);
  return Diagram(bottom, c, p);
}

SkeinElement trivalent_vertex(int a, int b, int c) {
  require_admissible(a, b, c, "trivalent_vertex");
  require_budget(std::max(a + b, c), "trivalent_vertex");
  const SkeinElement legs = jones_wenzl(a).tensor(jones_wenzl(b));
  return compose(jones_wenzl(c), compose(SkeinElement(vertex_arcs_diagram(a, b, c)), legs));
}

RationalFn delta_oracle(int n) { return trace_closure_value(jones_wenzl(n)); }

RationalFn theta_oracle(int a, int b, int c) {
  require_admissible(a, b, c, "theta_oracle");
  require_budget(std::max(a + b, c), "theta_oracle");
  // tr(f_c ∘ arcs ∘ (f_a ⊗ f_b) ∘ arcs^†); the remaining projectors are
  // absorbed by idempotence and cyclicity of the trace.
  const SkeinElement arcs(vertex_arcs_diagram(a, b, c));
  const SkeinElement w = compose(compose(arcs, jones_wenzl(a).tensor(jones_wenzl(b))), arcs.reflected());
  return trace_closure_value(compose(jones_wenzl(c), w));
}

RationalFn lambda_oracle(int a, int b, int c) {
  require_admissible(a, b, c, "lambda_oracle");
  require_budget(std::max(b + c, a), "lambda_oracle");
  // Cable of one positive crossing carrying the b block (bottom left) to the
  // right and the c block to the left, one strand crossing at a time.
  std::vector<int> word;
  for (int r = 0; r < c; ++r)
    for (int h = b + r; h >= r + 1; --h) word.push_back(h);
  SkeinElement y = trivalent_vertex(c, b, a);
  for (auto it = word.rbegin(); it != word.rend(); ++it) y = compose(y, SkeinElement::crossing(*it, b + c, 1));
  const SkeinElement v = trivalent_vertex(b, c, a);
  const auto& [d, num] = v.numerators().front();
  const RationalFn ratio = y.coeff(d) / v.coeff(d);
  if (!(y == ratio * v)) throw std::logic_error("lambda_oracle: crossing is not a multiple of the vertex");
  return ratio;
}

LaurentPoly qfactorial(int n) {
  if (n < 0) throw std::invalid_argument("qfactorial: n must be non-negative");
  LaurentPoly r(1);
  for (int j = 2; j <= n; ++j) r *= qint(j);
  return r;
}

RationalFn theta_closed(int a, int b, int c) {
  require_admissible(a, b, c, "theta_closed");
  const int m = (a + b - c) / 2;
  const int n = (b + c - a) / 2;
  const int p = (a + c - b) / 2;
  LaurentPoly num = qfactorial(m + n + p + 1) * qfactorial(m) * qfactorial(n) * qfactorial(p);
  LaurentPoly den = qfactorial(m + n) * qfactorial(n + p) * qfactorial(m + p);
  if ((m + n + p) % 2 != 0) num = -num;
  return RationalFn(num, den);
}

RationalFn lambda_closed(int a, int b, int c) {
  require_admissible(a, b, c, "lambda_closed");
  const long e = (a * (a + 2) - b * (b + 2) - c * (c + 2)) / 2;
  const long sign = ((b + c - a) / 2) % 2 == 0 ? 1 : -1;
  return RationalFn::monomial(sign, e);
}

RationalFn fusion_coeff(int a, int b, int c) {
  require_admissible(a, b, c, "fusion_coeff");
  return RationalFn(delta_closed(c)) / theta_closed(a, b, c);
}

SkeinElement fusion_expansion(int a, int b) {
  SkeinElement sum(a + b, a + b);
  for (int c = std::abs(a - b); c <= a + b; c += 2) {
    const SkeinElement v = trivalent_vertex(a, b, c);
    sum += fusion_coeff(a, b, c) * compose(v.reflected(), v);
  }
  return sum;
}

SkeinElement fusion_tree(const std::vector<int>& s, int i) {
  if (s.empty() || s.front() != i) throw std::invalid_argument("fusion_tree: sequence must start with the color");
  const int k = static_cast<int>(s.size());
  require_budget(k * i, "fusion_tree");
  SkeinElement y = jones_wenzl(i);
  for (int j = 1; j < k; ++j) {
    require_admissible(s[static_cast<std::size_t>(j - 1)], i, s[static_cast<std::size_t>(j)], "fusion_tree");
    const SkeinElement v = trivalent_vertex(s[static_cast<std::size_t>(j - 1)], i, s[static_cast<std::size_t>(j)]);
    y = compose(v, y.tensor(SkeinElement::identity(i)));
  }
  return y;
}

namespace {

void check_d_sequence(const std::vector<int>& a, int i) {
  if (a.size() % 2 == 0) throw std::invalid_argument("build_D: index sequence must have odd length");
  if (a.front() != i || a.back() != i) throw std::invalid_argument("build_D: sequence must start and end with the color");
  for (std::size_t j = 0; j + 1 < a.size(); ++j) require_admissible(a[j + 1], a[j], i, "build_D");
}

}  // namespace

SkeinElement build_D(const std::vector<int>& a, int i) {
  check_d_sequence(a, i);
  const std::size_t n = (a.size() + 1) / 2;
  require_budget(static_cast<int>(n) * i, "build_D");
  std::vector<int> s(a.begin(), a.begin() + static_cast<long>(n));
  std::vector<int> t(a.rbegin(), a.rbegin() + static_cast<long>(n));
  return compose(fusion_tree(s, i).reflected(), fusion_tree(t, i));
}

RationalFn d_norm_closed(const std::vector<int>& a, int i) {
  check_d_sequence(a, i);
  RationalFn r(delta_closed(a.back()));
  for (std::size_t j = 0; j + 1 < a.size(); ++j)
    r *= theta_closed(a[j + 1], a[j], i) / RationalFn(delta_closed(a[j + 1]));
  return r;
}

std::vector<std::vector<int>> d_index_sequences(int n, int i) {
  if (n < 1 || i < 0) throw std::invalid_argument("d_index_sequences: invalid shape");
  std::vector<std::vector<int>> out;
  std::vector<int> cur{i};
  const std::size_t len = static_cast<std::size_t>(2 * n - 1);
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == len) {
      if (cur.back() == i) out.push_back(cur);
      return;
    }
    const int prev = cur.back();
    for (int next = std::abs(prev - i); next <= prev + i; next += 2) {
      cur.push_back(next);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

}  // namespace tlk
