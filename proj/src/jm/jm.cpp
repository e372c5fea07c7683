#include "tlk/jm.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tlk {

namespace {

void require_index(int j, int k) {
  if (j < 1 || j > k)
    throw std::out_of_range("jm: index " + std::to_string(j) + " outside 1.." + std::to_string(k));
}

void require_sequence(const Sequence& s, int k, int i) {
  if (static_cast<int>(s.size()) != k || !is_admissible_sequence(s, i))
    throw std::invalid_argument("jm: sequence is not in T(Λ_{k,i})");
}

std::string seq_string(const Sequence& s) {
  std::string out = "(";
  for (std::size_t j = 0; j < s.size(); ++j) out += (j ? "," : "") + std::to_string(s[j]);
  return out + ")";
}

}  // namespace

RationalFn jm_eigenvalue(const Sequence& s, int j, int i) {
  require_sequence(s, static_cast<int>(s.size()), i);
  require_index(j, static_cast<int>(s.size()));
  if (j == 1) return RationalFn(1);
  const RationalFn l = lambda_closed(s[static_cast<std::size_t>(j - 1)], s[static_cast<std::size_t>(j - 2)], i);
  return l * l;
}

CellElement jm_element(int j, int k, int i) {
  require_index(j, k);
  CellElement r(k, i);
  for (const auto& s : all_sequences(k, i)) r.add(s, s, jm_eigenvalue(s, j, i));
  return r;
}

std::vector<RationalFn> jm_spectrum(int j, int k, int i) {
  require_index(j, k);
  std::vector<RationalFn> out;
  for (const auto& s : all_sequences(k, i)) {
    RationalFn c = jm_eigenvalue(s, j, i);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  return out;
}

std::vector<CheckResult> jm_checks(int k, int i) {
  std::vector<CellElement> l;
  for (int j = 1; j <= k; ++j) l.push_back(jm_element(j, k, i));

  std::vector<CheckResult> out;
  std::string bad;
  for (int a = 0; a < k && bad.empty(); ++a)
    for (int b = a + 1; b < k; ++b)
      if (!(cell_mul(l[a], l[b]) == cell_mul(l[b], l[a]))) {
        bad = "L" + std::to_string(a + 1) + " L" + std::to_string(b + 1);
        break;
      }
  out.push_back({"jm-commute", bad.empty(), bad.empty() ? std::to_string(k * (k - 1) / 2) + " pairs" : bad});

  bad.clear();
  for (int j = 0; j < k && bad.empty(); ++j)
    if (!(cell_star(l[j]) == l[j])) bad = "L" + std::to_string(j + 1);
  out.push_back({"jm-self-adjoint", bad.empty(), bad.empty() ? std::to_string(k) + " elements" : bad});

  const auto all = all_sequences(k, i);
  std::vector<std::vector<RationalFn>> vecs;
  for (const auto& s : all) {
    std::vector<RationalFn> v;
    for (int j = 1; j <= k; ++j) v.push_back(jm_eigenvalue(s, j, i));
    vecs.push_back(std::move(v));
  }
  bad.clear();
  for (std::size_t a = 0; a < all.size() && bad.empty(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b)
      if (vecs[a] == vecs[b]) {
        bad = seq_string(all[a]) + " " + seq_string(all[b]);
        break;
      }
  out.push_back({"jm-separating", bad.empty(), bad.empty() ? std::to_string(all.size()) + " sequences" : bad});
  return out;
}

bool check_separating(int k, int i) {
  const auto r = jm_checks(k, i);
  return std::all_of(r.begin(), r.end(), [](const CheckResult& c) { return c.pass; });
}

CellElement ft_interpolation(const Sequence& t, int k, int i) {
  require_sequence(t, k, i);
  const CellElement one = CellElement::identity(k, i);
  CellElement f = one;
  for (int j = 1; j <= k; ++j) {
    const CellElement lj = jm_element(j, k, i);
    const RationalFn ct = jm_eigenvalue(t, j, i);
    for (const auto& c : jm_spectrum(j, k, i)) {
      if (c == ct) continue;
      const CellElement factor = (ct - c).inverse() * (lj - c * one);
      f = cell_mul(f, factor);
    }
  }
  return f;
}

CellElement central_idempotent(int lambda, int k, int i) {
  CellElement z(k, i);
  for (const auto& t : sequences(k, i, lambda)) z.add(t, t, RationalFn(1));
  return z;
}

IrreducibleModule irreducible_module(const Sequence& s, int k, int i) {
  require_sequence(s, k, i);
  return {k, i, s, sequences(k, i, weight(s))};
}

namespace {

Matrix<RationalFn> module_matrix(const IrreducibleModule& m, const CellElement& x, bool right) {
  if (x.k() != m.k || x.i() != m.i) throw std::invalid_argument("irreducible_module: shape mismatch");
  const std::size_t n = m.basis.size();
  Matrix<RationalFn> r(n, std::vector<RationalFn>(n, RationalFn(0)));
  for (std::size_t a = 0; a < n; ++a) {
    const CellElement g = CellElement::basis(m.k, m.i, m.s, m.basis[a]);
    const CellElement y = right ? cell_mul(g, x) : cell_mul(x, g);
    for (const auto& [key, c] : y.terms()) {
      if (key.first != m.s) throw std::domain_error("irreducible_module: element does not preserve the module");
      const auto it = std::find(m.basis.begin(), m.basis.end(), key.second);
      r[a][static_cast<std::size_t>(it - m.basis.begin())] = c;
    }
  }
  return r;
}

}  // namespace

Matrix<RationalFn> IrreducibleModule::right_action(const CellElement& x) const {
  return module_matrix(*this, x, true);
}

Matrix<RationalFn> IrreducibleModule::left_action(const CellElement& x) const {
  return module_matrix(*this, x, false);
}

}  // namespace tlk
