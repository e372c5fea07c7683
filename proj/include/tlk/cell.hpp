// The graph basis G_{s,t} of TL_(k,i) and its cellular structure.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tlk/rational_fn.hpp"
#include "tlk/recoupling.hpp"
#include "tlk/skein.hpp"

namespace tlk {

/// An i-admissible sequence (s_1, ..., s_k): s_1 = i and each
/// (s_{j-1}, s_j, i) admissible. Its weight ω(s) is s_k.
using Sequence = std::vector<int>;

bool is_admissible_sequence(const Sequence& s, int i);
inline int weight(const Sequence& s) { return s.back(); }

/// Λ_{k,i} = {ki - 2j}, ascending.
std::vector<int> weights(int k, int i);
/// T(λ) in lexicographic order; throws if λ is not a weight.
std::vector<Sequence> sequences(int k, int i, int lambda);
/// T(Λ_{k,i}): all sequences, grouped by ascending weight.
std::vector<Sequence> all_sequences(int k, int i);

/// η(s) = Π_{j<k} θ(s_{j+1}, s_j, i) / Δ_{s_{j+1}}
RationalFn eta(const Sequence& s, int i);

/// Sparse combination of graph basis elements G_{s,t} with ω(s) = ω(t).
class CellElement {
 public:
  using Key = std::pair<Sequence, Sequence>;

  CellElement(int k, int i);
  static CellElement basis(int k, int i, const Sequence& s, const Sequence& t, const RationalFn& c = RationalFn(1));
  /// Σ_t G_{t,t}
  static CellElement identity(int k, int i);

  int k() const { return k_; }
  int i() const { return i_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Key, RationalFn>& terms() const { return terms_; }
  RationalFn coeff(const Sequence& s, const Sequence& t) const;

  void add(const Sequence& s, const Sequence& t, const RationalFn& c);

  CellElement operator-() const;
  CellElement& operator+=(const CellElement& o);
  CellElement& operator-=(const CellElement& o);
  CellElement& operator*=(const RationalFn& c);
  friend CellElement operator+(CellElement a, const CellElement& b) { return a += b; }
  friend CellElement operator-(CellElement a, const CellElement& b) { return a -= b; }
  friend CellElement operator*(const RationalFn& c, CellElement x) { return x *= c; }
  friend bool operator==(const CellElement& a, const CellElement& b) = default;

 private:
  void check_shape(const CellElement& o, const char* who) const;
  int k_;
  int i_;
  std::map<Key, RationalFn> terms_;
};

/// G_{s,t} G_{u,v} = [t = u] G_{s,v}, extended bilinearly.
CellElement cell_mul(const CellElement& x, const CellElement& y);
/// The cellular anti-involution G_{s,t} -> G_{t,s}.
CellElement cell_star(const CellElement& x);
/// Reflection of the underlying diagrams: G_{s,t} -> (η(t)/η(s)) G_{t,s}.
CellElement cell_reflect(const CellElement& x);
/// ⟨G_{s,t}, G_{u,v}⟩ = [s=u][t=v] (η(t)/η(s)) Δ_{ω(s)}
RationalFn cell_inner(const CellElement& x, const CellElement& y);

/// The skein realization G_{s,t} = D(s_1..s_k = t_k..t_1) / η(s).
/// Requires k·i within the oracle budget.
SkeinElement to_skein(const CellElement& x);
/// Graph basis coordinates of an element of TL_(k,i) by the Gram
/// projection; throws std::domain_error if x is not fixed by C_i.
CellElement from_skein(const SkeinElement& x, int k, int i);

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

/// Cell datum checks: basis cardinality and independence, the
/// right-multiplication property, the anti-involution; at oracle scale also
/// the dimension of C_i(TL_{ki}) and agreement with the skein realization.
std::vector<CheckResult> verify_cell_datum(int k, int i);
/// One line per check: `(k,i) check-name PASS|FAIL detail`.
std::string format_report(int k, int i, const std::vector<CheckResult>& results);

struct BranchingDiagram {
  int k;
  int i;
  /// levels[j] holds the weights reachable after j+1 legs.
  std::vector<std::vector<int>> levels;
  /// edges[j] joins levels[j] to levels[j+1].
  std::vector<std::vector<std::pair<int, int>>> edges;
  /// Paths from the top level to weight λ on the last level.
  std::size_t path_count(int lambda) const;
};
BranchingDiagram branching(int k, int i);

nlohmann::json to_json(const CellElement& x);
CellElement cell_from_json(const nlohmann::json& j, int k, int i);

}  // namespace tlk
