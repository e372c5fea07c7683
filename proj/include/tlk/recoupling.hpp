// Jones-Wenzl projectors, colored trivalent networks and their evaluations.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tlk/laurent.hpp"
#include "tlk/rational_fn.hpp"
#include "tlk/skein.hpp"

namespace tlk {

/// Largest number of points on one side of any diagram the oracles build.
inline constexpr int kOracleStrandBudget = 12;

/// Parity and the three triangle inequalities.
bool is_admissible(int a, int b, int c);

/// f_n in TL_n by the Wenzl recursion; f_0 is the empty diagram. Memoized;
/// safe to call from several threads.
const SkeinElement& jones_wenzl(int n);

/// Optional persistent store consulted before computing a projector and
/// fed after computing one.
struct ProjectorStore {
  std::function<std::optional<SkeinElement>(int)> load;
  std::function<void(int, const SkeinElement&)> save;
};
void set_projector_store(ProjectorStore store);
/// Drop memoized projectors (the store is left in place).
void clear_projector_memo();

/// f_i ⊗ ... ⊗ f_i (k factors).
SkeinElement projector_tensor(int k, int i);

/// P ∘ x ∘ P with P = f_i^{⊗k}.
SkeinElement color_embed(const SkeinElement& x, int k, int i);

struct VertexArcs {
  int x;  // arcs joining the a and b legs
  int y;  // arcs joining b and c
  int z;  // arcs joining c and a
};
/// Internal arc counts of the admissible triple (a, b, c).
VertexArcs vertex_arcs(int a, int b, int c);

/// The bare arc pattern from a+b points (a block, then b block) to c points.
Diagram vertex_arcs_diagram(int a, int b, int c);

/// Trivalent vertex merging legs a, b (bottom, left to right) into c (top),
/// with projectors on all three legs. The split vertex is its reflection.
SkeinElement trivalent_vertex(int a, int b, int c);

/// Δ_n as the trace closure of f_n.
RationalFn delta_oracle(int n);
/// θ(a, b, c) by closing the theta network diagrammatically.
RationalFn theta_oracle(int a, int b, int c);
/// λ_a^{b,c}: the crossing of legs b and c absorbed into the vertex (b, c -> a),
/// computed by resolving the cabled crossing.
RationalFn lambda_oracle(int a, int b, int c);

RationalFn theta_closed(int a, int b, int c);
/// (-1)^{(b+c-a)/2} A^{(a(a+2) - b(b+2) - c(c+2))/2}
RationalFn lambda_closed(int a, int b, int c);
/// Δ_c / θ(a, b, c)
RationalFn fusion_coeff(int a, int b, int c);

/// Σ_c fusion_coeff(a,b,c) · V(a,b,c)^† ∘ V(a,b,c); equals f_a ⊗ f_b.
SkeinElement fusion_expansion(int a, int b);

/// Quantum factorial [n]!.
LaurentPoly qfactorial(int n);

/// Left-leaning fusion tree on k legs colored i whose intermediate colors
/// are s_1 = i, s_2, ..., s_k; a morphism from k·i points to s_k points.
SkeinElement fusion_tree(const std::vector<int>& s, int i);

/// The element D^i_{a_1..a_{2n-1}} of TL_(n,i): the fusion tree of
/// (a_1..a_n) reflected, on top of the fusion tree of (a_{2n-1}..a_n).
SkeinElement build_D(const std::vector<int>& a, int i);

/// Δ_{a_{2n-1}} Π_j θ(a_{j+1}, a_j, i) / Δ_{a_{j+1}}
RationalFn d_norm_closed(const std::vector<int>& a, int i);

/// All index sequences a_1..a_{2n-1} with a_1 = a_{2n-1} = i and consecutive
/// triples (a_{j+1}, a_j, i) admissible.
std::vector<std::vector<int>> d_index_sequences(int n, int i);

}  // namespace tlk
