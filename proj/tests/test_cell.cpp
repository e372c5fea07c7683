#include "doctest.h"
#include "gen.hpp"
#include "tlk/cell.hpp"
#include "tlk/matrix.hpp"
#include "tlk/serialize.hpp"

using namespace tlk;
using tlk::testing::Gen;

namespace {

const RationalFn delta{loop_value()};

CellElement G(int k, int i, const Sequence& s, const Sequence& t) { return CellElement::basis(k, i, s, t); }

CellElement random_cell(Gen& g, int k, int i, int max_terms = 4) {
  const auto all = all_sequences(k, i);
  CellElement x(k, i);
  const long n = g.integer(0, max_terms);
  for (long t = 0; t < n; ++t) {
    const Sequence& s = all[static_cast<std::size_t>(g.integer(0, static_cast<long>(all.size()) - 1))];
    const auto same = sequences(k, i, weight(s));
    const Sequence& u = same[static_cast<std::size_t>(g.integer(0, static_cast<long>(same.size()) - 1))];
    x.add(s, u, g.rational_fn(2, 2));
  }
  return x;
}

}  // namespace

TEST_CASE("weights") {
  CHECK(weights(2, 1) == std::vector<int>{0, 2});
  CHECK(weights(3, 2) == std::vector<int>{0, 2, 4, 6});
  CHECK(weights(1, 3) == std::vector<int>{3});
  CHECK(weights(1, 2) == std::vector<int>{2});
  CHECK(weights(2, 3) == std::vector<int>{0, 2, 4, 6});
  for (int k = 1; k <= 6; ++k)
    for (int i = 0; i <= 4; ++i) {
      std::vector<int> achieved;
      for (const auto& s : all_sequences(k, i)) achieved.push_back(weight(s));
      achieved.erase(std::unique(achieved.begin(), achieved.end()), achieved.end());
      CHECK(achieved == weights(k, i));
    }
  CHECK(weights(3, 1) == std::vector<int>{1, 3});
}

TEST_CASE("sequences") {
  CHECK(sequences(2, 1, 0) == std::vector<Sequence>{{1, 0}});
  CHECK(sequences(2, 1, 2) == std::vector<Sequence>{{1, 2}});
  CHECK(sequences(3, 2, 6) == std::vector<Sequence>{{2, 4, 6}});
  CHECK(sequences(3, 2, 2) == std::vector<Sequence>{{2, 0, 2}, {2, 2, 2}, {2, 4, 2}});
  CHECK_THROWS_AS(sequences(2, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(sequences(2, 1, 4), std::invalid_argument);
  for (int k = 1; k <= 10; ++k) {
    std::size_t sum = 0;
    for (int l : weights(k, 1)) sum += sequences(k, 1, l).size() * sequences(k, 1, l).size();
    CHECK(sum == Diagram::enumerate(k, k).size());
  }
  for (int k = 1; k <= 5; ++k)
    for (int i = 0; i <= 3; ++i) {
      auto all = all_sequences(k, i);
      for (const auto& s : all) CHECK(is_admissible_sequence(s, i));
      auto sorted = all;
      std::sort(sorted.begin(), sorted.end());
      CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      for (int l : weights(k, i)) {
        auto t = sequences(k, i, l);
        CHECK(std::is_sorted(t.begin(), t.end()));
      }
    }
}

TEST_CASE("eta") {
  CHECK(eta({1}, 1) == RationalFn(1));
  CHECK(eta({3}, 3) == RationalFn(1));
  CHECK(eta({1, 2}, 1) == theta_closed(2, 1, 1) / RationalFn(delta_closed(2)));
  CHECK(eta({1, 0}, 1) == theta_oracle(0, 1, 1));
  CHECK(eta({1, 0}, 1) == delta);
  for (const auto& s : all_sequences(4, 2)) CHECK_FALSE(eta(s, 2).is_zero());
  CHECK_THROWS_AS(eta({1, 3}, 1), std::invalid_argument);
}

TEST_CASE("cell_mul examples") {
  const Sequence s{2, 2, 2}, t{2, 0, 2}, v{2, 4, 2};
  CHECK(cell_mul(G(3, 2, s, t), G(3, 2, t, v)) == G(3, 2, s, v));
  CHECK(cell_mul(G(3, 2, s, t), G(3, 2, s, v)).is_zero());
  Gen g(41);
  for (int n = 0; n < 50; ++n) {
    CellElement x = random_cell(g, 3, 2);
    CHECK(cell_mul(CellElement::identity(3, 2), x) == x);
    CHECK(cell_mul(x, CellElement::identity(3, 2)) == x);
  }
  CHECK_THROWS_AS(cell_mul(CellElement(2, 1), CellElement(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(G(2, 1, {1, 0}, {1, 2}), std::invalid_argument);
}

TEST_CASE("cell_mul is associative") {
  std::vector<CellElement> basis;
  for (const auto& s : all_sequences(2, 2))
    for (const auto& t : sequences(2, 2, weight(s))) basis.push_back(G(2, 2, s, t));
  for (const auto& x : basis)
    for (const auto& y : basis)
      for (const auto& z : basis) CHECK(cell_mul(cell_mul(x, y), z) == cell_mul(x, cell_mul(y, z)));
  Gen g(43);
  for (int n = 0; n < 500; ++n) {
    CellElement x = random_cell(g, 3, 2), y = random_cell(g, 3, 2), z = random_cell(g, 3, 2);
    CHECK(cell_mul(cell_mul(x, y), z) == cell_mul(x, cell_mul(y, z)));
  }
}

TEST_CASE("cell_star") {
  const Sequence s{1, 2, 1}, t{1, 0, 1}, v{1, 2, 1};
  CHECK(cell_star(G(3, 1, s, s)) == G(3, 1, s, s));
  CHECK(cell_star(cell_mul(G(3, 1, s, t), G(3, 1, t, v))) == cell_mul(G(3, 1, v, t), G(3, 1, t, s)));
  Gen g(47);
  for (int n = 0; n < 200; ++n) {
    CellElement x = random_cell(g, 3, 2), y = random_cell(g, 3, 2);
    CHECK(cell_star(cell_star(x)) == x);
    CHECK(cell_star(cell_mul(x, y)) == cell_mul(cell_star(y), cell_star(x)));
    CHECK(cell_reflect(cell_reflect(x)) == x);
    CHECK(cell_reflect(cell_mul(x, y)) == cell_mul(cell_reflect(y), cell_reflect(x)));
  }
}

TEST_CASE("cell_inner") {
  for (const auto& s : all_sequences(3, 2)) {
    CHECK(cell_inner(G(3, 2, s, s), G(3, 2, s, s)) == RationalFn(delta_closed(weight(s))));
    for (const auto& t : sequences(3, 2, weight(s))) {
      const RationalFn a = cell_inner(G(3, 2, s, t), G(3, 2, s, t));
      const RationalFn b = cell_inner(G(3, 2, t, s), G(3, 2, t, s));
      CHECK(a * b == RationalFn(delta_closed(weight(s))).pow(2));
      for (const auto& u : all_sequences(3, 2))
        for (const auto& v : sequences(3, 2, weight(u)))
          if (!(u == s && v == t)) CHECK(cell_inner(G(3, 2, s, t), G(3, 2, u, v)).is_zero());
    }
  }
}

TEST_CASE("Gram determinant of TL_(2,1) is non-zero") {
  std::vector<CellElement> basis;
  for (const auto& s : all_sequences(2, 1)) basis.push_back(G(2, 1, s, s));
  Matrix<RationalFn> gram(basis.size(), std::vector<RationalFn>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) gram[a][b] = inner_product(to_skein(basis[a]), to_skein(basis[b]));
  CHECK_FALSE(determinant(gram).is_zero());
  CHECK(determinant(gram) == RationalFn(delta_closed(0) * delta_closed(2)));
}

TEST_CASE("to_skein intertwines the cellular structure with the skein oracle") {
  const std::pair<int, int> shapes[] = {{2, 1}, {3, 1}, {2, 2}, {4, 1}};
  for (auto [k, i] : shapes) {
    std::vector<CellElement> basis;
    for (const auto& s : all_sequences(k, i))
      for (const auto& t : sequences(k, i, weight(s))) basis.push_back(G(k, i, s, t));
    for (const auto& x : basis) {
      const SkeinElement sx = to_skein(x);
      CHECK(sx.reflected() == to_skein(cell_reflect(x)));
      for (const auto& y : basis) {
        const SkeinElement sy = to_skein(y);
        CHECK(compose(sx, sy) == to_skein(cell_mul(x, y)));
        CHECK(inner_product(sx, sy) == cell_inner(x, y));
      }
    }
  }
  for (const auto& s : all_sequences(3, 2))
    CHECK(inner_product(to_skein(G(3, 2, s, s)), to_skein(G(3, 2, s, s))) == RationalFn(delta_closed(weight(s))));
}

TEST_CASE("reflection matches the star exactly when the eta values agree") {
  // Reflection sends G_{s,t} to (eta(t)/eta(s)) G_{t,s}; the two coincide
  // only for eta(s) = eta(t).
  int differing = 0;
  for (const auto& s : all_sequences(3, 1))
    for (const auto& t : sequences(3, 1, weight(s))) {
      const bool literal = to_skein(G(3, 1, s, t)).reflected() == to_skein(G(3, 1, t, s));
      CHECK(literal == (eta(s, 1) == eta(t, 1)));
      if (!literal) ++differing;
    }
  CHECK(differing == 2);
}

TEST_CASE("from_skein") {
  for (auto [k, i] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 2}, {2, 3}}) {
    const SkeinElement one = color_embed(SkeinElement::identity(k * i), k, i);
    CHECK(from_skein(one, k, i) == CellElement::identity(k, i));
  }
  Gen g(53);
  for (int n = 0; n < 20; ++n) {
    CellElement x = random_cell(g, 2, 2);
    CHECK(from_skein(to_skein(x), 2, 2) == x);
  }
  const CellElement e = from_skein(color_embed(SkeinElement::generator_e(1, 2), 2, 1), 2, 1);
  CHECK(e == CellElement::basis(2, 1, {1, 0}, {1, 0}, delta));
  for (const auto& [key, c] : e.terms()) CHECK(weight(key.first) == 0);
  CHECK_THROWS_AS(from_skein(SkeinElement::identity(4), 2, 2), std::domain_error);
}

TEST_CASE("graph basis idempotents are orthogonal and sum to the identity") {
  for (int i = 1; i <= 4; ++i)
    for (int k = 1;; ++k) {
      const auto all = all_sequences(k, i);
      if (all.size() > 200) break;
      CellElement sum(k, i);
      for (const auto& t : all) {
        sum += G(k, i, t, t);
        for (const auto& u : all)
          CHECK(cell_mul(G(k, i, t, t), G(k, i, u, u)) == (t == u ? G(k, i, t, t) : CellElement(k, i)));
      }
      CHECK(sum == CellElement::identity(k, i));
    }
}

TEST_CASE("verify_cell_datum") {
  for (auto [k, i] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {5, 1}, {4, 3}}) {
    const auto results = verify_cell_datum(k, i);
    const std::string report = format_report(k, i, results);
    CAPTURE(report);
    for (const auto& r : results) CHECK(r.pass);
    CHECK(report.rfind("(" + std::to_string(k) + "," + std::to_string(i) + ") basis-cardinality PASS", 0) == 0);
  }
  const auto r32 = verify_cell_datum(3, 2);
  const auto dim = std::find_if(r32.begin(), r32.end(), [](const CheckResult& r) { return r.name == "oracle-dimension"; });
  REQUIRE(dim != r32.end());
  CHECK(dim->detail.find("= 15") != std::string::npos);
}

TEST_CASE("branching diagrams") {
  const BranchingDiagram b = branching(4, 1);
  CHECK(b.levels == std::vector<std::vector<int>>{{1}, {0, 2}, {1, 3}, {0, 2, 4}});
  CHECK(b.edges[0] == std::vector<std::pair<int, int>>{{1, 0}, {1, 2}});
  CHECK(b.edges[1] == std::vector<std::pair<int, int>>{{0, 1}, {2, 1}, {2, 3}});
  const BranchingDiagram w = branching(3, 2);
  CHECK(w.levels.back() == std::vector<int>{0, 2, 4, 6});
  CHECK(w.edges[0] == std::vector<std::pair<int, int>>{{2, 0}, {2, 2}, {2, 4}});
  CHECK(w.edges[1].size() == 7);
  for (int k = 1; k <= 6; ++k)
    for (int i = 1; i <= 3; ++i) {
      const BranchingDiagram d = branching(k, i);
      CHECK(d.path_count(k * i) == 1);
      for (int l : weights(k, i)) CHECK(d.path_count(l) == sequences(k, i, l).size());
    }
}

TEST_CASE("cell serialization round-trips") {
  Gen g(59);
  for (int n = 0; n < 30; ++n) {
    CellElement x = random_cell(g, 3, 2);
    CHECK(cell_from_json(json::parse(to_json(x).dump()), 3, 2) == x);
  }
  CHECK_THROWS(cell_from_json(json::parse(R"([{"s":[1,0],"t":[1,2],"coeff":{"num":[[0,1,1]],"den":[[0,1,1]]}}])"), 2, 1));
}
