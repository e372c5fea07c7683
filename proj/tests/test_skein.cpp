#include "doctest.h"
#include "gen.hpp"
#include "tlk/matrix.hpp"
#include "tlk/serialize.hpp"
#include "tlk/skein.hpp"

using namespace tlk;
using tlk::testing::Gen;

namespace {

const RationalFn delta{loop_value()};

SkeinElement E(int i, int n) { return SkeinElement::generator_e(i, n); }
SkeinElement I(int n) { return SkeinElement::identity(n); }

SkeinElement random_element(Gen& g, int n, int max_terms = 4) {
  static std::vector<std::vector<Diagram>> basis(12);
  if (basis[static_cast<std::size_t>(n)].empty()) basis[static_cast<std::size_t>(n)] = Diagram::enumerate(n, n);
  const auto& b = basis[static_cast<std::size_t>(n)];
  SkeinElement x(n, n);
  const long terms = g.integer(1, max_terms);
  for (long t = 0; t < terms; ++t)
    x += SkeinElement(b[static_cast<std::size_t>(g.integer(0, static_cast<long>(b.size()) - 1))], g.rational_fn(2, 2));
  return x;
}

BraidWord random_word(Gen& g, int strands, int max_len) {
  BraidWord w{strands, {}};
  const long len = g.integer(0, max_len);
  for (long t = 0; t < len; ++t) {
    const int j = static_cast<int>(g.integer(1, strands - 1));
    w.letters.push_back(g.coin() ? j : -j);
  }
  return w;
}

}  // namespace

TEST_CASE("generator_e") {
  const Diagram e = Diagram::generator_e(1, 2);
  CHECK(e.partner(0) == 1);
  CHECK(e.partner(2) == 3);
  CHECK(e.ccw_pairs() == std::vector<std::pair<int, int>>{{1, 2}, {3, 4}});
  const Diagram e13 = Diagram::generator_e(1, 3);
  CHECK(e13.partner(2) == 5);
  CHECK(e13.through_strands() == 1);
  CHECK_THROWS_AS(Diagram::generator_e(0, 3), std::out_of_range);
  CHECK_THROWS_AS(Diagram::generator_e(3, 3), std::out_of_range);
  CHECK(Diagram::identity(2).ccw_pairs() == std::vector<std::pair<int, int>>{{1, 4}, {2, 3}});
}

TEST_CASE("diagram counts are Catalan numbers") {
  CHECK(Diagram::enumerate(3, 3).size() == 5);
  const std::uint64_t expected[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
  for (int n = 0; n <= 10; ++n) {
    CHECK(catalan(n) == expected[n]);
    CHECK(Diagram::enumerate(n, n).size() == catalan(n));
  }
  CHECK(Diagram::enumerate(3, 1).size() == catalan(2));
  CHECK(Diagram::enumerate(3, 2).empty());
}

TEST_CASE("planarity and matching are enforced") {
  // bottom 0 - top 1 and bottom 1 - top 0 cross
  CHECK_THROWS_AS(Diagram(2, 2, {3, 2, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Diagram(2, 2, {2, 2, 0, 1}), std::invalid_argument);
  CHECK_NOTHROW(Diagram(2, 2, {2, 3, 0, 1}));
  for (const auto& d : Diagram::enumerate(4, 4)) CHECK(Diagram::from_ccw_pairs(4, 4, d.ccw_pairs()) == d);
}

TEST_CASE("compose examples") {
  CHECK(compose(E(1, 2), E(1, 2)) == delta * E(1, 2));
  Gen g(3);
  for (int t = 0; t < 20; ++t) {
    SkeinElement x = random_element(g, 3);
    CHECK(compose(I(3), x) == x);
    CHECK(compose(x, I(3)) == x);
  }
  CHECK(compose_all({E(1, 3), E(2, 3), E(1, 3)}) == E(1, 3));
  CHECK(compose_all({E(2, 3), E(1, 3), E(2, 3)}) == E(2, 3));
  CHECK(compose(E(1, 4), E(3, 4)) == compose(E(3, 4), E(1, 4)));
  CHECK_THROWS_AS(compose(E(1, 2), E(1, 3)), std::invalid_argument);
}

TEST_CASE("compose is associative") {
  Gen g(5);
  for (int t = 0; t < 200; ++t) {
    const int n = static_cast<int>(g.integer(1, 6));
    SkeinElement x = random_element(g, n), y = random_element(g, n), z = random_element(g, n);
    CHECK(compose(compose(x, y), z) == compose(x, compose(y, z)));
  }
}

TEST_CASE("tensor is functorial") {
  Gen g(6);
  for (int t = 0; t < 50; ++t) {
    SkeinElement a = random_element(g, 2), b = random_element(g, 3), c = random_element(g, 2), d = random_element(g, 3);
    CHECK(compose(a.tensor(b), c.tensor(d)) == compose(a, c).tensor(compose(b, d)));
  }
}

TEST_CASE("reflect") {
  for (int n = 2; n <= 5; ++n)
    for (int i = 1; i < n; ++i) CHECK(E(i, n).reflected() == E(i, n));
  CHECK(I(4).reflected() == I(4));
  CHECK(compose(E(1, 3), E(2, 3)).reflected() == compose(E(2, 3), E(1, 3)));
  Gen g(7);
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(g.integer(1, 5));
    SkeinElement x = random_element(g, n), y = random_element(g, n);
    CHECK(compose(x, y).reflected() == compose(y.reflected(), x.reflected()));
    CHECK(x.reflected().reflected() == x);
  }
}

TEST_CASE("inner product examples") {
  CHECK(inner_product(I(1), I(1)) == delta);
  CHECK(inner_product(E(1, 2), E(1, 2)) == delta * delta);
  CHECK(inner_product(I(2), E(1, 2)) == delta);
  CHECK(inner_product(I(2), I(2)) == delta * delta);
  CHECK_THROWS_AS(inner_product(I(2), I(3)), std::invalid_argument);
}

TEST_CASE("inner product agrees with the closure of L composed with reflected F") {
  Gen g(8);
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(g.integer(1, 5));
    SkeinElement x = random_element(g, n), y = random_element(g, n);
    CHECK(inner_product(x, y) == trace_closure_value(compose(x, y.reflected())));
    CHECK(inner_product(x, y) == inner_product(y, x));
  }
}

TEST_CASE("Gram matrix of TL_n is nonsingular for n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    const auto basis = Diagram::enumerate(n, n);
    Matrix<ZPoly> gram(basis.size(), std::vector<ZPoly>(basis.size()));
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t b = 0; b < basis.size(); ++b) {
        RationalFn v = inner_product(SkeinElement(basis[a]), SkeinElement(basis[b]));
        REQUIRE(v.is_laurent());
        gram[a][b] = v.num();
      }
    CHECK_FALSE(bareiss_determinant(gram).is_zero());
  }
}

TEST_CASE("trace closure") {
  for (int n = 0; n <= 6; ++n) CHECK(trace_closure_value(I(n)) == delta.pow(n));
  CHECK(trace_closure_value(E(1, 2)) == delta);
  SkeinElement f2 = I(2) - delta.inverse() * E(1, 2);
  CHECK(trace_closure_value(f2) == RationalFn(delta_closed(2)));
}

TEST_CASE("braid_to_skein") {
  CHECK(braid_to_skein({2, {}}) == I(2));
  const RationalFn a = RationalFn::monomial(1, 1);
  CHECK(braid_to_skein({2, {1}}) == a * I(2) + a.inverse() * E(1, 2));
  CHECK(braid_to_skein({2, {-1}}) == a.inverse() * I(2) + a * E(1, 2));
  CHECK(compose(braid_to_skein({3, {1}}), braid_to_skein({3, {-1}})) == I(3));
  CHECK(compose_all({braid_to_skein({3, {1}}), braid_to_skein({3, {2}}), braid_to_skein({3, {1}})}) ==
        compose_all({braid_to_skein({3, {2}}), braid_to_skein({3, {1}}), braid_to_skein({3, {2}})}));
  CHECK_THROWS_AS(braid_to_skein({2, {2}}), std::invalid_argument);
  CHECK_THROWS_AS(braid_to_skein({2, {0}}), std::invalid_argument);
}

TEST_CASE("trefoil bracket matches the direct state sum") {
  const BraidWord trefoil{2, {1, 1, 1}};
  const RationalFn bracket = trace_closure_value(braid_to_skein(trefoil));
  CHECK(bracket == state_sum_bracket(trefoil));
  // <trefoil> = A^-7 - A^-3 - A^5 times δ, in the unreduced normalization
  const LaurentPoly expected = (LaurentPoly::monomial(1, -7) - LaurentPoly::monomial(1, -3) -
                                LaurentPoly::monomial(1, 5)) *
                               loop_value();
  CHECK(bracket == RationalFn(expected));
}

TEST_CASE("braid closures agree with the state sum on random words") {
  Gen g(9);
  for (int t = 0; t < 150; ++t) {
    BraidWord w = random_word(g, static_cast<int>(g.integer(2, 4)), 8);
    CHECK(trace_closure_value(braid_to_skein(w)) == state_sum_bracket(w));
  }
}

TEST_CASE("skein serialization round-trips") {
  Gen g(10);
  for (int t = 0; t < 50; ++t) {
    SkeinElement x = random_element(g, static_cast<int>(g.integer(1, 5)));
    CHECK(skein_from_json(to_json(x)) == x);
    CHECK(skein_from_json(json::parse(to_json(x).dump())) == x);
  }
}

TEST_CASE("rectangular morphisms") {
  const auto caps = Diagram::enumerate(2, 0);
  REQUIRE(caps.size() == 1);
  SkeinElement cap(caps[0]);
  SkeinElement cup = cap.reflected();
  CHECK(cup.bottom() == 0);
  CHECK(cup.top() == 2);
  CHECK(compose(cap, cup) == delta * SkeinElement(Diagram(0, 0, {})));
  CHECK(compose(cup, cap) == E(1, 2));
}
