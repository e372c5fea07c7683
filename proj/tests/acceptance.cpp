// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "gen.hpp"
#include "tlk/cell.hpp"
#include "tlk/jm.hpp"
#include "tlk/mahler.hpp"
#include "tlk/recoupling.hpp"
#include "tlk/twist.hpp"

using namespace tlk;
using tlk::testing::Gen;

namespace {

constexpr double kGoldenRatio = 1.6180339887;
constexpr double kGoldenTolerance = 1e-9;
constexpr double kJensenQuadratureTolerance = 1e-4;
constexpr int kJensenCorpusMaxDegree = 10;
constexpr std::int64_t kLawtonDegree = 100;
constexpr double kLawtonTailTolerance = 1e-2;
constexpr int kTwistFirst = 180;
constexpr int kTwistLast = 200;
constexpr double kTwistStepTolerance = 1e-3;
constexpr double kTwistLimitTolerance = 1e-2;
constexpr int kPairPowerCases = 100;
constexpr int kPairPowerMaxN = 5;
constexpr int kOraclePowerMaxN = 3;
constexpr int kBraidMaxCrossings = 8;
constexpr int kBraidMaxStrands = 3;

const std::vector<std::pair<int, int>> kJmShapes = {{2, 1}, {3, 1}, {4, 1}, {2, 2}, {3, 2}, {2, 3}};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

std::string shape(int k, int i) { return "(" + std::to_string(k) + "," + std::to_string(i) + ")"; }

void norm_lemma(Outcome& o) {
  std::size_t pairs = 0;
  for (auto [n, i] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {2, 3}, {3, 2}}) {
    const auto seqs = d_index_sequences(n, i);
    std::vector<SkeinElement> ds;
    for (const auto& a : seqs) ds.push_back(build_D(a, i));
    for (std::size_t p = 0; p < seqs.size(); ++p)
      for (std::size_t q = 0; q < seqs.size(); ++q) {
        const RationalFn expect = p == q ? d_norm_closed(seqs[p], i) : RationalFn(0);
        o.require(inner_product(ds[p], ds[q]) == expect, shape(n, i) + " pair " + std::to_string(p) + "," +
                                                             std::to_string(q));
        ++pairs;
      }
  }
  o.detail << pairs << " pairs";
}

void cellularity(Outcome& o) {
  for (int k = 1; k <= 10; ++k) {
    std::size_t card = 0;
    for (int w : weights(k, 1)) card += sequences(k, 1, w).size() * sequences(k, 1, w).size();
    o.require(card == Diagram::enumerate(k, k).size(), "Catalan count at k=" + std::to_string(k));
  }
  std::size_t checks = 0;
  for (auto [k, i] : kJmShapes) {
    const auto rs = verify_cell_datum(k, i);
    for (const char* needed : {"basis-cardinality", "right-multiplication", "anti-involution", "oracle-dimension",
                               "oracle-product"}) {
      const bool present =
          std::any_of(rs.begin(), rs.end(), [&](const CheckResult& r) { return r.name == needed; });
      o.require(present, shape(k, i) + " missing " + needed);
    }
    for (const auto& r : rs) {
      o.require(r.pass, shape(k, i) + " " + r.name + " " + r.detail);
      ++checks;
    }
  }
  o.detail << "Catalan k<=10, " << checks << " cell checks";
}

void jm_suite(Outcome& o) {
  std::size_t ft = 0;
  for (auto [k, i] : kJmShapes) {
    for (const auto& r : jm_checks(k, i)) o.require(r.pass, shape(k, i) + " " + r.name);
    for (const auto& t : all_sequences(k, i)) {
      o.require(ft_interpolation(t, k, i) == CellElement::basis(k, i, t, t), shape(k, i) + " F_t");
      ++ft;
    }
  }
  o.detail << kJmShapes.size() << " shapes, " << ft << " idempotents";
}

void convention_lock(Outcome& o) {
  for (auto [k, i] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
    CellElement prod = CellElement::identity(k, i);
    for (int j = 2; j <= k; ++j) prod = cell_mul(prod, jm_element(j, k, i));
    BraidWord twist{k, {}};
    for (int r = 0; r < k; ++r)
      for (int j = 1; j < k; ++j) twist.letters.push_back(j);
    o.require(to_skein(prod) == color_embed(braid_to_skein(cable(twist, i)), k, i), shape(k, i));
  }
  o.detail << "(2,1) (3,1) (2,2)";
}

CellElement random_cell(Gen& g, int k, int i) {
  const auto all = all_sequences(k, i);
  auto pick = [&](const std::vector<Sequence>& v) { return v[static_cast<std::size_t>(g.integer(0, static_cast<long>(v.size()) - 1))]; };
  CellElement x(k, i);
  for (long t = g.integer(1, 4); t > 0; --t) {
    const Sequence s = pick(all);
    x.add(s, g.coin() ? s : pick(sequences(k, i, weight(s))), g.nonzero_rational_fn(2, 2));
  }
  return x;
}

RecursiveTangle random_tangle(Gen& g, int k, int i) {
  RecursiveTangle r{k, i, {}};
  for (const auto& s : all_sequences(k, i))
    if (g.integer(0, 3) != 0) r.alpha.emplace(s, g.nonzero_rational_fn(2, 2));
  return r;
}

void recursive_form(Outcome& o) {
  Gen g(20240613);
  std::size_t exact = 0, oracle = 0;
  for (auto [k, i] : kJmShapes)
    for (int c = 0; c < kPairPowerCases; ++c) {
      const RecursiveTangle r = random_tangle(g, k, i);
      const CellElement t = random_cell(g, k, i);
      const CellElement re = r.element();
      CellElement rn = CellElement::identity(k, i);
      for (int n = 0; n <= kPairPowerMaxN; ++n) {
        o.require(pair_power(r, t, n) == cell_inner(rn, t), shape(k, i) + " n=" + std::to_string(n));
        rn = cell_mul(rn, re);
      }
      ++exact;
    }
  for (auto [k, i] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}})
    for (int c = 0; c < 4; ++c) {
      const RecursiveTangle r = random_tangle(g, k, i);
      const CellElement t = random_cell(g, k, i);
      const SkeinElement rs = to_skein(r.element());
      const SkeinElement ts = to_skein(t);
      SkeinElement rn = color_embed(SkeinElement::identity(k * i), k, i);
      for (int n = 0; n <= kOraclePowerMaxN; ++n) {
        o.require(inner_product(rn, ts) == pair_power(r, t, n), shape(k, i) + " diagram n=" + std::to_string(n));
        rn = compose(rn, rs);
      }
      ++oracle;
    }
  o.detail << exact << " algebraic cases, " << oracle << " diagram cases";
}

// Every word of length <= 4 on 2 and 3 strands, every positive and mixed
// word of length <= 8 on 2 strands, and a seeded sample of longer 3-strand words.
std::vector<BraidWord> braid_corpus() {
  std::vector<BraidWord> out;
  std::function<void(BraidWord&, int)> all_words = [&](BraidWord& w, int len) {
    out.push_back(w);
    if (static_cast<int>(w.letters.size()) == len) return;
    for (int j = 1; j < w.strands; ++j)
      for (int s : {1, -1}) {
        w.letters.push_back(s * j);
        all_words(w, len);
        w.letters.pop_back();
      }
  };
  BraidWord one{1, {}};
  out.push_back(one);
  BraidWord two{2, {}};
  all_words(two, kBraidMaxCrossings);
  BraidWord three{3, {}};
  all_words(three, 4);
  Gen g(1729);
  for (int len = 5; len <= kBraidMaxCrossings; ++len)
    for (int rep = 0; rep < 40; ++rep) {
      BraidWord w{kBraidMaxStrands, {}};
      for (int c = 0; c < len; ++c) {
        const int j = static_cast<int>(g.integer(1, 2));
        w.letters.push_back(g.coin() ? j : -j);
      }
      out.push_back(w);
    }
  return out;
}

void jones_sanity(Outcome& o) {
  const auto corpus = braid_corpus();
  for (const auto& w : corpus) {
    const RationalFn framing = RationalFn::monomial(1, -3 * static_cast<std::int64_t>(w.writhe()));
    std::string word;
    for (int l : w.letters) word += std::to_string(l) + " ";
    o.require(RationalFn(colored_jones_twist(w, 1, 0)) == framing * state_sum_bracket(w), word);
  }
  o.detail << corpus.size() << " braid words";
}

LaurentPoly from_coeffs(const std::vector<long>& c) {
  std::vector<LaurentPoly::Term> t;
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != 0) t.push_back({static_cast<std::int64_t>(j), mpq_class(c[j])});
  return LaurentPoly::from_terms(t);
}

BivariatePoly biv(const std::vector<std::tuple<std::int64_t, std::int64_t, long>>& terms) {
  BivariatePoly f;
  for (auto [a, b, c] : terms) f.add(a, b, c);
  return f;
}

void mahler_numerics(Outcome& o) {
  const double phi = mahler_1var(from_coeffs({-1, -1, 1})).value;
  o.require(std::abs(phi - kGoldenRatio) <= kGoldenTolerance, "golden ratio " + format_double(phi));

  std::vector<LaurentPoly> corpus = {from_coeffs({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1}),
                                     from_coeffs({-1, -1, 1}),
                                     from_coeffs({1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1}),
                                     from_coeffs({1, -2, 1}),
                                     from_coeffs({2, 0, 0, 0, 0, 3, 0, 0, 0, 0, 5})};
  Gen g(4242);
  for (int c = 0; c < 40; ++c) {
    std::vector<long> co(static_cast<std::size_t>(g.integer(1, kJensenCorpusMaxDegree)) + 1);
    for (auto& x : co) x = g.integer(-6, 6);
    if (co.front() == 0) co.front() = 1;
    if (co.back() == 0) co.back() = -1;
    corpus.push_back(from_coeffs(co));
  }
  double worst = 0;
  for (const auto& f : corpus) {
    const double d = std::abs(mahler_1var(f).value - mahler_1var_quadrature(f).value);
    worst = std::max(worst, d);
    o.require(d <= kJensenQuadratureTolerance, "Jensen vs quadrature on " + f.to_string());
  }

  const std::vector<BivariatePoly> lawton = {
      biv({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}}),
      biv({{0, 0, 3}, {1, 0, 1}, {-1, 0, 1}, {0, 1, 1}, {0, -1, 1}}),
      biv({{0, 0, 1}, {1, 0, 1}, {2, 0, 1}, {0, 1, 1}}),
      biv({{0, 0, 2}, {1, 0, 1}, {0, 1, -1}, {1, 2, 1}}),
      biv({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}),
  };
  double lawton_worst = 0;
  for (const auto& f : lawton) {
    const LawtonReport r = lawton_sequence(f, kLawtonDegree);
    lawton_worst = std::max(lawton_worst, r.tail_deviation);
    o.require(r.tail_deviation < kLawtonTailTolerance, "Lawton tail for " + f.to_string());
  }

  o.detail << "M(A^2-A-1)=" << format_double(phi) << ", Jensen/quadrature max " << format_double(worst) << " on "
           << corpus.size() << ", Lawton tail max " << format_double(lawton_worst);
  for (int i : {1, 2}) {
    const TwistFamily fam = braid_twist_family(BraidWord{2, {1}}, i);
    const TwistConvergence c = twist_convergence_range(fam, kTwistFirst, kTwistLast + 1);
    double step = 0, at_last = NAN;
    for (const auto& row : c.rows) {
      if (!std::isnan(row.delta_prev)) step = std::max(step, std::abs(row.delta_prev));
      if (row.m == kTwistLast) at_last = std::abs(row.value - c.limit);
    }
    o.require(step < kTwistStepTolerance, "twist steps for i=" + std::to_string(i));
    o.require(at_last < kTwistLimitTolerance, "twist limit for i=" + std::to_string(i));
    o.detail << ", i=" << i << " max step " << format_double(step) << " |M(J_200)-M(P)| " << format_double(at_last);
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"norm lemma on the D basis", norm_lemma},
      {"cellularity", cellularity},
      {"JM suite", jm_suite},
      {"full twist convention lock", convention_lock},
      {"recursive pairing formula", recursive_form},
      {"Jones sanity against the state sum", jones_sanity},
      {"Mahler numerics", mahler_numerics},
  };
  int failed = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[n].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %s: %s (%s) [%.1fs]\n", n + 1, criteria[n].first, o.pass ? "PASS" : "FAIL",
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
