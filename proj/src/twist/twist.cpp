#include "tlk/twist.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tlk/jm.hpp"
#include "tlk/serialize.hpp"

namespace tlk {

CellElement RecursiveTangle::element() const {
  CellElement x(k, i);
  for (const auto& [s, a] : alpha) x.add(s, s, a);
  return x;
}

bool RecursiveTangle::is_monomial() const {
  return std::all_of(alpha.begin(), alpha.end(), [](const auto& p) { return p.second.is_unit_monomial(); });
}

RecursiveTangle recursive_tangle(const CellElement& diagonal) {
  RecursiveTangle r{diagonal.k(), diagonal.i(), {}};
  for (const auto& [key, c] : diagonal.terms()) {
    if (key.first != key.second) throw std::invalid_argument("recursive_tangle: element is not diagonal");
    r.alpha.emplace(key.first, c);
  }
  return r;
}

RationalFn pair_power(const RecursiveTangle& r, const CellElement& t, int n) {
  if (r.k != t.k() || r.i != t.i()) throw std::invalid_argument("pair_power: shape mismatch");
  if (n < 0) throw std::invalid_argument("pair_power: negative power");
  RationalFn sum(0);
  for (const auto& [key, beta] : t.terms()) {
    if (key.first != key.second) continue;
    RationalFn a(n == 0 ? 1 : 0);
    if (n > 0) {
      auto it = r.alpha.find(key.first);
      if (it != r.alpha.end()) a = it->second.pow(n);
    }
    if (!a.is_zero()) sum += a * beta * RationalFn(delta_closed(weight(key.first)));
  }
  return sum;
}

RecursiveTangle full_twist(int k, int i) {
  if (k < 2) throw std::invalid_argument("full_twist: needs at least two strands");
  return jm_product(std::vector<int>(static_cast<std::size_t>(k - 1), 1), k, i);
}

RecursiveTangle jm_product(const std::vector<int>& powers, int k, int i) {
  if (static_cast<int>(powers.size()) != k - 1) throw std::invalid_argument("jm_product: expected k-1 powers");
  if (std::any_of(powers.begin(), powers.end(), [](int p) { return p < 0; }))
    throw std::invalid_argument("jm_product: negative power");
  RecursiveTangle r{k, i, {}};
  for (const auto& s : all_sequences(k, i)) {
    RationalFn a(1);
    for (int j = 2; j <= k; ++j) a *= jm_eigenvalue(s, j, i).pow(powers[static_cast<std::size_t>(j - 2)]);
    r.alpha.emplace(s, a);
  }
  return r;
}

RationalFn TwistFamily::evaluate(int m) const {
  RationalFn sum(0);
  for (const auto& t : terms) {
    const long sign = (t.sign < 0 && m % 2 != 0) ? -1 : 1;
    sum += RationalFn::monomial(sign, t.exponent * m) * t.q;
  }
  return sum;
}

ZPoly TwistFamily::common_denominator() const {
  ZPoly l(1);
  for (const auto& t : terms) {
    const ZPoly g = ZPoly::gcd(l, t.q.den());
    l = ZPoly::divexact(l * t.q.den(), g);
  }
  return l.normalized_unit();
}

TwistFamily twist_family(const RecursiveTangle& r, const CellElement& t, int base_writhe, int writhe_per_twist) {
  if (r.k != t.k() || r.i != t.i()) throw std::invalid_argument("twist_family: shape mismatch");
  std::map<std::pair<std::int64_t, int>, RationalFn> groups;
  for (const auto& [key, beta] : t.terms()) {
    if (key.first != key.second) continue;
    auto it = r.alpha.find(key.first);
    if (it == r.alpha.end() || !it->second.is_unit_monomial())
      throw std::invalid_argument("twist_family: recursive tangle has a non-monomial coefficient");
    const int sign = it->second.num().lowest_coeff() > 0 ? 1 : -1;
    const RationalFn q = beta * RationalFn(delta_closed(weight(key.first)));
    auto [slot, inserted] = groups.emplace(std::make_pair(it->second.monomial_exponent(), sign), q);
    if (!inserted) slot->second += q;
  }
  TwistFamily fam{r.k, r.i, {}, base_writhe, writhe_per_twist};
  for (auto& [key, q] : groups)
    if (!q.is_zero()) fam.terms.push_back({key.second, key.first, std::move(q)});
  return fam;
}

TwistFamily tangle_twist_family(const SkeinElement& t, int k, int i, int base_writhe, int writhe_per_twist) {
  // ⟨R^m, T'⟩ closes R^m ∘ reflect(T'), so pair against the reflection.
  const CellElement tc = from_skein(t.reflected(), k, i);
  const RecursiveTangle r = k >= 2 ? full_twist(k, i) : jm_product({}, k, i);
  return twist_family(r, tc, base_writhe, writhe_per_twist);
}

TwistFamily braid_twist_family(const BraidWord& word, int i, std::optional<int> base_writhe,
                               std::optional<int> writhe_per_twist) {
  const int k = word.strands;
  if (i < 1) throw std::invalid_argument("braid_twist_family: color must be positive");
  const SkeinElement closed = color_embed(braid_to_skein(cable(word, i)), k, i);
  return tangle_twist_family(closed, k, i, base_writhe.value_or(word.writhe()), writhe_per_twist.value_or(k * (k - 1)));
}

LaurentPoly colored_jones_twist(const TwistFamily& fam, int m, UnknotNormalization norm) {
  if (m < 0) throw std::invalid_argument("colored_jones_twist: negative twist count");
  const std::int64_t framing = -static_cast<std::int64_t>(fam.i * fam.i + 2 * fam.i) * fam.writhe(m);
  RationalFn r = RationalFn::monomial(1, framing) * fam.evaluate(m);
  if (norm == UnknotNormalization::One) r /= RationalFn(delta_closed(fam.i));
  if (!r.is_laurent() || !r.den().is_constant() || r.den().lowest_coeff() != 1)
    throw std::domain_error("colored_jones_twist: denominator " + r.to_string() +
                            " does not clear; check the writhe data and the pairing");
  return r.to_laurent();
}

LaurentPoly colored_jones_twist(const BraidWord& word, int i, int m, UnknotNormalization norm) {
  return colored_jones_twist(braid_twist_family(word, i), m, norm);
}

nlohmann::json to_json(const TwistFamily& fam) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : fam.terms) terms.push_back({{"sign", t.sign}, {"exponent", t.exponent}, {"q", to_json(t.q)}});
  return {{"k", fam.k},
          {"i", fam.i},
          {"base_writhe", fam.base_writhe},
          {"writhe_per_twist", fam.writhe_per_twist},
          {"terms", terms}};
}

TwistFamily twist_family_from_json(const nlohmann::json& j) {
  TwistFamily fam{j.at("k").get<int>(), j.at("i").get<int>(), {}, j.at("base_writhe").get<int>(),
                  j.at("writhe_per_twist").get<int>()};
  for (const auto& t : j.at("terms")) {
    const int sign = t.at("sign").get<int>();
    if (sign != 1 && sign != -1) throw std::invalid_argument("twist family: sign must be 1 or -1");
    RationalFn q = rational_fn_from_json(t.at("q"));
    if (q.is_zero()) throw std::invalid_argument("twist family: zero term");
    fam.terms.push_back({sign, t.at("exponent").get<std::int64_t>(), std::move(q)});
  }
  return fam;
}

}  // namespace tlk
