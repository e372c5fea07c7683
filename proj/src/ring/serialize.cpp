#include "tlk/serialize.hpp"

#include <stdexcept>

namespace tlk {

json mpz_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

mpz_class mpz_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("bad integer: " + j.dump());
    return z;
  }
  throw std::invalid_argument("expected integer, got " + j.dump());
}

json to_json(const LaurentPoly& p) {
  json out = json::array();
  for (const auto& t : p.terms())
    out.push_back(json::array({t.exponent, mpz_to_json(t.coeff.get_num()), mpz_to_json(t.coeff.get_den())}));
  return out;
}

LaurentPoly laurent_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("Laurent polynomial must be a list of triples");
  std::vector<LaurentPoly::Term> terms;
  std::int64_t prev = 0;
  bool first = true;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer())
      throw std::invalid_argument("bad term " + t.dump());
    const auto e = t[0].get<std::int64_t>();
    if (!first && e <= prev) throw std::invalid_argument("terms must have strictly ascending exponents");
    first = false;
    prev = e;
    mpq_class c(mpz_from_json(t[1]), mpz_from_json(t[2]));
    if (c.get_den() == 0) throw std::invalid_argument("zero denominator in " + t.dump());
    c.canonicalize();
    if (c == 0) throw std::invalid_argument("zero coefficient in " + t.dump());
    terms.push_back({e, c});
  }
  return LaurentPoly::from_terms(terms);
}

json to_json(const RationalFn& f) {
  return json{{"num", to_json(f.numerator())}, {"den", to_json(f.denominator())}};
}

RationalFn rational_fn_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw std::invalid_argument("rational function must be {num, den}");
  return RationalFn(laurent_from_json(j.at("num")), laurent_from_json(j.at("den")));
}

}  // namespace tlk
