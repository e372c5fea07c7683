// JSON encodings of exact values.
//
// A Laurent polynomial is a list of [exponent, numerator, denominator]
// triples in ascending exponent order; integers that do not fit in 64 bits
// are written as decimal strings. A rational function is {"num": ..., "den": ...}.
#pragma once

#include <json.hpp>

#include "tlk/laurent.hpp"
#include "tlk/rational_fn.hpp"

namespace tlk {

using json = nlohmann::json;

json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const json& j);

json to_json(const RationalFn& f);
RationalFn rational_fn_from_json(const json& j);

json mpz_to_json(const mpz_class& z);
mpz_class mpz_from_json(const json& j);

}  // namespace tlk
