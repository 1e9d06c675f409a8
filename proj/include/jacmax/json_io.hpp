#pragma once

// Shared JSON encoding of integers and polynomials.
//
// A polynomial is {"var": "x", "coeffs": ["c0", "c1", ...]} with ascending
// coefficients written as decimal strings (plain JSON integers are accepted
// on input).

#include "jacmax/bigint_poly.hpp"

#include "json.hpp"

#include <string>

namespace jacmax {

using Json = nlohmann::ordered_json;

Json bigint_to_json(const BigInt& n);
// Decimal string or JSON integer; FormatError otherwise.
BigInt bigint_from_json(const Json& j, const std::string& where = "integer");

Json poly_to_json(const IntPoly& f, const std::string& var = "x");
IntPoly poly_from_json(const Json& j, const std::string& where = "poly");

// Parses text, turning nlohmann parse errors into FormatError with the byte
// position.
Json parse_json(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);

} // namespace jacmax
