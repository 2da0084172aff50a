#pragma once

// TOML algebra definitions:
//
//     [algebra]
//     name = "virasoro"
//     basis = ["L"]
//
//     [[product]]
//     left = "L"
//     right = "L"
//     n = 0
//     result = [{ basis = "L", coeff = "D" }]
//
// Locality per pair is the largest n plus one unless a [[locality]] entry
// (left, right, bound) overrides it. Products below the bound that are not
// listed are zero.

#include <string>
#include <string_view>

#include "confalg/conformal.hpp"

namespace confalg {

/// Parses and resolves symbols; does not validate the table (FiniteConformalAlgebra does).
/// Throws DefinitionError with the source name and line on malformed input.
ConformalAlgebraDef parse_algebra_toml(std::string_view text, const std::string& source = "<string>");

ConformalAlgebraDef load_algebra_file(const std::string& path);

/// Every table entry, plus [[locality]] entries where the stored bound is not the inferred one.
std::string to_toml(const ConformalAlgebraDef& def);

} // namespace confalg
