// Text -> Poly parser.  Grammar: sums/differences of products of powers,
// with parenthesised subexpressions, integer and a/b rational literals,
// and variable names resolved against a registry.
#pragma once

#include <stdexcept>
#include <string>

#include "unhinge/poly.hpp"

namespace unhinge {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Parses `text` into a polynomial over `reg` with monomial order `order`.
// Accepts the same syntax Poly::str() emits, plus redundant whitespace,
// parentheses and explicit products of literals.  Throws ParseError on
// malformed input, unknown variables and negative exponents.
Poly parse_poly(const std::string& text, const RegistryPtr& reg,
                MonOrder order = MonOrder::degrevlex);

}  // namespace unhinge
