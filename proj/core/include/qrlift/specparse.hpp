#pragma once

#include <string>
#include <vector>

#include "qrlift/census.hpp"

namespace qrlift {

// Ring specs are written as "Z25", "Z25[x]/(x^2)", "Z9[C2]", "Z9 * Z25",
// with parentheses for grouping and postfix binding tighter than product.
// Whitespace never matters. Errors carry the offending offset.
RingSpec parse_ring_spec(const std::string& text);

// Canonical text for a spec; parse_ring_spec(render_spec(s)) == s.
std::string render_spec(const RingSpec& spec);

// Element literals: integers in any ring, polynomials in x, group terms
// g1, g2, ... (u is a synonym for g1), sums, products, powers, and tuples
// "(e1, e2)" for product rings. Symbols resolve through nested structure.
Element parse_element(const RingHandle& r, const std::string& text);

// "g1, g2; h1; ..." with semicolons between ideals and commas between
// generators of one ideal. The empty string means no links.
std::vector<std::vector<Element>> parse_chain_generators(const RingHandle& r,
                                                         const std::string& text);

// "3^3*5^2" into a factorization; exponents default to 1.
ZnFactorization parse_factorization(const std::string& text);

}  // namespace qrlift
