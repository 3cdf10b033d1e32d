// Buchberger's algorithm with the product and chain criteria, full
// multivariate division, and reduced-basis normalization.  The reduced basis
// is unique for a given registry and monomial order, so results are
// deterministic regardless of S-pair scheduling.
#pragma once

#include <vector>

#include "unhinge/poly.hpp"

namespace unhinge {

// Remainder of full multivariate division of p by the ordered divisor list.
// Every term of the result is divisible by no leading monomial of `basis`.
// When `basis` is a Groebner basis the remainder is zero iff p lies in the
// ideal.
Poly normal_form(const Poly& p, const std::vector<Poly>& basis);

// The reduced Groebner basis of the ideal generated by `gens`: monic,
// inter-reduced, sorted by ascending leading monomial.  Empty input (or all
// zero generators) yields an empty basis.
std::vector<Poly> groebner_basis(const std::vector<Poly>& gens);

bool in_ideal(const Poly& p, const std::vector<Poly>& gb);

// Direct Buchberger check: every S-polynomial of `basis` reduces to zero.
// Quadratic in the basis size; used by tests as an independent audit of the
// pair-skipping criteria.
bool is_groebner(const std::vector<Poly>& basis);

}  // namespace unhinge
