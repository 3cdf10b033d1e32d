// hinge.hpp -- symbolic second-derivative systems for a single varying
// mutual distance.
//
// For n bodies with every mutual distance constant except one, the second
// derivatives of the constant-pair g coordinates must vanish.  Each such
// derivative is a linear form in the rotational coordinates rho_ij and the
// varying pair's g, with coefficients that are exact rational functions of
// the distances and masses.  This module builds those linear systems, the
// three-body determinant constraint, and the four-body elimination whose
// coefficients feed the Groebner case analysis.
#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "unhinge/positivity.hpp"
#include "unhinge/ratfunc.hpp"

namespace unhinge {

// Symbolic setup.  n = 3 works in the distances themselves (r12, r13, and
// the varying x = r23).  n = 4 works in reciprocal distances k_ij = 1/r_ij
// and x = 1/r34, normalized so that k12 = 1 and m4 = 1; this keeps the
// interaction matrix polynomial.
struct HingeProblem {
    int n = 0;
    int free_i = 0, free_j = 0;                 // the varying pair (0-based)
    std::vector<std::pair<int, int>> fixed;     // constant pairs, ascending
    RegistryPtr reg;                            // full parameter registry
    RegistryPtr reg_params;                     // registry without x (n = 4)
    CatalogPtr catalog;                         // nonzero denominator atoms
    std::vector<std::string> unknowns;          // rho labels, then the free g
};

HingeProblem make_hinge_problem(int n);

// One row per constant pair: the second derivative of that pair's g
// coordinate as a linear form in the unknowns.  row_scale records the
// overall factor applied to the raw bracket (1 for n = 3, 1/2 for n = 4,
// matching the conventional presentation of each system).
struct LinearSystem {
    std::vector<std::string> row_labels;
    std::vector<std::vector<RatFunc>> rows;     // one column per unknown
    Rational row_scale;
};

LinearSystem gddot_system(const HingeProblem& hp);

// n = 3: both rows are multiplied by x^5 * r12^3 * r13^3, which clears every
// reciprocal, and the 2x2 determinant of the cleared system is returned in
// canonical form together with its positive-factor-stripped core.
struct ThreeBodyReport {
    Poly clear_multiplier;
    std::vector<std::vector<Poly>> cleared;     // 2x2 polynomial matrix
    Poly det;
    Poly det_stripped;
};

ThreeBodyReport three_body_determinant(const HingeProblem& hp,
                                       const LinearSystem& sys);

// n = 4: with g34 = 1, solve the two rows whose pivots are m3(x^3 - k13^3)
// and m3(x^3 - k23^3) for rho13 and rho23 (valid when x differs from k13 and
// k23), substitute into the remaining three rows to get a_i * rho12 = b_i,
// clear each equation's denominators, and form the cross determinants
// f_i = a_j b_k - a_k b_j for cyclic (i, j, k).  Nonzero catalog factors are
// stripped from each f_i.  The x coefficients of the stripped f_i, mapped to
// the x-free parameter registry, are returned along with the six-element
// generator subset used by the case analysis.
struct FourBodyElimination {
    std::array<RatFunc, 3> a, b;                // a_i * rho12 = b_i
    std::array<Poly, 3> a_cleared, b_cleared;
    std::array<Poly, 3> clear_multiplier;       // per-equation denominator
    std::array<Poly, 3> f_raw;                  // before stripping
    std::array<Poly, 3> f;                      // stripped, canonical
    std::vector<int> support;                   // union of x supports
    std::vector<std::vector<Poly>> coeff;       // coeff[i][j]: x^support[j] in f_i
    std::vector<Poly> subset;                   // {p1_0, p1_9, p2_0, p2_6, p3_6, p3_9}
};

FourBodyElimination four_body_eliminate(const HingeProblem& hp,
                                        const LinearSystem& sys);

// All reciprocal distances set to 1: the second and third rows of the system
// with g34 = 1 both determine rho13 * (x^3 - 1) and force x^3 = 4.  Returns
// the two sides of the equated constraint and the witness polynomial x^3 - 4
// over a one-variable registry.
struct AllKOneReport {
    RatFunc side2, side3;                       // rho13*(x^3-1) = side
    Poly witness;                               // x^3 - 4
};

AllKOneReport special_case_all_k_one(const HingeProblem& hp,
                                     const LinearSystem& sys);

// The five 4x4 minors of the cleared n = 4 system matrix (omit one row each).
// Used to confirm they all vanish identically when every k_ij = 1.
std::vector<Poly> four_body_minors(const HingeProblem& hp,
                                   const LinearSystem& sys);

// Scales one row of rational functions onto its common denominator; returns
// the cleared polynomial entries and stores the common multiplier.
std::vector<Poly> clear_row(const std::vector<RatFunc>& entries,
                            const RegistryPtr& reg, Poly* multiplier);

}  // namespace unhinge
