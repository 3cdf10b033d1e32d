// Exact real-root counting and isolation for univariate polynomials over
// Rational, via Sturm sequences and bisection.  Counts are for the
// half-open interval (lo, hi]; isolating intervals are refined to a caller
// chosen width and each contains exactly one distinct real root.
#pragma once

#include <utility>
#include <vector>

#include "unhinge/poly.hpp"

namespace unhinge {

struct RootIsolation {
    int count = 0;  // distinct real roots in (lo, hi]
    // Disjoint (a, b] windows, ascending, one root each, b - a <= width.
    std::vector<std::pair<Rational, Rational>> intervals;
};

// `p` must involve at most one variable and be nonzero.  Roots are counted
// without multiplicity.  Throws on the zero polynomial or a multivariate
// input; a nonzero constant has no roots.
RootIsolation sturm_roots(const Poly& p, const Rational& lo, const Rational& hi,
                          const Rational& width = Rational(1, 1024));

int sturm_count(const Poly& p, const Rational& lo, const Rational& hi);

}  // namespace unhinge
