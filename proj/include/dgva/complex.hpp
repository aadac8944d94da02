#pragma once
#include "dgva/quotient.hpp"
#include "dgva/report.hpp"

#include <climits>

namespace dgva {

// Cochain complex: a bigraded space with a square-zero differential of
// bidegree (+1, 0).
struct Complex {
    const Space* sp = nullptr;
    LinearMap d;
};

// d homogeneous of shift (+1, 0) and d(d(b)) = 0 for every basis vector.
// Basis vectors whose image cannot be verified inside the exact window
// (wt2 > exact_wt2) are counted skipped.
CheckReport check_complex(const Complex& c, int exact_wt2 = INT_MAX);

// ker d / im d with cocycle representatives.  Quotient basis ids are
// "[leading id]".  Requires check_complex to pass.
struct Cohomology {
    QuotientPresentation pres; // reps are cocycles
    Subspace cocycles;
    Subspace coboundaries;
};
Cohomology cohomology(const Complex& c, int exact_wt2 = INT_MAX);

} // namespace dgva
