#pragma once
#include "dgva/linalg.hpp"

#include <functional>

namespace dgva {

/* ------------------------------------------------------------------ */
/*  quotient presentations                                             */
/* ------------------------------------------------------------------ */

// Presents U / S for a subspace S of the span U.  Carries a chosen basis of
// representatives, a projection (ambient -> quotient coordinates) and a
// section (quotient -> ambient representatives).  project(lift(q)) == q.
struct QuotientPresentation {
    const Space* amb = nullptr;
    Space qspace;              // synthetic basis of the quotient
    std::vector<Element> reps; // ambient lifts, one per quotient basis vector
    Subspace sub;              // what was quotiented out
    Solver solver;             // sub rows first, then reps
    std::vector<int> rep_pos;  // generator positions of the reps in solver

    int dim() const { return qspace.dim(); }

    // Quotient coordinates of v; nullopt when v is outside span(sub, reps).
    std::optional<Element> project(const Element& v) const;

    Element lift(const Element& q) const;
};

// Quotient of the whole ambient space: representatives are the ambient basis
// vectors away from the subspace pivots (deterministic complement choice).
QuotientPresentation quotient_present(const Space& sp, const Subspace& s);

// Quotient of span(gens) + s by s; representatives are the generators that
// enlarge the span, in feed order.  Generators must be bihomogeneous so the
// quotient basis stays bigraded.
QuotientPresentation quotient_present_rel(
    const Space& sp, const std::vector<Element>& gens, const Subspace& s,
    const std::function<std::string(int, const Element&)>& namer = {});

// dim per bidegree of a space, deterministic order.
std::vector<std::pair<Bidegree, int>> dim_table(const Space& sp);

} // namespace dgva
