#pragma once
#include "dgva/bigraded.hpp"

#include <optional>
#include <vector>

namespace dgva {

/* ------------------------------------------------------------------ */
/*  raw echelon over integer columns                                   */
/* ------------------------------------------------------------------ */

// Reduced row echelon form over an abstract column index set.  Pivot is the
// smallest column of each row, pivot coefficient 1, pivot columns eliminated
// from every other row.  Deterministic by construction.
struct RawEchelon {
    std::vector<Element> rows; // sorted by pivot
    std::vector<int> piv;

    int dim() const { return (int)rows.size(); }

    // Remainder of v after eliminating all pivots.
    Element reduce(Element v) const;

    // Like reduce, but records the row multiples used: v = sum(c_j row_j) + rem.
    Element reduce_tracked(Element v, std::vector<Rat>& used) const;

    // Insert v's remainder if nonzero; keeps RREF.  Returns row slot or -1.
    int add(Element v);

    bool contains(const Element& v) const { return reduce(v).zero(); }
};

/* ------------------------------------------------------------------ */
/*  subspaces of a named space                                         */
/* ------------------------------------------------------------------ */

struct Subspace {
    const Space* amb = nullptr;
    RawEchelon ech;

    int dim() const { return ech.dim(); }
    const std::vector<Element>& rows() const { return ech.rows; }
    bool add(const Element& v) { return ech.add(v) >= 0; }
    Element reduce(const Element& v) const { return ech.reduce(v); }
    bool contains(const Element& v) const { return ech.contains(v); }
    int dim_at(Bidegree bd) const; // rows whose support is exactly at bd
};

Subspace row_reduce(const Space& sp, const std::vector<Element>& vectors);

struct Membership {
    bool member = false;
    std::vector<Rat> coords; // against the echelon rows, in row order
    Element residue;         // irreducible part when not a member
};
Membership membership(const Element& v, const Subspace& s);

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace subspace_sum(const Subspace& a, const Subspace& b);

/* ------------------------------------------------------------------ */
/*  incremental solver with coordinate tracking                        */
/* ------------------------------------------------------------------ */

// Expresses vectors as combinations of the generators fed in, in feed order.
// Internally an echelon whose rows carry their generator coordinates.
struct Solver {
    std::vector<Element> rows;   // echelonized vector parts
    std::vector<int> piv;
    std::vector<Element> coords; // generator coordinates of each row
    int n_gens = 0;

    // Returns true if the generator increased the rank.
    bool add_gen(const Element& g);

    // Coordinates of v in the generators, or nullopt if v is outside the span.
    std::optional<Element> express(const Element& v) const;

    int rank() const { return (int)rows.size(); }
};

} // namespace dgva
