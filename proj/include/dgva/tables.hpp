#pragma once
#include "dgva/complex.hpp"

#include <map>
#include <optional>
#include <set>

namespace dgva {

/* ------------------------------------------------------------------ */
/*  bilinear tables                                                    */
/* ------------------------------------------------------------------ */

// Bilinear map a x b -> out given on basis pairs.  An absent entry is zero;
// entries may instead be declared unknown (outside the computable window),
// and any evaluation touching an unknown entry refuses rather than guessing.
struct BilinTable {
    const Space* a = nullptr;
    const Space* b = nullptr;
    const Space* out = nullptr;
    Bidegree shift{0, 0};
    std::map<std::pair<int, int>, Element> e;
    std::set<std::pair<int, int>> unk;

    void set(int i, int j, Element v) {
        if (!v.zero()) e[{i, j}] = std::move(v);
        else e.erase({i, j});
    }
    void set_unknown(int i, int j) { unk.insert({i, j}); }
    bool known(int i, int j) const { return !unk.count({i, j}); }
    Element entry(int i, int j) const { // caller must ensure known
        auto it = e.find({i, j});
        return it == e.end() ? Element{} : it->second;
    }
    std::optional<Element> mul(const Element& x, const Element& y) const;
    // first homogeneity violation "(i,j)" against the declared shift, or ""
    std::string shift_violation() const;
};

// Product or bracket on a single space.
inline BilinTable product_table(const Space& sp, Bidegree shift = {0, 0}) {
    return BilinTable{&sp, &sp, &sp, shift, {}, {}};
}
// Action of an algebra space on a module space.
inline BilinTable action_table(const Space& alg, const Space& mod, Bidegree shift = {0, 0}) {
    return BilinTable{&alg, &mod, &mod, shift, {}, {}};
}

/* ------------------------------------------------------------------ */
/*  filtrations                                                        */
/* ------------------------------------------------------------------ */

// Basis-aligned filtration levels: F (by cohomological degree, differential
// raises level by one) or W (by doubled weight, differential preserves it).
// Level k span = basis vectors with level <= k.
struct FiltrationSpec {
    enum Kind { F_deg, W_wt2 } kind = F_deg;
    int level(const Space& sp, int i) const {
        return kind == F_deg ? sp.bd(i).deg : sp.bd(i).wt2;
    }
    // max level over the support; INT_MIN for zero
    int level_of(const Space& sp, const Element& v) const;
    int d_raise() const { return kind == F_deg ? 1 : 0; }
    const char* label() const { return kind == F_deg ? "F" : "W"; }
};

/* ------------------------------------------------------------------ */
/*  axiom checkers                                                     */
/* ------------------------------------------------------------------ */

// Leibniz rule always; associativity / graded commutativity / unit opt-in.
CheckReport check_dg_algebra(const Complex& c, const BilinTable& m,
                             std::optional<int> unit = std::nullopt,
                             bool assoc = true, bool comm = true);

// Degree-p bracket: skew symmetry, Jacobi, differential cocycle rule.
CheckReport check_dg_lie(const Complex& c, const BilinTable& br, int p);

// dg algebra + dg Lie + the bracket-product compatibility.
CheckReport check_dg_poisson(const Complex& c, const BilinTable& m,
                             const BilinTable& br, int p,
                             std::optional<int> unit = std::nullopt);

// Filtered product, filtered differential, Leibniz defect one level below,
// optional commutativity defect one level below the product level.
CheckReport check_diff_filtered_algebra(const Complex& c, FiltrationSpec F,
                                        const BilinTable& m, bool comm_defect);

/* ------------------------------------------------------------------ */
/*  module-side checkers                                               */
/* ------------------------------------------------------------------ */

struct AlgebraPres {
    const Space* sp = nullptr;
    BilinTable prod;
    std::optional<BilinTable> brk;
    LinearMap d;
    std::optional<int> unit;
    int p = 0; // bracket degree
};

struct ModulePres {
    const Space* sp = nullptr;
    BilinTable act;                // algebra x module -> module
    std::optional<BilinTable> brk; // algebra x module -> module
    LinearMap d;
};

// Associativity over the algebra, unit action, differential Leibniz rule.
CheckReport check_dg_module(const AlgebraPres& A, const ModulePres& M);
// Bracket action: Lie-module Jacobi and differential cocycle rule.
CheckReport check_dg_lie_module(const AlgebraPres& A, const ModulePres& M);
// All of the above plus the two mixed Leibniz compatibilities.
CheckReport check_dg_poisson_module(const AlgebraPres& A, const ModulePres& M);

/* ------------------------------------------------------------------ */
/*  double associated graded                                           */
/* ------------------------------------------------------------------ */

struct GradedPres {
    Space sp; // regrouped basis (same ids as the source presentation)
    BilinTable prod;
    LinearMap d;
};

struct DoubleGr {
    GradedPres w_then_f;
    GradedPres f_then_w;
    MorphismReport iso;                                  // canonical identification
    std::vector<std::pair<Bidegree, int>> layer_dims_a;  // via subspace chains
    std::vector<std::pair<Bidegree, int>> layer_dims_b;
};

// Runs both quotient orders, compares per-layer dimensions (computed through
// explicit subspace chains, not by counting basis labels) and structure
// constants under the canonical identification.
DoubleGr double_gr(const Complex& c, const BilinTable& m);

} // namespace dgva
