#pragma once

#include "dgva/model.hpp"
#include "dgva/quotient.hpp"
#include "dgva/report.hpp"
#include "dgva/tables.hpp"

#include <array>
#include <climits>
#include <memory>

namespace dgva {

/* Thrown when a computation needs table entries beyond the stored window. */
struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* ------------------------------------------------------------------ */
/*  the mode -2 quotient                                               */
/* ------------------------------------------------------------------ */

/* Echelon span of { a[-2]b : wt2(a[-2]b) <= max_wt2 } over the model space.
 * The span is bigraded because its generators are bihomogeneous. */
Subspace c2_subspace(const VertexModel& m, int max_wt2);

/* A quotient carrying a graded product, a bracket, and a differential.
 * Space pointers inside the tables target q->qspace, which is heap-held so
 * the struct can be moved safely; the source model must stay alive. */
struct PoissonPresentation {
    std::unique_ptr<QuotientPresentation> q;
    std::unique_ptr<BilinTable> prod;
    std::unique_ptr<BilinTable> brk;  // may be null (product-only presentations)
    std::unique_ptr<LinearMap> d;
    int p = 0;  // declared bracket degree
    CheckReport checks;

    const Space& space() const { return q->qspace; }
};

/* V / span{a[-2]b} with product [u][v] = [u[-1]v], bracket {u, v} = [u[0]v],
 * and the induced differential.  The nine construction congruences are
 * verified on basis pairs/triples and reported in `checks`. */
PoissonPresentation r_algebra(const VertexModel& m);

/* ------------------------------------------------------------------ */
/*  the weighted products                                              */
/* ------------------------------------------------------------------ */

/* star(u, v)   = sum_n C(wt u, n)     u[n-1]v
 * circle(u, v) = sum_n C(wt u, n)     u[n-2]v
 * star_r(u, v) = (-1)^{|u||v|} sum_n C(wt v - 1, n) v[n-1]u
 * extended bilinearly over bihomogeneous components of both arguments;
 * nullopt when a needed mode is outside the window. */
std::optional<Element> star(const VertexModel& m, const Element& u, const Element& v);
std::optional<Element> circle(const VertexModel& m, const Element& u, const Element& v);
std::optional<Element> star_r(const VertexModel& m, const Element& u, const Element& v);

/* Echelon span of { u o v : wt2 of the top term <= cutoff_wt2 } together
 * with the centrality generators (L(-1) + L(0))b.  When rep is given, the
 * even/odd degree-parity split of the span is verified into it. */
Subspace o_span(const VertexModel& m, int cutoff_wt2, CheckReport* rep = nullptr);

/* ------------------------------------------------------------------ */
/*  the truncated associative quotient                                 */
/* ------------------------------------------------------------------ */

/* Presentation of the weight-N truncation of V / span(o-generators up to
 * weight M).  The internal window space is ordered by ascending
 * (wt2, deg, id) so greedily chosen class representatives are weight-minimal;
 * class basis vectors are original basis vectors, hence adapted to both
 * filtrations (verified at build, loud error otherwise). */
struct ZhuPresentation {
    std::unique_ptr<Space> wsp;               // window basis, ascending order
    std::vector<int> to_w;                    // model index -> wsp index
    std::vector<int> from_w;                  // wsp index -> model index
    std::unique_ptr<Subspace> ospan;          // over *wsp
    std::unique_ptr<QuotientPresentation> q;  // full window / ospan
    std::vector<int> aclasses;                // class indices with wt2 <= N2
    std::unique_ptr<BilinTable> star_tab;     // entries for aclass pairs, else unknown
    int N2 = 0;                               // truncation weight, doubled
    int M2 = 0;                               // generator cutoff, doubled
    bool stabilized = false;
    int stab_lo2 = 0, stab_hi2 = 0;           // cutoffs compared for the flag
    std::vector<std::pair<int, int>> wdims;   // (wt2, dim of the classes up to it)
    int unit_class = -1;
    int omega_class = -1;                     // -1 when absent or outside the truncation
    CheckReport checks;

    // model element -> class element (nullopt only on internal failure)
    std::optional<Element> project_model(const Element& v) const;
    // class basis index -> model element lift
    Element lift_model(int cls) const;

    const Space& space() const { return q->qspace; }
};

/* Errors: std::invalid_argument when cutoff < truncation weight,
 * WindowError when the window cannot supply the generators. */
ZhuPresentation zhu_quotient(const VertexModel& m, int N2, int M2);

/* The commutator congruence family and its four filtration containments,
 * verified against the circle span at full stored weight for every
 * bihomogeneous basis pair of the model window. */
CheckReport check_uv_vu(const VertexModel& m);

/* ------------------------------------------------------------------ */
/*  associated graded of the truncated quotient                        */
/* ------------------------------------------------------------------ */

enum class GrVariant { F, W, FW };

std::string gr_variant_name(GrVariant v);

/* Layer tables of the F-, W-, or double-graded algebra of a presentation.
 * Variants F and FW carry the degree -2 bracket (well-definedness verified
 * by recomputing with perturbed lifts); variant W is product-only. */
struct GrPresentation {
    GrVariant variant = GrVariant::F;
    std::unique_ptr<Space> sp;  // same labels as the truncated class basis
    std::unique_ptr<BilinTable> prod;
    std::unique_ptr<BilinTable> brk;  // null for variant W
    std::unique_ptr<LinearMap> d;
    int p = -2;
    CheckReport checks;
};

GrPresentation gr_zhu(const VertexModel& m, const ZhuPresentation& a, GrVariant variant);

/* ------------------------------------------------------------------ */
/*  the comparison morphisms                                           */
/* ------------------------------------------------------------------ */

/* Class-of-u in R maps to the layer component of class-of-u in the graded
 * quotient.  Verified: kills the mode -2 span, surjects onto the truncation,
 * respects the product (all variants), bracket and differential (F, FW),
 * and per-weight ranks are reported for bijectivity accounting. */
struct EtaMorphism {
    GrVariant variant = GrVariant::F;
    MorphismReport morphism;  // matrix: R presentation space -> gr space
    // Per-layer accounting: (deg key, wt2 key, source dim, target dim, rank);
    // a key the variant does not grade by is kLayerAny.
    static constexpr int kLayerAny = INT_MIN;
    std::vector<std::array<int, 5>> layer_ranks;
    bool bijective_on_truncation = false;
};

EtaMorphism eta(const VertexModel& m, const PoissonPresentation& r,
                const ZhuPresentation& a, const GrPresentation& g);

} // namespace dgva
