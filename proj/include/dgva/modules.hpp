#pragma once

#include "dgva/cohomology_vertex.hpp"
#include "dgva/zhu.hpp"

namespace dgva {

/* ------------------------------------------------------------------ */
/*  module construction and classification                             */
/* ------------------------------------------------------------------ */

// The model acting on itself: action table = mode table, grading = weights.
ModuleModel adjoint_module(const VertexModel& m);

/* Window-relative predicates on a module, with evidence strings.
 * weak        every module within its window,
 * graded      the declared grading satisfies the action shift law,
 * ordinary    the weight operator acts diagonalizably with rational spectrum,
 * logarithmic generalized eigenspaces of the weight operator exhaust,
 * admissible  a shifted regrading exists (built from the logarithmic data).
 * ordinary implies logarithmic implies admissible; enforced on the flags. */
struct ModuleClassification {
    bool weak = false, graded = false, admissible = false;
    bool ordinary = false, logarithmic = false;
    bool spectrum_resolved = true;  // false if eigenvalues did not split over Q
    // eigenvalue -> (algebraic multiplicity, geometric multiplicity)
    std::vector<std::pair<Rat, std::pair<int, int>>> spectrum;
    std::vector<std::pair<std::string, std::string>> evidence;
    CheckReport checks;
};

// Uses L(0) when the model carries a conformal structure, the declared
// grading (default: the weight) otherwise.
ModuleClassification classify_module(const VertexModel& m, const ModuleModel& mod);

/* ------------------------------------------------------------------ */
/*  the mode -2 module quotient                                        */
/* ------------------------------------------------------------------ */

/* M / span{v[-2]m} as a module over the mode -2 algebra quotient, with
 * action [v][m] = [v[-1]m] and bracket {[v], [m]} = [v[0]m].  The module
 * axiom families are verified and reported in `checks`. */
struct RModulePresentation {
    PoissonPresentation alg;  // the algebra-side quotient, owned here
    std::unique_ptr<QuotientPresentation> q;
    std::unique_ptr<BilinTable> act;  // alg class x module class -> module class
    std::unique_ptr<BilinTable> brk;
    std::unique_ptr<LinearMap> d;
    CheckReport checks;

    const Space& space() const { return q->qspace; }
};

RModulePresentation r_module(const VertexModel& m, const ModuleModel& mod);

/* ------------------------------------------------------------------ */
/*  the weighted module products                                       */
/* ------------------------------------------------------------------ */

/* star_l(u, m)   = sum_n C(wt u, n)     u[n-1]m
 * star_r_m(m, u) = (-1)^{|u||m|} sum_n C(wt u - 1, n) u[n-1]m
 * circle_m(u, m) = sum_n C(wt u, n)     u[n-2]m
 * extended bilinearly; nullopt when a needed entry is outside the window. */
std::optional<Element> star_l(const VertexModel& m, const ModuleModel& mod,
                              const Element& u, const Element& x);
std::optional<Element> star_r_m(const VertexModel& m, const ModuleModel& mod,
                                const Element& x, const Element& u);
std::optional<Element> circle_m(const VertexModel& m, const ModuleModel& mod,
                                const Element& u, const Element& x);

/* ------------------------------------------------------------------ */
/*  the truncated bimodule quotient                                    */
/* ------------------------------------------------------------------ */

/* Weight-N truncation of M / span{u o m : wt(u) + wt(m) + 1 <= M}, carrying
 * the left and right weighted actions of the algebra-side quotient (built
 * internally at the same truncation).  The seven bimodule relations and the
 * residue-vanishing memberships are verified on basis tuples. */
struct BimodulePresentation {
    ZhuPresentation alg;
    std::unique_ptr<Space> wsp;  // module window basis, ascending (wt2, deg, id)
    std::vector<int> to_w, from_w;
    std::unique_ptr<Subspace> ospan;  // over *wsp
    std::unique_ptr<QuotientPresentation> q;
    std::vector<int> aclasses;
    std::unique_ptr<BilinTable> l_tab;  // alg class x module class -> module class
    std::unique_ptr<BilinTable> r_tab;  // module class x alg class -> module class
    int N2 = 0, M2 = 0;
    std::vector<std::pair<int, int>> wdims;
    CheckReport checks;

    std::optional<Element> project_model(const Element& v) const;
    Element lift_model(int cls) const;
    const Space& space() const { return q->qspace; }
};

BimodulePresentation a_module(const VertexModel& m, const ModuleModel& mod, int N2, int M2);

/* ------------------------------------------------------------------ */
/*  associated graded of the bimodule                                  */
/* ------------------------------------------------------------------ */

/* Layer tables of the graded bimodule; variants F and FW carry the degree -2
 * bracket {x, w} = [u[0]m] and are certified as graded Poisson modules over
 * the graded algebra quotient (built internally); variant W is action-only
 * with the left/right defect containment. */
struct GrModulePresentation {
    GrVariant variant = GrVariant::F;
    GrPresentation alg;
    std::unique_ptr<Space> sp;
    std::unique_ptr<BilinTable> l_tab, r_tab;
    std::unique_ptr<BilinTable> brk;  // null for variant W
    std::unique_ptr<LinearMap> d;
    CheckReport checks;
};

GrModulePresentation gr_a_module(const VertexModel& m, const ModuleModel& mod,
                                 const BimodulePresentation& bm, GrVariant variant);

/* ------------------------------------------------------------------ */
/*  the comparison transformations                                     */
/* ------------------------------------------------------------------ */

enum class NatVariant { psi, phi, Psi };

std::string nat_variant_name(NatVariant v);

/* Class map from the mode -2 module quotient, reduced by the products of the
 * eta-kernel generators, onto the graded bimodule layers.  Verified:
 * well-definedness, surjectivity, structure preservation for the variant,
 * per-layer ranks; `graded` holds the weight-layer (psi) or degree-layer
 * (phi) associated graded of the map. */
struct NatResult {
    NatVariant variant = NatVariant::psi;
    EtaMorphism alg_eta;  // algebra-side comparison into gm.alg; inputs must outlive
    std::unique_ptr<QuotientPresentation> src;
    MorphismReport morphism;
    MorphismReport graded;
    std::vector<std::array<int, 5>> layer_ranks;
    bool bijective_on_truncation = false;
};

NatResult nat_transform(const VertexModel& m, const ModuleModel& mod,
                        const RModulePresentation& rm, const BimodulePresentation& bm,
                        const GrModulePresentation& gm, NatVariant variant);

/* ------------------------------------------------------------------ */
/*  cohomology module                                                  */
/* ------------------------------------------------------------------ */

/* The induced module of cohomology classes over the cohomology model.
 * Checks: induced action well-defined, representative independence, and
 * classification flags preserved. */
struct HModule {
    ModuleModel mod;
    QuotientPresentation pres;
    CheckReport checks;
};

HModule h_module(const VertexModel& m, const CohomologyVertex& hv, const ModuleModel& mod);

} // namespace dgva
