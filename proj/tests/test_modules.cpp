#include <doctest.h>

#include "dgva/builders.hpp"
#include "dgva/modules.hpp"
#include "dgva/vertex_checks.hpp"

using namespace dgva;

namespace {

bool family_ok(const CheckReport& r, const std::string& name) {
    for (auto& l : r.lines)
        if (l.family == name) return l.checked > 0 && l.passed == l.checked;
    return false;
}

/* Two states of weight 1/2 over the rank one boson window, with the zero
 * mode acting by a Jordan block: the smallest module whose weight operator
 * is not semisimple. */
ModuleModel jordan_module(const VertexModel& heis) {
    ModuleModel w;
    w.name = "jordan";
    w.alg = &heis;
    w.sp.name = "jordan";
    w.sp.add("w0", {0, 1});
    w.sp.add("w1", {0, 1});
    w.dcols.resize(2);
    w.grade[0] = Rat(1) / 2;
    w.grade[1] = Rat(1) / 2;
    w.wt2_max = 1;
    w.mode_lo = heis.mode_lo;
    w.mode_hi = heis.mode_hi;

    int vac = heis.sp.find("vac"), p1 = heis.sp.find("p1");
    int omega = heis.sp.find("omega"), p2 = heis.sp.find("p2");
    Element w0 = unit_elem(0), w1 = unit_elem(1);
    w.act[{vac, -1, 0}] = w0;
    w.act[{vac, -1, 1}] = w1;
    // a(0) = 1 + nilpotent
    w.act[{p1, 0, 0}] = w0 + w1;
    w.act[{p1, 0, 1}] = w1;
    // L(0) = a(0)^2 / 2
    w.act[{omega, 1, 0}] = Rat(1, 2) * w0 + w1;
    w.act[{omega, 1, 1}] = Rat(1, 2) * w1;
    // (Da)(1) = -a(0)
    w.act[{p2, 1, 0}] = Rat(-1) * (w0 + w1);
    w.act[{p2, 1, 1}] = Rat(-1) * w1;
    w.set_wt2_min();
    return w;
}

} // namespace

TEST_SUITE("modules") {

TEST_CASE("adjoint modules classify as ordinary") {
    for (VertexModel m : {build_dual(), build_nilpotent_dg(), build_heisenberg(4)}) {
        ModuleModel adj = adjoint_module(m);
        ModuleClassification c = classify_module(m, adj);
        INFO(m.name);
        CHECK(c.checks.pass());
        CHECK(c.weak);
        CHECK(c.graded);
        CHECK(c.admissible);
        CHECK(c.logarithmic);
        CHECK(c.ordinary);
        CHECK(c.spectrum_resolved);
        // every eigenvalue diagonalizes: algebraic = geometric multiplicity
        for (auto& [ev, mult] : c.spectrum) CHECK(mult.first == mult.second);
    }
}

TEST_CASE("a jordan block weight action is logarithmic but not ordinary") {
    VertexModel heis = build_heisenberg(2);
    ModuleModel w = jordan_module(heis);
    CHECK(check_module_axioms(heis, w).pass());

    ModuleClassification c = classify_module(heis, w);
    CHECK(c.weak);
    CHECK(c.graded);
    CHECK(c.logarithmic);
    CHECK(c.admissible);
    CHECK(!c.ordinary);
    CHECK(c.spectrum_resolved);
    REQUIRE(c.spectrum.size() == 1);
    CHECK(c.spectrum[0].first == Rat(1, 2));
    CHECK(c.spectrum[0].second.first == 2);  // algebraic
    CHECK(c.spectrum[0].second.second == 1); // geometric
}

TEST_CASE("mode -2 module quotient certifies as a dg poisson module") {
    for (VertexModel m : {build_dual(), build_nilpotent_dg(), build_heisenberg(4)}) {
        ModuleModel adj = adjoint_module(m);
        RModulePresentation r = r_module(m, adj);
        INFO(m.name);
        CHECK(r.checks.pass());
        // the adjoint module quotient has the same dimensions as the algebra one
        CHECK(r.space().dim() == r.alg.space().dim());
    }
}

TEST_CASE("bimodule truncation: seven relations and residue memberships") {
    VertexModel heis = build_heisenberg(6);
    ModuleModel adj = adjoint_module(heis);
    BimodulePresentation b = a_module(heis, adj, 6, 10);
    CHECK(b.checks.pass());
    for (auto* f : {"span_left_absorbs", "span_right_absorbs", "left_preserves_span",
                    "right_preserves_span", "bimodule_compat", "left_assoc",
                    "right_assoc", "residue_lemma", "d_span_stable", "f_adapted",
                    "w_adapted"}) {
        INFO(f);
        CHECK(family_ok(b.checks, f));
    }
    // truncation dims mirror the algebra side on the adjoint module
    std::vector<std::pair<int, int>> want{{0, 1}, {2, 2}, {4, 3}, {6, 4}};
    CHECK(b.wdims == want);

    VertexModel nilp = build_nilpotent_dg();
    ModuleModel nadj = adjoint_module(nilp);
    BimodulePresentation nb = a_module(nilp, nadj, 0, 0);
    CHECK(nb.checks.pass());
    CHECK((int)nb.aclasses.size() == 4);
}

TEST_CASE("graded bimodule layers certify per variant") {
    VertexModel heis = build_heisenberg(6);
    ModuleModel adj = adjoint_module(heis);
    BimodulePresentation b = a_module(heis, adj, 6, 10);
    for (GrVariant v : {GrVariant::F, GrVariant::W, GrVariant::FW}) {
        GrModulePresentation g = gr_a_module(heis, adj, b, v);
        INFO(gr_variant_name(v));
        CHECK(g.checks.pass());
        CHECK((g.brk == nullptr) == (v == GrVariant::W));
        CHECK(family_ok(g.checks, "action_lift_independent"));
    }
}

TEST_CASE("comparison transformations are bijective on the adjoint truncation") {
    VertexModel heis = build_heisenberg(6);
    ModuleModel adj = adjoint_module(heis);
    RModulePresentation rm = r_module(heis, adj);
    BimodulePresentation bm = a_module(heis, adj, 6, 10);

    struct Row { NatVariant nv; GrVariant gv; };
    for (Row row : {Row{NatVariant::psi, GrVariant::F},
                    Row{NatVariant::phi, GrVariant::W},
                    Row{NatVariant::Psi, GrVariant::FW}}) {
        GrModulePresentation gm = gr_a_module(heis, adj, bm, row.gv);
        NatResult n = nat_transform(heis, adj, rm, bm, gm, row.nv);
        INFO(nat_variant_name(row.nv));
        CHECK(n.morphism.pass());
        CHECK(n.bijective_on_truncation);
        CHECK(n.alg_eta.bijective_on_truncation);
        for (auto& lr : n.layer_ranks) {
            CHECK(lr[2] == lr[3]);
            CHECK(lr[3] == lr[4]);
        }
        // the layer-graded companion map is bijective layer by layer
        if (row.nv != NatVariant::Psi) {
            CHECK(n.graded.pass());
            CHECK(family_ok(n.graded.checks, "bijective_per_layer"));
        }
        // a mismatched graded variant is rejected loudly
        if (row.nv == NatVariant::psi) {
            GrModulePresentation wrong = gr_a_module(heis, adj, bm, GrVariant::W);
            CHECK_THROWS_AS((void)nat_transform(heis, adj, rm, bm, wrong, row.nv),
                            std::invalid_argument);
        }
    }
}

TEST_CASE("induced module on cohomology classes") {
    VertexModel nilp = build_nilpotent_dg();
    CohomologyVertex hv = cohomology_vertex(nilp);
    ModuleModel adj = adjoint_module(nilp);
    HModule hm = h_module(nilp, hv, adj);
    CHECK(hm.checks.pass());
    CHECK(family_ok(hm.checks, "representative_independence"));
    CHECK(hm.mod.sp.dim() == 2);
    CHECK(check_module_axioms(hv.h, hm.mod).pass());

    // jordan data survives the (here trivial) passage to cohomology
    VertexModel heis = build_heisenberg(2);
    CohomologyVertex hh = cohomology_vertex(heis);
    ModuleModel w = jordan_module(heis);
    HModule hw = h_module(heis, hh, w);
    CHECK(hw.checks.pass());
    ModuleClassification c = classify_module(hh.h, hw.mod);
    CHECK(c.logarithmic);
    CHECK(!c.ordinary);
}

} // TEST_SUITE
