#include <doctest.h>

#include "dgva/builders.hpp"
#include "dgva/cohomology_vertex.hpp"
#include "dgva/modules.hpp"
#include "dgva/vertex_checks.hpp"

using namespace dgva;

namespace {

bool family_fails(const CheckReport& r, const std::string& name) {
    for (auto& l : r.lines)
        if (l.family == name) return l.checked > 0 && l.passed < l.checked;
    return false;
}

long long family_checked(const CheckReport& r, const std::string& name) {
    for (auto& l : r.lines)
        if (l.family == name) return l.checked;
    return 0;
}

} // namespace

TEST_SUITE("vertex") {

TEST_CASE("corpus models satisfy the vertex axioms") {
    VertexModel dual = build_dual();
    VertexModel nilp = build_nilpotent_dg();
    VertexModel heis = build_heisenberg(4);

    for (VertexModel* m : {&dual, &nilp, &heis}) {
        CheckReport r = check_vertex_axioms(*m);
        CHECK(r.pass());
        CHECK(family_checked(r, "jacobi") > 0);
    }
    CHECK(check_conformal(nilp).pass());
    CheckReport rc = check_conformal(heis);
    CHECK(rc.pass());
    CHECK(family_checked(rc, "virasoro") > 0);
    CHECK(family_checked(rc, "l_zero") > 0);
}

TEST_CASE("window contract on mode lookups") {
    VertexModel heis = build_heisenberg(4);
    int p1 = heis.sp.find("p1");
    int vac = heis.sp.find("vac");
    REQUIRE(p1 >= 0);

    // far above the stored mode range: annihilates everything, known zero
    auto hi = heis.mode(p1, heis.mode_hi + 5, p1);
    REQUIRE(hi.has_value());
    CHECK(hi->zero());
    // result weight below every stored state: known zero
    auto low = heis.mode(p1, 3, p1);
    REQUIRE(low.has_value());
    CHECK(low->zero());
    // translation: D kills the vacuum and raises weight by one
    auto dv = heis.translate(unit_elem(vac));
    REQUIRE(dv.has_value());
    CHECK(dv->zero());
    auto dp = heis.translate(unit_elem(p1));
    REQUIRE(dp.has_value());
    CHECK(!dp->zero());
    CHECK(homo_bd(heis.sp, *dp) == Bidegree{4, 4});
}

TEST_CASE("window contract refuses entries beyond the stored weight") {
    VertexModel dual = build_dual();
    int x = dual.sp.find("x");
    REQUIRE(x >= 0);
    // x[-2]x has result weight above the window: unknown
    CHECK(!dual.mode(x, -2, x).has_value());
    CHECK(!dual.translate(unit_elem(x)).has_value());
    // bilinear extension propagates the refusal
    CHECK(!dual.mode_apply(unit_elem(x), -2, unit_elem(x)).has_value());
}

TEST_CASE("induced model on cohomology classes") {
    VertexModel nilp = build_nilpotent_dg();
    CohomologyVertex hv = cohomology_vertex(nilp);
    CHECK(hv.checks.pass());
    CHECK(hv.h.sp.dim() == 2);
    CHECK(hv.h.d_map().is_zero());
    CHECK(check_vertex_axioms(hv.h).pass());
    CHECK(check_conformal(hv.h).pass());

    // with a zero differential, cohomology reproduces the model
    VertexModel dual = build_dual();
    CohomologyVertex hd = cohomology_vertex(dual);
    CHECK(hd.checks.pass());
    CHECK(hd.h.sp.dim() == dual.sp.dim());
    CHECK(check_vertex_axioms(hd.h).pass());
}

TEST_CASE("single entry mutations are caught by the right family") {
    SUBCASE("vacuum must act as the identity in its lowest mode") {
        VertexModel m = build_dual();
        int x = m.sp.find("x");
        m.tab[{m.vacuum, -1, x}] = Rat(2) * unit_elem(x);
        CheckReport r = check_vertex_axioms(m);
        CHECK(family_fails(r, "vacuum"));
    }
    SUBCASE("creation against the vacuum recovers the state") {
        VertexModel m = build_dual();
        int x = m.sp.find("x");
        m.tab[{x, -1, m.vacuum}] = Rat(2) * unit_elem(x);
        CheckReport r = check_vertex_axioms(m);
        CHECK(family_fails(r, "creation"));
    }
    SUBCASE("conformal weights are read off by the zero mode") {
        VertexModel m = build_heisenberg(4);
        int p1 = m.sp.find("p1");
        m.tab[{m.conformal, 1, p1}] = Rat(2) * unit_elem(p1);
        CheckReport r = check_conformal(m);
        CHECK(family_fails(r, "l_zero"));
    }
    SUBCASE("wrong central charge breaks the bracket of opposite modes") {
        VertexModel m = build_heisenberg(4);
        m.cV = 5;
        CheckReport r = check_conformal(m);
        CHECK(family_fails(r, "virasoro"));
    }
    SUBCASE("a deep structure constant cannot be rescaled") {
        VertexModel m = build_heisenberg(4);
        int p1 = m.sp.find("p1");
        int omega = m.sp.find("omega");
        m.tab[{p1, -1, p1}] = Rat(3) * unit_elem(omega); // true value is 2
        CHECK(!check_vertex_axioms(m).pass());
    }
}

TEST_CASE("module axioms on the adjoint module") {
    VertexModel heis = build_heisenberg(4);
    ModuleModel adj = adjoint_module(heis);
    CheckReport r = check_module_axioms(heis, adj);
    CHECK(r.pass());
    CHECK(family_checked(r, "jacobi") > 0);

    // and mutations on the action side are caught too
    int p1 = adj.sp.find("p1");
    adj.act[{heis.vacuum, -1, p1}] = Rat(2) * unit_elem(p1);
    CHECK(family_fails(check_module_axioms(heis, adj), "vacuum"));
}

} // TEST_SUITE
