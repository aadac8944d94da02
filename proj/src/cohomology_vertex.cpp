#include "dgva/cohomology_vertex.hpp"

#include <stdexcept>

namespace dgva {

CohomologyVertex cohomology_vertex(const VertexModel& m) {
    CohomologyVertex out;
    out.checks.name = "cohomology_vertex";
    const Space& sp = m.sp;

    if (m.vacuum < 0 || !m.d_apply(unit_elem(m.vacuum)).zero())
        throw std::runtime_error("cohomology_vertex: d(vacuum) != 0");
    if (m.has_conf && m.conformal >= 0 && !m.d_apply(unit_elem(m.conformal)).zero())
        throw std::runtime_error("cohomology_vertex: d(conformal) != 0");

    LinearMap d = m.d_map();
    Subspace img = image(d);
    Subspace ker = kernel(d);

    // vacuum (and conformal) classes first so they land as basis vectors
    std::vector<Element> gens;
    gens.push_back(unit_elem(m.vacuum));
    if (m.has_conf && m.conformal >= 0) gens.push_back(unit_elem(m.conformal));
    for (auto& r : ker.rows()) gens.push_back(r);
    out.pres = quotient_present_rel(sp, gens, img);

    const Space& hsp = out.pres.qspace;
    const int hdim = hsp.dim();

    auto unit_class = [&](int amb) -> int {
        auto q = out.pres.project(unit_elem(amb));
        if (!q) throw std::runtime_error("cohomology_vertex: class projection failed");
        if (q->zero()) return -1;
        if (q->t.size() == 1 && q->t.begin()->second == 1) return q->t.begin()->first;
        throw std::runtime_error("cohomology_vertex: class is not a basis vector");
    };
    int hvac = unit_class(m.vacuum);
    if (hvac < 0) throw std::runtime_error("cohomology_vertex: vacuum class is zero");

    out.h.name = m.name + "/H";
    out.h.sp = hsp;
    out.h.sp.name = sp.name + "/H";
    out.h.dcols.assign(hdim, Element{});
    out.h.vacuum = hvac;
    out.h.has_conf = m.has_conf;
    out.h.cV = m.cV;
    out.h.conformal = -1;
    if (m.has_conf && m.conformal >= 0) {
        int hc = unit_class(m.conformal);
        out.h.conformal = hc;
        if (hc < 0) out.checks.note("conformal class is zero; degenerate on cohomology");
    }
    out.h.wt2_max = m.wt2_max;
    out.h.mode_lo = m.mode_lo;
    out.h.mode_hi = m.mode_hi;
    out.h.set_wt2_min();

    // induced modes on representatives
    for (int i = 0; i < hdim; ++i)
        for (int j = 0; j < hdim; ++j)
            for (int n = m.mode_lo; n <= m.mode_hi; ++n) {
                int rw = hsp.bd(i).wt2 + hsp.bd(j).wt2 - 2 * (n + 1);
                if (rw > m.wt2_max) continue;
                auto prod = m.mode_apply(out.pres.reps[i], n, out.pres.reps[j]);
                if (!prod) continue;
                auto cls = out.pres.project(*prod);
                if (!cls) {
                    out.checks.fail("induced_well_defined",
                                    mode_str(hsp, i, n, hsp, j) + " leaves the cocycle span");
                    continue;
                }
                out.checks.ok("induced_well_defined");
                if (!cls->zero()) out.h.tab[{i, n, j}] = *cls;
            }

    // independence of the chosen representatives: exact inputs give zero classes
    for (auto& b : img.rows())
        for (int j = 0; j < hdim; ++j)
            for (int n = m.mode_lo; n <= m.mode_hi; ++n) {
                auto check_side = [&](const std::optional<Element>& x, const char* side) {
                    if (!x) { out.checks.skip("representative_independence"); return; }
                    auto cls = out.pres.project(*x);
                    out.checks.check("representative_independence", cls && cls->zero(),
                                     std::string(side) + " exact input, class " + hsp.ids[j] +
                                         ", mode " + std::to_string(n));
                };
                check_side(m.mode_apply(b, n, out.pres.reps[j]), "left");
                check_side(m.mode_apply(out.pres.reps[j], n, b), "right");
            }
    return out;
}

} // namespace dgva
