#include "dgva/complex.hpp"

#include <stdexcept>

namespace dgva {

CheckReport check_complex(const Complex& c, int exact_wt2) {
    CheckReport rep;
    rep.name = "complex";
    const Space& sp = *c.sp;
    if (c.d.shift != Bidegree{1, 0})
        rep.fail("d_shift", "declared shift is not (+1, 0)");
    for (int i = 0; i < sp.dim(); ++i) {
        Bidegree want = sp.bd(i) + Bidegree{1, 0};
        bool good = true;
        for (auto& [j, x] : c.d.col(i).t)
            if (sp.bd(j) != want) good = false;
        rep.check("d_shift", good, "d(" + sp.ids[i] + ") not homogeneous of shift (+1,0)");
    }
    for (int i = 0; i < sp.dim(); ++i) {
        if (sp.bd(i).wt2 > exact_wt2) { rep.skip("d_squared"); continue; }
        Element dd = c.d.apply(c.d.col(i));
        rep.check("d_squared", dd.zero(),
                  "d(d(" + sp.ids[i] + ")) = " + elem_str(sp, dd));
    }
    return rep;
}

Cohomology cohomology(const Complex& c, int exact_wt2) {
    const Space& sp = *c.sp;
    for (int i = 0; i < sp.dim(); ++i)
        if (sp.bd(i).wt2 > exact_wt2)
            throw std::runtime_error("cohomology: window not exact at wt2 " +
                                     std::to_string(sp.bd(i).wt2));
    Cohomology h;
    h.cocycles = kernel(c.d);
    h.coboundaries = image(c.d);
    std::vector<Element> gens(h.cocycles.rows().begin(), h.cocycles.rows().end());
    h.pres = quotient_present_rel(sp, gens, h.coboundaries);
    return h;
}

} // namespace dgva
