#include "dgva/modules.hpp"

#include <array>

namespace dgva {

namespace {

Element layer_part(GrVariant v, const Space& sp, const Element& e, Bidegree bd) {
    switch (v) {
        case GrVariant::F: return deg_component(sp, e, bd.deg);
        case GrVariant::W: return wt2_component(sp, e, bd.wt2);
        default: return bd_component(sp, e, bd);
    }
}

} // namespace

std::string nat_variant_name(NatVariant v) {
    switch (v) {
        case NatVariant::psi: return "psi";
        case NatVariant::phi: return "phi";
        default: return "Psi";
    }
}

/* ------------------------------------------------------------------ */
/*  the comparison transformations                                     */
/* ------------------------------------------------------------------ */

NatResult nat_transform(const VertexModel& m, const ModuleModel& mod,
                        const RModulePresentation& rm, const BimodulePresentation& bm,
                        const GrModulePresentation& gm, NatVariant variant) {
    GrVariant need = variant == NatVariant::psi   ? GrVariant::F
                     : variant == NatVariant::phi ? GrVariant::W
                                                  : GrVariant::FW;
    if (gm.variant != need)
        throw std::invalid_argument("nat_transform: graded presentation variant mismatch");

    NatResult out;
    out.variant = variant;
    out.morphism.name = nat_variant_name(variant) + "(" + mod.name + ")";
    CheckReport& rep = out.morphism.checks;
    rep.name = out.morphism.name;

    /* algebra-side comparison against the same graded instance */
    out.alg_eta = eta(m, rm.alg, bm.alg, gm.alg);

    const Space& rms = rm.space();
    const Space& qs = bm.q->qspace;
    std::vector<int> q2g(qs.dim(), -1);
    for (int gi = 0; gi < (int)bm.aclasses.size(); ++gi) q2g[bm.aclasses[gi]] = gi;
    auto to_g = [&](const Element& e) -> std::optional<Element> {
        Element o;
        for (auto& [cc, coef] : e.t) {
            if (q2g[cc] < 0) return std::nullopt;
            o.t.emplace(q2g[cc], coef);
        }
        return o;
    };

    /* what gets reduced out of the source: products of the eta-kernel
     * generators, plus everything above the truncation weight */
    Subspace keta = kernel(out.alg_eta.morphism.matrix);
    Subspace cut;
    cut.amb = &rms;
    long long kprod_skipped = 0;
    for (auto& krow : keta.rows()) {
        Element klift = rm.alg.q->lift(krow);
        for (int j = 0; j < rms.dim(); ++j) {
            auto prod = mod.mode_apply(klift, -1, rm.q->reps[j]);
            if (!prod) { ++kprod_skipped; continue; }
            auto pc = rm.q->project(*prod);
            if (!pc) throw std::runtime_error("nat_transform: projection failed");
            cut.add(*pc);
        }
    }
    if (kprod_skipped)
        rep.note("kernel products outside the window: " + std::to_string(kprod_skipped) +
                 " (covered by the truncation reduction where relevant)");
    for (int j = 0; j < rms.dim(); ++j)
        if (rms.bd(j).wt2 > bm.N2) cut.add(unit_elem(j));

    out.src = std::make_unique<QuotientPresentation>(quotient_present(rms, cut));

    /* the full matrix over source classes, then restricted to the quotient */
    std::vector<Element> cols(rms.dim());
    for (int j = 0; j < rms.dim(); ++j) {
        if (rms.bd(j).wt2 > bm.N2) continue;
        auto pc = bm.project_model(rm.q->reps[j]);
        if (!pc) throw std::runtime_error("nat_transform: projection failed");
        auto gc = to_g(layer_part(gm.variant, qs, *pc, rms.bd(j)));
        if (!gc) throw std::runtime_error("nat_transform: image leaves the truncation");
        cols[j] = std::move(*gc);
    }
    LinearMap full{&rms, gm.sp.get(), {0, 0}, std::move(cols)};

    for (auto& row : cut.rows())
        rep.check("well_defined", full.apply(row).zero(), elem_str(rms, row));

    const Space& ss = out.src->qspace;
    std::vector<Element> scols(ss.dim());
    for (int k = 0; k < ss.dim(); ++k) scols[k] = full.apply(out.src->reps[k]);
    out.morphism.matrix = LinearMap{&ss, gm.sp.get(), {0, 0}, std::move(scols)};
    const LinearMap& mat = out.morphism.matrix;

    {
        Subspace img;
        img.amb = gm.sp.get();
        for (int k = 0; k < ss.dim(); ++k) img.add(mat.col(k));
        rep.check("surjective", img.dim() == gm.sp->dim(),
                  "rank " + std::to_string(img.dim()) + " of " +
                      std::to_string(gm.sp->dim()));
    }

    /* structure preservation */
    const Space& ras = rm.alg.space();
    auto src_class_of = [&](int k) { // source classes are module quotient basis vectors
        return out.src->reps[k].t.begin()->first;
    };
    for (int r = 0; r < ras.dim(); ++r)
        for (int k = 0; k < ss.dim(); ++k) {
            int cj = src_class_of(k);
            std::string wit = "(" + ras.ids[r] + ", " + ss.ids[k] + ")";

            auto do_side = [&](const BilinTable& rtab, const BilinTable* gtab,
                               const char* fam) {
                if (!gtab) return;
                if (!rtab.known(r, cj)) { rep.skip(fam); return; }
                Element e = rtab.entry(r, cj);
                bool fits = true;
                for (auto& [c2, coef] : e.t)
                    if (rms.bd(c2).wt2 > bm.N2) fits = false;
                auto rhs = gtab->mul(out.alg_eta.morphism.matrix.col(r), mat.col(k));
                if (!fits || !rhs) { rep.skip(fam); return; }
                rep.check(fam, full.apply(e) == *rhs, wit);
            };
            do_side(*rm.act, gm.l_tab.get(), "action_morphism");
            do_side(*rm.brk, gm.brk.get(), "bracket_morphism");
        }

    for (int k = 0; k < ss.dim(); ++k) {
        int cj = src_class_of(k);
        Element lhs = full.apply(rm.d->col(cj));
        Element rhs = gm.d->apply(mat.col(k));
        rep.check("chain_map", lhs == rhs, ss.ids[k]);
    }

    /* per-layer ranks */
    {
        auto key_of = [&](Bidegree bd) -> std::pair<int, int> {
            switch (gm.variant) {
                case GrVariant::F: return {bd.deg, EtaMorphism::kLayerAny};
                case GrVariant::W: return {EtaMorphism::kLayerAny, bd.wt2};
                default: return {bd.deg, bd.wt2};
            }
        };
        std::map<std::pair<int, int>, std::array<int, 3>> layers;
        std::map<std::pair<int, int>, Subspace> spans;
        for (int k = 0; k < ss.dim(); ++k) {
            auto key = key_of(ss.bd(k));
            ++layers[key][0];
            auto [it, fresh] = spans.try_emplace(key);
            if (fresh) it->second.amb = gm.sp.get();
            it->second.add(mat.col(k));
        }
        for (int gi = 0; gi < gm.sp->dim(); ++gi) ++layers[key_of(gm.sp->bd(gi))][1];
        out.bijective_on_truncation = true;
        for (auto& [key, v] : layers) {
            auto it = spans.find(key);
            v[2] = it == spans.end() ? 0 : it->second.dim();
            bool bij = v[0] == v[1] && v[1] == v[2];
            if (!bij) out.bijective_on_truncation = false;
            rep.check("bijective_per_layer", bij,
                      "layer (" +
                          (key.first == EtaMorphism::kLayerAny
                               ? std::string("*")
                               : std::to_string(key.first)) +
                          ", " +
                          (key.second == EtaMorphism::kLayerAny
                               ? std::string("*")
                               : wt2_str(key.second)) +
                          "): " + std::to_string(v[0]) + " -> " + std::to_string(v[1]) +
                          " rank " + std::to_string(v[2]));
            out.layer_ranks.push_back({key.first, key.second, v[0], v[1], v[2]});
        }
    }

    /* the associated graded of the map itself */
    if (variant == NatVariant::Psi) {
        rep.note("already layer-graded; no separate graded comparison");
    } else {
        out.graded.name = "gr_" + nat_variant_name(variant) + "(" + mod.name + ")";
        out.graded.checks.name = out.graded.name;
        std::vector<Element> gcols(ss.dim());
        for (int k = 0; k < ss.dim(); ++k)
            gcols[k] = variant == NatVariant::psi
                           ? wt2_component(*gm.sp, mat.col(k), ss.bd(k).wt2)
                           : deg_component(*gm.sp, mat.col(k), ss.bd(k).deg);
        out.graded.matrix = LinearMap{&ss, gm.sp.get(), {0, 0}, std::move(gcols)};

        std::map<Bidegree, std::array<int, 3>> layers;
        std::map<Bidegree, Subspace> spans;
        for (int k = 0; k < ss.dim(); ++k) {
            ++layers[ss.bd(k)][0];
            auto [it, fresh] = spans.try_emplace(ss.bd(k));
            if (fresh) it->second.amb = gm.sp.get();
            it->second.add(out.graded.matrix.col(k));
        }
        for (int gi = 0; gi < gm.sp->dim(); ++gi) ++layers[gm.sp->bd(gi)][1];
        for (auto& [bd, v] : layers) {
            auto it = spans.find(bd);
            v[2] = it == spans.end() ? 0 : it->second.dim();
            out.graded.checks.check(
                "bijective_per_layer", v[0] == v[1] && v[1] == v[2],
                "layer (" + std::to_string(bd.deg) + ", " + wt2_str(bd.wt2) + "): " +
                    std::to_string(v[0]) + " -> " + std::to_string(v[1]) + " rank " +
                    std::to_string(v[2]));
        }
    }
    return out;
}

} // namespace dgva
