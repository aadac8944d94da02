#include "dgva/tables.hpp"

#include <algorithm>
#include <climits>

namespace dgva {

/* ------------------------------------------------------------------ */
/*  BilinTable                                                         */
/* ------------------------------------------------------------------ */

std::optional<Element> BilinTable::mul(const Element& x, const Element& y) const {
    Element out;
    for (auto& [i, ci] : x.t)
        for (auto& [j, cj] : y.t) {
            if (!known(i, j)) return std::nullopt;
            auto it = e.find({i, j});
            if (it != e.end()) out.axpy(ci * cj, it->second);
        }
    return out;
}

std::string BilinTable::shift_violation() const {
    for (auto& [key, v] : e) {
        Bidegree want = a->bd(key.first) + b->bd(key.second) + shift;
        for (auto& [k, c] : v.t)
            if (out->bd(k) != want)
                return "(" + a->ids[key.first] + ", " + b->ids[key.second] + ")";
    }
    return "";
}

int FiltrationSpec::level_of(const Space& sp, const Element& v) const {
    int lv = INT_MIN;
    for (auto& [i, c] : v.t) lv = std::max(lv, level(sp, i));
    return lv;
}

/* ------------------------------------------------------------------ */
/*  small helpers shared by the checkers                               */
/* ------------------------------------------------------------------ */

namespace {

struct Ctx {
    const Space& sp;
    CheckReport& rep;

    // evaluate a +/- combination of optional elements; nullopt if any is
    std::optional<Element> sum(std::initializer_list<std::pair<int, const std::optional<Element>*>> parts) const {
        Element out;
        for (auto& [s, e] : parts) {
            if (!*e) return std::nullopt;
            out.axpy(s, **e);
        }
        return out;
    }
    void verdict(const std::string& family, const std::optional<Element>& diff,
                 const std::string& inputs) const {
        if (!diff) { rep.skip(family); return; }
        rep.check(family, diff->zero(), inputs + " diff=" + elem_str(sp, *diff));
    }
};

std::string ids2(const Space& a, int i, const Space& b, int j) {
    return "(" + a.ids[i] + ", " + b.ids[j] + ")";
}
std::string ids3(const Space& a, int i, const Space& b, int j, const Space& c, int k) {
    return "(" + a.ids[i] + ", " + b.ids[j] + ", " + c.ids[k] + ")";
}

} // namespace

/* ------------------------------------------------------------------ */
/*  dg algebra                                                         */
/* ------------------------------------------------------------------ */

CheckReport check_dg_algebra(const Complex& c, const BilinTable& m,
                             std::optional<int> unit, bool assoc, bool comm) {
    CheckReport rep;
    rep.name = "dg_algebra";
    const Space& sp = *c.sp;
    Ctx ctx{sp, rep};
    rep.check("product_homogeneous", m.shift_violation().empty(),
              "entry at " + m.shift_violation());

    int n = sp.dim();
    for (int i = 0; i < n; ++i) {
        Element ei = unit_elem(i), di = c.d.col(i);
        for (int j = 0; j < n; ++j) {
            Element ej = unit_elem(j), dj = c.d.col(j);
            std::optional<Element> mij = m.mul(ei, ej);
            // Leibniz: d(xy) - d(x)y - (-1)^|x| x d(y)
            std::optional<Element> dm = mij ? std::optional<Element>(c.d.apply(*mij)) : std::nullopt;
            auto t1 = m.mul(di, ej);
            auto t2 = m.mul(ei, dj);
            ctx.verdict("leibniz",
                        ctx.sum({{1, &dm}, {-1, &t1}, {-sign_pow(sp.bd(i).deg), &t2}}),
                        ids2(sp, i, sp, j));
            if (comm) {
                auto mji = m.mul(ej, ei);
                int s = sign_pow((long long)sp.bd(i).deg * sp.bd(j).deg);
                ctx.verdict("comm", ctx.sum({{1, &mij}, {-s, &mji}}), ids2(sp, i, sp, j));
            }
            if (assoc) {
                for (int k = 0; k < n; ++k) {
                    Element ek = unit_elem(k);
                    auto mjk = m.mul(ej, ek);
                    std::optional<Element> l = mij ? m.mul(*mij, ek) : std::nullopt;
                    std::optional<Element> r = mjk ? m.mul(ei, *mjk) : std::nullopt;
                    ctx.verdict("assoc", ctx.sum({{1, &l}, {-1, &r}}), ids3(sp, i, sp, j, sp, k));
                }
            }
        }
        if (unit) {
            Element one = unit_elem(*unit);
            auto l = m.mul(one, ei);
            auto r = m.mul(ei, one);
            std::optional<Element> want(ei);
            ctx.verdict("unit", ctx.sum({{1, &l}, {-1, &want}}), "(1, " + sp.ids[i] + ")");
            ctx.verdict("unit", ctx.sum({{1, &r}, {-1, &want}}), "(" + sp.ids[i] + ", 1)");
        }
    }
    return rep;
}

/* ------------------------------------------------------------------ */
/*  dg Lie, degree-p bracket                                           */
/* ------------------------------------------------------------------ */

CheckReport check_dg_lie(const Complex& c, const BilinTable& br, int p) {
    CheckReport rep;
    rep.name = "dg_lie";
    const Space& sp = *c.sp;
    Ctx ctx{sp, rep};
    rep.check("bracket_homogeneous", br.shift_violation().empty(),
              "entry at " + br.shift_violation());
    rep.check("bracket_degree", br.shift.deg == p,
              "declared shift deg != bracket degree p");
    if (p % 2 != 0) rep.note("p_odd: bracket degree is odd");

    int n = sp.dim();
    for (int i = 0; i < n; ++i) {
        Element ei = unit_elem(i), di = c.d.col(i);
        int dgi = sp.bd(i).deg;
        for (int j = 0; j < n; ++j) {
            Element ej = unit_elem(j), dj = c.d.col(j);
            int dgj = sp.bd(j).deg;
            int koszul = sign_pow((long long)(dgi + p) * (dgj + p));
            auto bij = br.mul(ei, ej);
            auto bji = br.mul(ej, ei);
            ctx.verdict("skew", ctx.sum({{1, &bij}, {koszul, &bji}}), ids2(sp, i, sp, j));

            // d[x,y] - (-1)^p [dx,y] - (-1)^{|x|+p} [x,dy]
            std::optional<Element> dbr = bij ? std::optional<Element>(c.d.apply(*bij)) : std::nullopt;
            auto t1 = br.mul(di, ej);
            auto t2 = br.mul(ei, dj);
            ctx.verdict("bracket_cocycle",
                        ctx.sum({{1, &dbr}, {-sign_pow(p), &t1}, {-sign_pow(dgi + p), &t2}}),
                        ids2(sp, i, sp, j));

            for (int k = 0; k < n; ++k) {
                Element ek = unit_elem(k);
                // [[x,y],z] - [x,[y,z]] + koszul(x,y) [y,[x,z]]
                auto bjk = br.mul(ej, ek);
                auto bik = br.mul(ei, ek);
                std::optional<Element> l = bij ? br.mul(*bij, ek) : std::nullopt;
                std::optional<Element> r1 = bjk ? br.mul(ei, *bjk) : std::nullopt;
                std::optional<Element> r2 = bik ? br.mul(ej, *bik) : std::nullopt;
                ctx.verdict("lie_jacobi",
                            ctx.sum({{1, &l}, {-1, &r1}, {koszul, &r2}}),
                            ids3(sp, i, sp, j, sp, k));
            }
        }
    }
    return rep;
}

/* ------------------------------------------------------------------ */
/*  dg Poisson                                                         */
/* ------------------------------------------------------------------ */

CheckReport check_dg_poisson(const Complex& c, const BilinTable& m,
                             const BilinTable& br, int p, std::optional<int> unit) {
    CheckReport rep;
    rep.name = "dg_poisson";
    rep.absorb(check_dg_algebra(c, m, unit, true, true));
    rep.absorb(check_dg_lie(c, br, p));
    const Space& sp = *c.sp;
    Ctx ctx{sp, rep};
    int n = sp.dim();
    for (int a = 0; a < n; ++a) {
        Element ea = unit_elem(a);
        int dga = sp.bd(a).deg;
        for (int x = 0; x < n; ++x) {
            Element ex = unit_elem(x);
            int dgx = sp.bd(x).deg;
            for (int y = 0; y < n; ++y) {
                Element ey = unit_elem(y);
                // {a, xy} - {a,x}y - (-1)^{(|a|+p)|x|} x{a,y}
                auto mxy = m.mul(ex, ey);
                auto bax = br.mul(ea, ex);
                auto bay = br.mul(ea, ey);
                std::optional<Element> l = mxy ? br.mul(ea, *mxy) : std::nullopt;
                std::optional<Element> r1 = bax ? m.mul(*bax, ey) : std::nullopt;
                std::optional<Element> r2 = bay ? m.mul(ex, *bay) : std::nullopt;
                int s = sign_pow((long long)(dga + p) * dgx);
                ctx.verdict("poisson_leibniz",
                            ctx.sum({{1, &l}, {-1, &r1}, {-s, &r2}}),
                            ids3(sp, a, sp, x, sp, y));
            }
        }
    }
    return rep;
}

/* ------------------------------------------------------------------ */
/*  differential filtered algebra                                      */
/* ------------------------------------------------------------------ */

CheckReport check_diff_filtered_algebra(const Complex& c, FiltrationSpec F,
                                        const BilinTable& m, bool comm_defect) {
    CheckReport rep;
    rep.name = std::string("diff_filtered_") + F.label();
    const Space& sp = *c.sp;
    int n = sp.dim();
    int raise = F.d_raise();
    for (int i = 0; i < n; ++i) {
        int li = F.level(sp, i);
        rep.check("d_filtered", F.level_of(sp, c.d.col(i)) <= li + raise,
                  "d(" + sp.ids[i] + ") raises the level by more than " + std::to_string(raise));
        Element ei = unit_elem(i), di = c.d.col(i);
        for (int j = 0; j < n; ++j) {
            int lj = F.level(sp, j);
            Element ej = unit_elem(j), dj = c.d.col(j);
            auto mij = m.mul(ei, ej);
            if (!mij) { rep.skip("product_filtered"); rep.skip("leibniz_defect");
                        if (comm_defect) rep.skip("comm_defect"); continue; }
            rep.check("product_filtered", F.level_of(sp, *mij) <= li + lj,
                      ids2(sp, i, sp, j) + " product above level " + std::to_string(li + lj));
            auto t1 = m.mul(di, ej);
            auto t2 = m.mul(ei, dj);
            if (!t1 || !t2) { rep.skip("leibniz_defect"); }
            else {
                Element defect = c.d.apply(*mij);
                defect.axpy(-1, *t1);
                defect.axpy(-sign_pow(sp.bd(i).deg), *t2);
                rep.check("leibniz_defect", F.level_of(sp, defect) <= li + lj + raise - 1,
                          ids2(sp, i, sp, j) + " defect=" + elem_str(sp, defect));
            }
            if (comm_defect) {
                auto mji = m.mul(ej, ei);
                if (!mji) { rep.skip("comm_defect"); continue; }
                Element defect = *mij;
                defect.axpy(-sign_pow((long long)sp.bd(i).deg * sp.bd(j).deg), *mji);
                rep.check("comm_defect", F.level_of(sp, defect) <= li + lj - 1,
                          ids2(sp, i, sp, j) + " defect=" + elem_str(sp, defect));
            }
        }
    }
    return rep;
}

/* ------------------------------------------------------------------ */
/*  module checkers                                                    */
/* ------------------------------------------------------------------ */

CheckReport check_dg_module(const AlgebraPres& A, const ModulePres& M) {
    CheckReport rep;
    rep.name = "dg_module";
    const Space& ra = *A.sp;
    const Space& rm = *M.sp;
    Ctx ctx{rm, rep};
    rep.check("action_homogeneous", M.act.shift_violation().empty(),
              "entry at " + M.act.shift_violation());
    for (int i = 0; i < ra.dim(); ++i) {
        Element ri = unit_elem(i), di = A.d.col(i);
        for (int x = 0; x < rm.dim(); ++x) {
            Element ex = unit_elem(x), dx = M.d.col(x);
            auto rix = M.act.mul(ri, ex);
            // d_M(r x) - d(r) x - (-1)^|r| r d_M(x)
            std::optional<Element> dm = rix ? std::optional<Element>(M.d.apply(*rix)) : std::nullopt;
            auto t1 = M.act.mul(di, ex);
            auto t2 = M.act.mul(ri, dx);
            ctx.verdict("module_leibniz",
                        ctx.sum({{1, &dm}, {-1, &t1}, {-sign_pow(ra.bd(i).deg), &t2}}),
                        ids2(ra, i, rm, x));
            for (int j = 0; j < ra.dim(); ++j) {
                Element rj = unit_elem(j);
                auto rij = A.prod.mul(ri, rj);
                auto rjx = M.act.mul(rj, ex);
                std::optional<Element> l = rij ? M.act.mul(*rij, ex) : std::nullopt;
                std::optional<Element> r = rjx ? M.act.mul(ri, *rjx) : std::nullopt;
                ctx.verdict("module_assoc", ctx.sum({{1, &l}, {-1, &r}}),
                            ids3(ra, i, ra, j, rm, x));
            }
        }
    }
    if (A.unit) {
        Element one = unit_elem(*A.unit);
        for (int x = 0; x < rm.dim(); ++x) {
            Element ex = unit_elem(x);
            auto ox = M.act.mul(one, ex);
            std::optional<Element> want(ex);
            ctx.verdict("module_unit", ctx.sum({{1, &ox}, {-1, &want}}), "(1, " + rm.ids[x] + ")");
        }
    }
    return rep;
}

CheckReport check_dg_lie_module(const AlgebraPres& A, const ModulePres& M) {
    CheckReport rep;
    rep.name = "dg_lie_module";
    const Space& ra = *A.sp;
    const Space& rm = *M.sp;
    Ctx ctx{rm, rep};
    if (!A.brk || !M.brk) { rep.fail("bracket_present", "missing bracket table"); return rep; }
    const BilinTable& ab = *A.brk;
    const BilinTable& mb = *M.brk;
    int p = A.p;
    for (int i = 0; i < ra.dim(); ++i) {
        Element ri = unit_elem(i), di = A.d.col(i);
        int dgi = ra.bd(i).deg;
        for (int x = 0; x < rm.dim(); ++x) {
            Element ex = unit_elem(x), dx = M.d.col(x);
            auto bix = mb.mul(ri, ex);
            // d_M{r,x} - {dr,x} - (-1)^{|r|+p} {r, d_M x}
            std::optional<Element> dm = bix ? std::optional<Element>(M.d.apply(*bix)) : std::nullopt;
            auto t1 = mb.mul(di, ex);
            auto t2 = mb.mul(ri, dx);
            ctx.verdict("lie_module_cocycle",
                        ctx.sum({{1, &dm}, {-1, &t1}, {-sign_pow(dgi + p), &t2}}),
                        ids2(ra, i, rm, x));
            for (int j = 0; j < ra.dim(); ++j) {
                Element rj = unit_elem(j);
                int dgj = ra.bd(j).deg;
                int koszul = sign_pow((long long)(dgi + p) * (dgj + p));
                // {{ri,rj},x} - {ri,{rj,x}} + koszul {rj,{ri,x}}
                auto bij = ab.mul(ri, rj);
                auto bjx = mb.mul(rj, ex);
                std::optional<Element> l = bij ? mb.mul(*bij, ex) : std::nullopt;
                std::optional<Element> r1 = bjx ? mb.mul(ri, *bjx) : std::nullopt;
                std::optional<Element> r2 = bix ? mb.mul(rj, *bix) : std::nullopt;
                ctx.verdict("lie_module_jacobi",
                            ctx.sum({{1, &l}, {-1, &r1}, {koszul, &r2}}),
                            ids3(ra, i, ra, j, rm, x));
            }
        }
    }
    return rep;
}

CheckReport check_dg_poisson_module(const AlgebraPres& A, const ModulePres& M) {
    CheckReport rep;
    rep.name = "dg_poisson_module";
    rep.absorb(check_dg_module(A, M));
    rep.absorb(check_dg_lie_module(A, M));
    if (!A.brk || !M.brk) return rep;
    const Space& ra = *A.sp;
    const Space& rm = *M.sp;
    Ctx ctx{rm, rep};
    const BilinTable& ab = *A.brk;
    const BilinTable& mb = *M.brk;
    int p = A.p;
    for (int i = 0; i < ra.dim(); ++i) {
        Element ri = unit_elem(i);
        int dgi = ra.bd(i).deg;
        for (int j = 0; j < ra.dim(); ++j) {
            Element rj = unit_elem(j);
            int dgj = ra.bd(j).deg;
            for (int x = 0; x < rm.dim(); ++x) {
                Element ex = unit_elem(x);
                // {ri, rj x} - {ri,rj} x - (-1)^{(|ri|+p)|rj|} rj {ri,x}
                auto rjx = M.act.mul(rj, ex);
                auto bij = ab.mul(ri, rj);
                auto bix = mb.mul(ri, ex);
                std::optional<Element> l1 = rjx ? mb.mul(ri, *rjx) : std::nullopt;
                std::optional<Element> r1 = bij ? M.act.mul(*bij, ex) : std::nullopt;
                std::optional<Element> r2 = bix ? M.act.mul(rj, *bix) : std::nullopt;
                ctx.verdict("poisson_module_mixed1",
                            ctx.sum({{1, &l1}, {-1, &r1}, {-sign_pow((long long)(dgi + p) * dgj), &r2}}),
                            ids3(ra, i, ra, j, rm, x));
                // {ri rj, x} - ri {rj,x} - (-1)^{|ri||rj|} rj {ri,x}
                auto mij = A.prod.mul(ri, rj);
                auto bjx2 = mb.mul(rj, ex);
                std::optional<Element> l2 = mij ? mb.mul(*mij, ex) : std::nullopt;
                std::optional<Element> s1 = bjx2 ? M.act.mul(ri, *bjx2) : std::nullopt;
                std::optional<Element> s2 = bix ? M.act.mul(rj, *bix) : std::nullopt;
                ctx.verdict("poisson_module_mixed2",
                            ctx.sum({{1, &l2}, {-1, &s1}, {-sign_pow((long long)dgi * dgj), &s2}}),
                            ids3(ra, i, ra, j, rm, x));
            }
        }
    }
    return rep;
}

/* ------------------------------------------------------------------ */
/*  double associated graded                                           */
/* ------------------------------------------------------------------ */

namespace {

// extract the component of v at the exact (wt2, deg) pair, in the two orders
Element comp_w_then_f(const Space& sp, const Element& v, int wt2, int deg) {
    return deg_component(sp, wt2_component(sp, v, wt2), deg);
}
Element comp_f_then_w(const Space& sp, const Element& v, int deg, int wt2) {
    return wt2_component(sp, deg_component(sp, v, deg), wt2);
}

GradedPres build_gr(const Complex& c, const BilinTable& m, bool w_first) {
    const Space& sp = *c.sp;
    GradedPres g;
    g.sp.name = sp.name + (w_first ? "/grWF" : "/grFW");
    std::vector<int> order(sp.dim());
    for (int i = 0; i < sp.dim(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        auto kx = w_first ? std::tuple(sp.bd(x).wt2, sp.bd(x).deg, sp.ids[x])
                          : std::tuple(sp.bd(x).deg, sp.bd(x).wt2, sp.ids[x]);
        auto ky = w_first ? std::tuple(sp.bd(y).wt2, sp.bd(y).deg, sp.ids[y])
                          : std::tuple(sp.bd(y).deg, sp.bd(y).wt2, sp.ids[y]);
        return kx < ky;
    });
    std::vector<int> pos(sp.dim());
    for (int k = 0; k < (int)order.size(); ++k) {
        g.sp.add(sp.ids[order[k]], sp.bd(order[k]));
        pos[order[k]] = k;
    }
    auto translate = [&](const Element& v) {
        Element w;
        for (auto& [i, c] : v.t) w.t.emplace(pos[i], c);
        return w;
    };
    g.prod = product_table(g.sp, m.shift);
    for (int i = 0; i < sp.dim(); ++i)
        for (int j = 0; j < sp.dim(); ++j) {
            if (!m.known(i, j)) { g.prod.set_unknown(pos[i], pos[j]); continue; }
            Element v = m.entry(i, j);
            Bidegree t = sp.bd(i) + sp.bd(j) + m.shift;
            Element c2 = w_first ? comp_w_then_f(sp, v, t.wt2, t.deg)
                                 : comp_f_then_w(sp, v, t.deg, t.wt2);
            g.prod.set(pos[i], pos[j], translate(c2));
        }
    g.d = zero_map(g.sp, g.sp, {1, 0});
    for (int i = 0; i < sp.dim(); ++i) {
        Element v = c.d.col(i);
        Bidegree t = sp.bd(i) + Bidegree{1, 0};
        Element c2 = w_first ? comp_w_then_f(sp, v, t.wt2, t.deg)
                             : comp_f_then_w(sp, v, t.deg, t.wt2);
        g.d.cols[pos[i]] = translate(c2);
    }
    return g;
}

} // namespace

DoubleGr double_gr(const Complex& c, const BilinTable& m) {
    const Space& sp = *c.sp;
    DoubleGr out;
    out.w_then_f = build_gr(c, m, true);
    out.f_then_w = build_gr(c, m, false);
    const Space& A = out.w_then_f.sp;
    const Space& B = out.f_then_w.sp;

    out.iso.name = "double_gr_identification";
    out.iso.matrix = zero_map(A, B, {0, 0});
    for (int i = 0; i < A.dim(); ++i)
        out.iso.matrix.cols[i] = unit_elem(B.find(A.ids[i]));
    CheckReport& rep = out.iso.checks;
    rep.name = "double_gr";
    rep.check("bijective", image(out.iso.matrix).dim() == B.dim() && A.dim() == B.dim(),
              "identification is not a bijection");

    // per-layer dimensions through explicit subspace chains:
    //   dim gr(p,n) = dim span(F<=p, W<=n) - dim(span(F<=p-1, W<=n) + span(F<=p, W<=n-1))
    auto span_le = [&](int p, int n) {
        std::vector<Element> gens;
        for (int i = 0; i < sp.dim(); ++i)
            if (sp.bd(i).deg <= p && sp.bd(i).wt2 <= n) gens.push_back(unit_elem(i));
        return row_reduce(sp, gens);
    };
    std::map<std::pair<int, int>, int> dims_chain;
    std::set<std::pair<int, int>> layers;
    for (int i = 0; i < sp.dim(); ++i) layers.insert({sp.bd(i).wt2, sp.bd(i).deg});
    for (auto& [n, p] : layers) {
        Subspace full = span_le(p, n);
        Subspace lowF = span_le(p - 1, n);
        std::vector<Element> gens;
        for (auto& r : lowF.rows()) gens.push_back(r);
        for (int i = 0; i < sp.dim(); ++i)
            if (sp.bd(i).deg <= p && sp.bd(i).wt2 < n) gens.push_back(unit_elem(i));
        Subspace lower = row_reduce(sp, gens);
        dims_chain[{p, n}] = full.dim() - lower.dim();
    }
    std::map<std::pair<int, int>, int> dims_a, dims_b;
    for (int i = 0; i < A.dim(); ++i) ++dims_a[{A.bd(i).deg, A.bd(i).wt2}];
    for (int i = 0; i < B.dim(); ++i) ++dims_b[{B.bd(i).deg, B.bd(i).wt2}];
    for (auto& [key, dim] : dims_chain) {
        bool good = dims_a[key] == dim && dims_b[key] == dim;
        rep.check("layer_dims", good,
                  "layer (deg " + std::to_string(key.first) + ", wt2 " +
                      std::to_string(key.second) + ") " + std::to_string(dims_a[key]) + "/" +
                      std::to_string(dims_b[key]) + " vs chain " + std::to_string(dim));
        out.layer_dims_a.push_back({Bidegree{key.first, key.second}, dims_a[key]});
        out.layer_dims_b.push_back({Bidegree{key.first, key.second}, dims_b[key]});
    }

    // structure constants must agree under the identification
    auto tr = [&](const Element& v) { return out.iso.matrix.apply(v); };
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j) {
            int bi = B.find(A.ids[i]), bj = B.find(A.ids[j]);
            if (!out.w_then_f.prod.known(i, j) || !out.f_then_w.prod.known(bi, bj)) {
                rep.skip("product_match");
                continue;
            }
            Element diff = tr(out.w_then_f.prod.entry(i, j));
            diff.axpy(-1, out.f_then_w.prod.entry(bi, bj));
            rep.check("product_match", diff.zero(), ids2(A, i, A, j));
        }
    for (int i = 0; i < A.dim(); ++i) {
        Element diff = tr(out.w_then_f.d.col(i));
        diff.axpy(-1, out.f_then_w.d.col(B.find(A.ids[i])));
        rep.check("chain_map", diff.zero(), "d at " + A.ids[i]);
    }
    return out;
}

} // namespace dgva
