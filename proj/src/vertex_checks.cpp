#include "dgva/vertex_checks.hpp"

#include "dgva/complex.hpp"

#include <algorithm>

namespace dgva {

namespace {

long long fdiv2(long long x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

Rat factorial(int k) {
    Rat f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

/* acc += c * u[n]y for a basis index u and an element y; false on unknown */
template <class Peek>
bool apply_right(const Peek& pk, int u, int n, const Element& y, const Rat& c, Element& acc) {
    for (auto& [j, cj] : y.t) {
        auto [known, r] = pk(u, n, j);
        if (!known) return false;
        if (r) acc.axpy(c * cj, *r);
    }
    return true;
}

/* acc += c * x[n]w for an element x and a basis index w */
template <class Peek>
bool apply_left(const Peek& pk, const Element& x, int n, int w, const Rat& c, Element& acc) {
    for (auto& [i, ci] : x.t) {
        auto [known, r] = pk(i, n, w);
        if (!known) return false;
        if (r) acc.axpy(c * ci, *r);
    }
    return true;
}

/* acc += c * x[n]y for two elements */
template <class Peek>
bool apply_both(const Peek& pk, const Element& x, int n, const Element& y, const Rat& c, Element& acc) {
    for (auto& [i, ci] : x.t)
        if (!apply_right(pk, i, n, y, c * ci, acc)) return false;
    return true;
}

enum JacRc { kVerified = 0, kSkip = 1, kInstant = 2, kCapHit = 3 };

/* One instance of the component Jacobi identity
 *   sum_i (-1)^i C(l,i) (u[m+l-i](v[n+i]w) - (-1)^l (-1)^{|u||v|} v[n+l-i](u[m+i]w))
 *     = sum_i C(m,i) (u[l+i]v)[m+n-i] w
 * over basis indices u, v in the algebra and w in the target space (the
 * algebra itself or a module).  Series bounds come from the window's top mode
 * and from the weight at which results become provably zero. */
template <class PeekA, class PeekT>
JacRc jacobi_instance(const Space& asp, const Space& tsp,
                      int aw_min, int ahi, int tw_min, int tw_max, int thi,
                      const PeekA& pa, const PeekT& pt,
                      int u, int v, int w, int l, int m, int n,
                      long long cap, Element& diff) {
    const int wtu = asp.bd(u).wt2, wtv = asp.bd(v).wt2;
    const int wtw = tsp.bd(w).wt2;
    const int total = wtu + wtv + wtw - 2 * (l + m + n) - 4;
    if (total > tw_max) return kSkip;
    if (total < tw_min) return kInstant;

    Element acc;
    // side A: u[m+l-i](v[n+i]w)
    {
        long long istop = std::min<long long>(thi - n, fdiv2(wtv + wtw - tw_min - 2 * (n + 1)));
        if (l >= 0) istop = std::min<long long>(istop, l);
        if (istop > cap) return kCapHit;
        for (long long i = 0; i <= istop; ++i) {
            auto [known, inner] = pt(v, (int)(n + i), w);
            if (!known) return kSkip;
            if (!inner || inner->t.empty()) continue;
            Rat c = binom(l, i);
            if (c == 0) continue;
            if (i & 1) c = -c;
            if (!apply_right(pt, u, (int)(m + l - i), *inner, c, acc)) return kSkip;
        }
    }
    // side B: -(-1)^l (-1)^{|u||v|} v[n+l-i](u[m+i]w)
    {
        const int s = -sign_pow(l) * sign_pow((long long)asp.bd(u).deg * asp.bd(v).deg);
        long long istop = std::min<long long>(thi - m, fdiv2(wtu + wtw - tw_min - 2 * (m + 1)));
        if (l >= 0) istop = std::min<long long>(istop, l);
        if (istop > cap) return kCapHit;
        for (long long i = 0; i <= istop; ++i) {
            auto [known, inner] = pt(u, (int)(m + i), w);
            if (!known) return kSkip;
            if (!inner || inner->t.empty()) continue;
            Rat c = binom(l, i) * s;
            if (c == 0) continue;
            if (i & 1) c = -c;
            if (!apply_right(pt, v, (int)(n + l - i), *inner, c, acc)) return kSkip;
        }
    }
    // right-hand side, subtracted: (u[l+i]v)[m+n-i] w
    {
        long long istop = std::min<long long>(ahi - l, fdiv2(wtu + wtv - aw_min - 2 * (l + 1)));
        if (m >= 0) istop = std::min<long long>(istop, m);
        if (istop > cap) return kCapHit;
        for (long long i = 0; i <= istop; ++i) {
            auto [known, mid] = pa(u, (int)(l + i), v);
            if (!known) return kSkip;
            if (!mid || mid->t.empty()) continue;
            Rat c = -binom(m, i);
            if (c == 0) continue;
            if (!apply_left(pt, *mid, (int)(m + n - i), w, c, acc)) return kSkip;
        }
    }
    diff = std::move(acc);
    return kVerified;
}

template <class PeekA, class PeekT>
void jacobi_scan(CheckReport& rep, const std::string& family,
                 const Space& asp, const Space& tsp,
                 int aw_min, int ahi, int tw_min, int tw_max, int thi,
                 const PeekA& pa, const PeekT& pt, JacobiBox box, long long cap) {
    CheckLine& ln = rep.family(family);
    Element diff;
    for (int u = 0; u < asp.dim(); ++u)
        for (int v = 0; v < asp.dim(); ++v)
            for (int w = 0; w < tsp.dim(); ++w)
                for (int l = box.lo; l <= box.hi; ++l)
                    for (int m = box.lo; m <= box.hi; ++m)
                        for (int n = box.lo; n <= box.hi; ++n) {
                            JacRc rc = jacobi_instance(asp, tsp, aw_min, ahi, tw_min, tw_max,
                                                       thi, pa, pt, u, v, w, l, m, n, cap, diff);
                            if (rc == kSkip) { ++ln.skipped; continue; }
                            if (rc == kCapHit) {
                                rep.fail("series_cap", "(" + asp.ids[u] + ", " + asp.ids[v] +
                                                           ", " + tsp.ids[w] + ")");
                                continue;
                            }
                            ++ln.checked;
                            if (rc == kInstant || diff.zero()) { ++ln.passed; continue; }
                            if (ln.witness.empty())
                                ln.witness = "(" + asp.ids[u] + ", " + asp.ids[v] + ", " +
                                             tsp.ids[w] + ", " + std::to_string(l) + ", " +
                                             std::to_string(m) + ", " + std::to_string(n) + ")";
                        }
    if (ln.checked + ln.skipped > 0)
        rep.note(family + " coverage=" +
                 std::to_string(100 * ln.checked / (ln.checked + ln.skipped)) + "%");
}

std::string pair_str(const Space& a, int u, int n, const Space& b, int v) {
    return mode_str(a, u, n, b, v);
}

} // namespace

/* ------------------------------------------------------------------ */
/*  full axiom suite                                                   */
/* ------------------------------------------------------------------ */

CheckReport check_vertex_axioms(const VertexModel& m, JacobiBox box) {
    CheckReport rep;
    rep.name = "vertex_axioms";
    const Space& sp = m.sp;
    const int dim = sp.dim();
    auto pk = [&m](int u, int n, int v) { return m.peek(u, n, v); };
    const long long cap = std::max(2LL * m.wt2_max, 16LL);

    // stored entries obey the bidegree law
    for (auto& [key, val] : m.tab) {
        auto [u, n, v] = key;
        Bidegree want = sp.bd(u) + sp.bd(v) + Bidegree{-2 * n - 2, -2 * (n + 1)};
        bool good = true;
        for (auto& [k, c] : val.t)
            if (sp.bd(k) != want) good = false;
        rep.check("bidegree", good, pair_str(sp, u, n, sp, v));
        rep.check("truncation",
                  val.t.empty() || 2LL * n <= (long long)sp.bd(u).wt2 + sp.bd(v).wt2 - m.wt2_min - 2,
                  pair_str(sp, u, n, sp, v) + " nonzero beyond its weight bound");
    }

    // the differential is a square-zero map of shift (+1, 0)
    {
        Complex c{&sp, m.d_map()};
        rep.absorb(check_complex(c, m.wt2_max));
    }

    // vacuum: d(1) = 0 and 1[n]v = v when n = -1, else 0
    {
        rep.check("vacuum", m.vacuum >= 0 && m.d_apply(unit_elem(m.vacuum)).zero(), "d(vacuum)");
        for (int v = 0; v < dim; ++v)
            for (int n = m.mode_lo; n <= m.mode_hi; ++n) {
                auto [known, r] = pk(m.vacuum, n, v);
                if (!known) { rep.skip("vacuum"); continue; }
                Element got = r ? *r : Element{};
                Element want = n == -1 ? unit_elem(v) : Element{};
                rep.check("vacuum", got == want, pair_str(sp, m.vacuum, n, sp, v));
            }
    }

    // creation: v[-k-1]1 = D^k(v)/k!, v[n]1 = 0 for n >= 0
    for (int v = 0; v < dim; ++v)
        for (int n = m.mode_lo; n <= m.mode_hi; ++n) {
            auto [known, r] = pk(v, n, m.vacuum);
            if (!known) { rep.skip("creation"); continue; }
            Element got = r ? *r : Element{};
            std::optional<Element> want;
            if (n >= 0) want = Element{};
            else {
                int k = -n - 1;
                want = unit_elem(v);
                for (int j = 0; j < k && want; ++j) want = m.translate(*want);
                if (want) *want *= Rat(1) / factorial(k);
            }
            if (!want) { rep.skip("creation"); continue; }
            rep.check("creation", got == *want, pair_str(sp, v, n, sp, m.vacuum));
        }

    // chain rule: d(v[n]u) = (dv)[n]u + (-1)^{|v|} v[n](du)
    for (int v = 0; v < dim; ++v) {
        const Element& dv = m.dcols[v];
        for (int u = 0; u < dim; ++u) {
            const Element& du = m.dcols[u];
            for (int n = m.mode_lo; n <= m.mode_hi; ++n) {
                auto [known, r] = pk(v, n, u);
                if (!known) { rep.skip("chain_rule"); continue; }
                Element diff = m.d_apply(r ? *r : Element{});
                if (!apply_left(pk, dv, n, u, Rat(-1), diff) ||
                    !apply_right(pk, v, n, du, Rat(-sign_pow(sp.bd(v).deg)), diff)) {
                    rep.skip("chain_rule");
                    continue;
                }
                rep.check("chain_rule", diff.zero(),
                          pair_str(sp, v, n, sp, u) + " diff=" + elem_str(sp, diff));
            }
        }
    }

    // for cocycles u, the map v -> v[n]u is a chain map
    {
        Subspace ker = kernel(m.d_map());
        for (auto& u_el : ker.rows())
            for (int v = 0; v < dim; ++v)
                for (int n = m.mode_lo; n <= m.mode_hi; ++n) {
                    Element vnu;
                    if (!apply_right(pk, v, n, u_el, Rat(1), vnu)) {
                        rep.skip("cocycle_chain_map");
                        continue;
                    }
                    Element diff = m.d_apply(vnu);
                    if (!apply_both(pk, m.dcols[v], n, u_el, Rat(-1), diff)) {
                        rep.skip("cocycle_chain_map");
                        continue;
                    }
                    rep.check("cocycle_chain_map", diff.zero(),
                              sp.ids[v] + "[" + std::to_string(n) + "](cocycle)");
                }
    }

    // skew symmetry: u[n]v = (-1)^{|u||v|} sum_k (-1)^{n+k+1} D^k(v[n+k]u)/k!
    for (int u = 0; u < dim; ++u)
        for (int v = 0; v < dim; ++v) {
            int koszul = sign_pow((long long)sp.bd(u).deg * sp.bd(v).deg);
            for (int n = m.mode_lo; n <= m.mode_hi; ++n) {
                auto [known, r] = pk(u, n, v);
                if (!known) { rep.skip("skew"); continue; }
                Element diff = r ? *r : Element{};
                long long kstop = std::min<long long>(
                    m.mode_hi - n,
                    fdiv2(sp.bd(u).wt2 + sp.bd(v).wt2 - m.wt2_min - 2 * (n + 1)));
                bool ok = true;
                for (long long k = 0; k <= kstop && ok; ++k) {
                    auto [kn2, wk] = pk(v, (int)(n + k), u);
                    if (!kn2) { ok = false; break; }
                    if (!wk || wk->t.empty()) continue;
                    std::optional<Element> dk(*wk);
                    for (long long j = 0; j < k && dk; ++j) dk = m.translate(*dk);
                    if (!dk) { ok = false; break; }
                    diff.axpy(Rat(-koszul * sign_pow(n + k + 1)) / factorial((int)k), *dk);
                }
                if (!ok) { rep.skip("skew"); continue; }
                rep.check("skew", diff.zero(),
                          pair_str(sp, u, n, sp, v) + " diff=" + elem_str(sp, diff));
            }
        }

    // translation: (Dv)[n]u = -n v[n-1]u and D(v[n]u) - v[n](Du) = (Dv)[n]u
    for (int v = 0; v < dim; ++v) {
        std::optional<Element> Dv = m.translate(unit_elem(v));
        for (int u = 0; u < dim; ++u)
            for (int n = m.mode_lo; n <= m.mode_hi; ++n) {
                if (!Dv) { rep.skip("translation"); rep.skip("translation"); continue; }
                Element lhs;
                if (!apply_both(pk, *Dv, n, unit_elem(u), Rat(1), lhs)) {
                    rep.skip("translation");
                } else {
                    auto [kn, r] = pk(v, n - 1, u);
                    if (!kn) rep.skip("translation");
                    else {
                        Element rhs;
                        if (r) rhs.axpy(Rat(-n), *r);
                        rep.check("translation", lhs == rhs,
                                  "(D" + sp.ids[v] + ")[" + std::to_string(n) + "]" + sp.ids[u]);
                    }
                }
                // cocycle form
                auto [kn3, vnu] = pk(v, n, u);
                std::optional<Element> du = m.translate(unit_elem(u));
                std::optional<Element> dvnu =
                    kn3 ? m.translate(vnu ? *vnu : Element{}) : std::nullopt;
                if (!kn3 || !du || !dvnu) { rep.skip("translation"); continue; }
                Element diff = *dvnu;
                if (!apply_right(pk, v, n, *du, Rat(-1), diff) ||
                    !apply_both(pk, *Dv, n, unit_elem(u), Rat(-1), diff)) {
                    rep.skip("translation");
                    continue;
                }
                rep.check("translation", diff.zero(),
                          "D(" + pair_str(sp, v, n, sp, u) + ") cocycle");
            }
    }

    // component Jacobi identity over the requested box
    jacobi_scan(rep, "jacobi", sp, sp, m.wt2_min, m.mode_hi, m.wt2_min, m.wt2_max,
                m.mode_hi, pk, pk, box, cap);
    return rep;
}

/* ------------------------------------------------------------------ */
/*  conformal structure                                                */
/* ------------------------------------------------------------------ */

CheckReport check_conformal(const VertexModel& m, int vir_box) {
    CheckReport rep;
    rep.name = "conformal";
    if (!m.has_conf) {
        rep.fail("conformal_present", "conformal-missing");
        return rep;
    }
    const Space& sp = m.sp;
    const int dim = sp.dim();
    auto pk = [&m](int u, int n, int v) { return m.peek(u, n, v); };

    if (m.conformal < 0) {
        rep.note("degenerate conformal structure (conformal vector = 0)");
        rep.ok("conformal_bidegree");
        rep.ok("conformal_d");
    } else {
        rep.check("conformal_bidegree", sp.bd(m.conformal) == Bidegree{4, 4},
                  "conformal vector not in degree 4, weight 2");
        rep.check("conformal_d", m.d_apply(unit_elem(m.conformal)).zero(), "d(conformal)");
    }

    auto L = [&](int n, const Element& v) { return m.L(n, v); };

    // Virasoro: [L(a), L(b)] = (a-b)L(a+b) + delta_{a+b,0} (a^3-a)/12 c_V
    for (int a = -vir_box; a <= vir_box; ++a)
        for (int b = -vir_box; b <= vir_box; ++b)
            for (int w = 0; w < dim; ++w) {
                Element ew = unit_elem(w);
                auto lb = L(b, ew);
                auto la = L(a, ew);
                auto lab = lb ? L(a, *lb) : std::nullopt;
                auto lba = la ? L(b, *la) : std::nullopt;
                auto sum = L(a + b, ew);
                if (!lab || !lba || !sum) { rep.skip("virasoro"); continue; }
                Element diff = *lab - *lba;
                diff.axpy(Rat(b - a), *sum);
                if (a + b == 0)
                    diff.axpy(-Rat((long long)a * a * a - a) / 12 * m.cV, ew);
                rep.check("virasoro",
                          diff.zero(),
                          "[L(" + std::to_string(a) + "), L(" + std::to_string(b) + ")] on " +
                              sp.ids[w]);
            }

    // L(-1) = D and L(0) = weight
    for (int v = 0; v < dim; ++v) {
        Element ev = unit_elem(v);
        auto lm1 = L(-1, ev);
        auto dv = m.translate(ev);
        if (!lm1 || !dv) rep.skip("l_minus1");
        else rep.check("l_minus1", *lm1 == *dv, "L(-1) vs D on " + sp.ids[v]);
        auto l0 = L(0, ev);
        if (!l0) rep.skip("l_zero");
        else {
            Element want = Rat(sp.bd(v).wt2) / 2 * ev;
            rep.check("l_zero", *l0 == want, "L(0) on " + sp.ids[v]);
        }
    }

    // [L(-1), v[n]] = -n v[n-1] and [L(0), v[n]] = (wt(v)-n-1) v[n]
    for (int v = 0; v < dim; ++v)
        for (int u = 0; u < dim; ++u)
            for (int n = m.mode_lo; n <= m.mode_hi; ++n) {
                Element eu = unit_elem(u);
                auto [kn, vnu] = pk(v, n, u);
                Element vnu_e = kn && vnu ? *vnu : Element{};
                auto lm1u = L(-1, eu);
                auto l0u = L(0, eu);
                // L(-1) commutator
                do {
                    if (!kn || !lm1u) { rep.skip("mode_l_minus1"); break; }
                    auto top = L(-1, vnu_e);
                    if (!top) { rep.skip("mode_l_minus1"); break; }
                    Element diff = *top;
                    if (!apply_right(pk, v, n, *lm1u, Rat(-1), diff)) {
                        rep.skip("mode_l_minus1");
                        break;
                    }
                    auto [kn2, low] = pk(v, n - 1, u);
                    if (!kn2) { rep.skip("mode_l_minus1"); break; }
                    if (low) diff.axpy(Rat(n), *low);
                    rep.check("mode_l_minus1", diff.zero(),
                              "[L(-1), " + sp.ids[v] + "[" + std::to_string(n) + "]] on " +
                                  sp.ids[u]);
                } while (false);
                // L(0) commutator
                do {
                    if (!kn || !l0u) { rep.skip("mode_l_zero"); break; }
                    auto top = L(0, vnu_e);
                    if (!top) { rep.skip("mode_l_zero"); break; }
                    Element diff = *top;
                    if (!apply_right(pk, v, n, *l0u, Rat(-1), diff)) {
                        rep.skip("mode_l_zero");
                        break;
                    }
                    diff.axpy(-Rat(sp.bd(v).wt2 - 2 * n - 2) / 2, vnu_e);
                    rep.check("mode_l_zero", diff.zero(),
                              "[L(0), " + sp.ids[v] + "[" + std::to_string(n) + "]] on " +
                                  sp.ids[u]);
                } while (false);
            }
    return rep;
}

/* ------------------------------------------------------------------ */
/*  module axiom suite                                                 */
/* ------------------------------------------------------------------ */

CheckReport check_module_axioms(const VertexModel& V, const ModuleModel& M, JacobiBox box) {
    CheckReport rep;
    rep.name = "module_axioms";
    const Space& asp = V.sp;
    const Space& msp = M.sp;
    auto pa = [&V](int u, int n, int v) { return V.peek(u, n, v); };
    auto pt = [&M](int u, int n, int w) { return M.peek(u, n, w); };
    const long long cap = std::max(2LL * M.wt2_max, 16LL);

    for (auto& [key, val] : M.act) {
        auto [u, n, w] = key;
        Bidegree want = asp.bd(u) + msp.bd(w) + Bidegree{-2 * n - 2, -2 * (n + 1)};
        bool good = true;
        for (auto& [k, c] : val.t)
            if (msp.bd(k) != want) good = false;
        rep.check("bidegree", good, pair_str(asp, u, n, msp, w));
        rep.check("truncation",
                  val.t.empty() ||
                      2LL * n <= (long long)asp.bd(u).wt2 + msp.bd(w).wt2 - M.wt2_min - 2,
                  pair_str(asp, u, n, msp, w) + " nonzero beyond its weight bound");
    }

    {
        Complex c{&msp, M.d_map()};
        rep.absorb(check_complex(c, M.wt2_max));
    }

    // vacuum acts as the identity in mode -1, zero otherwise
    for (int w = 0; w < msp.dim(); ++w)
        for (int n = M.mode_lo; n <= M.mode_hi; ++n) {
            auto [known, r] = pt(V.vacuum, n, w);
            if (!known) { rep.skip("vacuum"); continue; }
            Element got = r ? *r : Element{};
            Element want = n == -1 ? unit_elem(w) : Element{};
            rep.check("vacuum", got == want, pair_str(asp, V.vacuum, n, msp, w));
        }

    // chain rule: d_M(v[n]w) = (dv)[n]w + (-1)^{|v|} v[n](d_M w)
    for (int v = 0; v < asp.dim(); ++v) {
        const Element& dv = V.dcols[v];
        for (int w = 0; w < msp.dim(); ++w) {
            const Element& dw = M.dcols[w];
            for (int n = M.mode_lo; n <= M.mode_hi; ++n) {
                auto [known, r] = pt(v, n, w);
                if (!known) { rep.skip("chain_rule"); continue; }
                Element diff = M.d_apply(r ? *r : Element{});
                if (!apply_left(pt, dv, n, w, Rat(-1), diff) ||
                    !apply_right(pt, v, n, dw, Rat(-sign_pow(asp.bd(v).deg)), diff)) {
                    rep.skip("chain_rule");
                    continue;
                }
                rep.check("chain_rule", diff.zero(),
                          pair_str(asp, v, n, msp, w) + " diff=" + elem_str(msp, diff));
            }
        }
    }

    jacobi_scan(rep, "jacobi", asp, msp, V.wt2_min, V.mode_hi, M.wt2_min, M.wt2_max,
                M.mode_hi, pa, pt, box, cap);

    // conformal commutators acting on the module
    if (V.has_conf) {
        auto L = [&](int n, const Element& x) { return M.L(n, x); };
        for (int v = 0; v < asp.dim(); ++v)
            for (int w = 0; w < msp.dim(); ++w)
                for (int n = M.mode_lo; n <= M.mode_hi; ++n) {
                    Element ew = unit_elem(w);
                    auto [kn, vnw] = pt(v, n, w);
                    Element vnw_e = kn && vnw ? *vnw : Element{};
                    auto lm1w = L(-1, ew);
                    auto l0w = L(0, ew);
                    do {
                        if (!kn || !lm1w) { rep.skip("mode_l_minus1"); break; }
                        auto top = L(-1, vnw_e);
                        if (!top) { rep.skip("mode_l_minus1"); break; }
                        Element diff = *top;
                        if (!apply_right(pt, v, n, *lm1w, Rat(-1), diff)) {
                            rep.skip("mode_l_minus1");
                            break;
                        }
                        auto [kn2, low] = pt(v, n - 1, w);
                        if (!kn2) { rep.skip("mode_l_minus1"); break; }
                        if (low) diff.axpy(Rat(n), *low);
                        rep.check("mode_l_minus1", diff.zero(),
                                  "[L(-1), " + asp.ids[v] + "[" + std::to_string(n) + "]] on " +
                                      msp.ids[w]);
                    } while (false);
                    do {
                        if (!kn || !l0w) { rep.skip("mode_l_zero"); break; }
                        auto top = L(0, vnw_e);
                        if (!top) { rep.skip("mode_l_zero"); break; }
                        Element diff = *top;
                        if (!apply_right(pt, v, n, *l0w, Rat(-1), diff)) {
                            rep.skip("mode_l_zero");
                            break;
                        }
                        diff.axpy(-Rat(asp.bd(v).wt2 - 2 * n - 2) / 2, vnw_e);
                        rep.check("mode_l_zero", diff.zero(),
                                  "[L(0), " + asp.ids[v] + "[" + std::to_string(n) + "]] on " +
                                      msp.ids[w]);
                    } while (false);
                }
    }
    return rep;
}

} // namespace dgva
