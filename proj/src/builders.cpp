#include "dgva/builders.hpp"

#include <algorithm>
#include <stdexcept>

namespace dgva {

/* ------------------------------------------------------------------ */
/*  exponential-translation construction                               */
/* ------------------------------------------------------------------ */

namespace {

Element mul_table(const std::map<std::pair<int, int>, Element>& prod,
                  const Element& x, const Element& y) {
    Element out;
    for (auto& [i, ci] : x.t)
        for (auto& [j, cj] : y.t) {
            auto it = prod.find({i, j});
            if (it != prod.end()) out.axpy(ci * cj, it->second);
        }
    return out;
}

Element col_of(const std::vector<Element>& cols, int i) {
    return i < (int)cols.size() ? cols[i] : Element{};
}

Rat facto(int k) {
    Rat f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace

VertexModel build_comm_dg_algebra_va(const CommDgAlgebraInput& in) {
    VertexModel m;
    m.name = in.name;
    m.sp.name = in.name;
    for (auto& [id, bd] : in.basis) m.sp.add(id, bd);
    const int dim = m.sp.dim();
    m.dcols.resize(dim);
    for (int i = 0; i < dim && i < (int)in.dcols.size(); ++i) m.dcols[i] = in.dcols[i];
    m.vacuum = in.unit;
    m.wt2_max = in.wt2_max;
    m.mode_lo = in.mode_lo;
    m.mode_hi = in.mode_hi;
    m.set_wt2_min();

    auto mul = [&](const Element& x, const Element& y) { return mul_table(in.prod, x, y); };
    auto D = [&](const Element& x) {
        Element out;
        for (auto& [i, c] : x.t) out.axpy(c, col_of(in.Dcols, i));
        return out;
    };
    auto d = [&](const Element& x) {
        Element out;
        for (auto& [i, c] : x.t) out.axpy(c, col_of(in.dcols, i));
        return out;
    };

    // preconditions
    Element one = unit_elem(in.unit);
    if (m.sp.bd(in.unit) != Bidegree{0, 0})
        throw std::runtime_error(in.name + ": unit is not in bidegree (0, 0)");
    if (!d(one).zero()) throw std::runtime_error(in.name + ": d(unit) != 0");
    if (!D(one).zero()) throw std::runtime_error(in.name + ": D(unit) != 0");
    for (int i = 0; i < dim; ++i) {
        Element ei = unit_elem(i);
        if (!d(d(ei)).zero()) throw std::runtime_error(in.name + ": d^2 != 0");
        Element dD = d(D(ei)) - D(d(ei));
        if (!dD.zero()) throw std::runtime_error(in.name + ": D does not commute with d");
        for (auto& [k, c] : D(ei).t)
            if (m.sp.bd(k) != m.sp.bd(i) + Bidegree{2, 2})
                throw std::runtime_error(in.name + ": D is not homogeneous of bidegree (+2, +2)");
        Element du = mul(one, ei) - ei;
        Element du2 = mul(ei, one) - ei;
        if (!du.zero() || !du2.zero()) throw std::runtime_error(in.name + ": unit law fails");
        // nilpotency of D on the window
        Element it = ei;
        for (int k = 0; k <= dim && !it.zero(); ++k) it = D(it);
        if (!it.zero()) throw std::runtime_error(in.name + ": D is not nilpotent on the window");
        for (int j = 0; j < dim; ++j) {
            Element ej = unit_elem(j);
            Element comm = mul(ei, ej);
            comm.axpy(-sign_pow((long long)m.sp.bd(i).deg * m.sp.bd(j).deg), mul(ej, ei));
            if (!comm.zero()) throw std::runtime_error(in.name + ": product is not commutative");
            Element der = D(mul(ei, ej)) - mul(D(ei), ej) - mul(ei, D(ej));
            if (!der.zero()) throw std::runtime_error(in.name + ": D is not a derivation");
            Element lei = d(mul(ei, ej)) - mul(d(ei), ej);
            lei.axpy(-sign_pow(m.sp.bd(i).deg), mul(ei, d(ej)));
            if (!lei.zero()) throw std::runtime_error(in.name + ": d is not a derivation");
            for (int k = 0; k < dim; ++k) {
                Element as = mul(mul(ei, ej), unit_elem(k)) - mul(ei, mul(ej, unit_elem(k)));
                if (!as.zero()) throw std::runtime_error(in.name + ": product is not associative");
            }
        }
    }

    // modes a[-1-k]b = D^k(a) b / k!
    for (int a = 0; a < dim; ++a) {
        Element Dka = unit_elem(a);
        for (int k = 0; -1 - k >= in.mode_lo; ++k) {
            if (k > 0) Dka = D(Dka);
            if (Dka.zero()) break;
            int n = -1 - k;
            int rw = m.sp.bd(a).wt2 + 2 * k;  // result wt2 offset before adding wt2(b)
            for (int b = 0; b < dim; ++b) {
                if (rw + m.sp.bd(b).wt2 > in.wt2_max) continue;
                Element e = mul(Dka, unit_elem(b));
                if (k > 1) e *= Rat(1) / facto(k);
                if (!e.zero()) m.tab[{a, n, b}] = e;
            }
        }
    }
    return m;
}

/* ------------------------------------------------------------------ */
/*  small corpus models                                                */
/* ------------------------------------------------------------------ */

VertexModel build_dual() {
    CommDgAlgebraInput in;
    in.name = "dual";
    in.basis = {{"one", {0, 0}}, {"x", {0, 0}}};
    in.unit = 0;
    in.prod[{0, 0}] = unit_elem(0);
    in.prod[{0, 1}] = unit_elem(1);
    in.prod[{1, 0}] = unit_elem(1);
    in.wt2_max = 0;
    in.mode_lo = -2;
    in.mode_hi = 2;
    return build_comm_dg_algebra_va(in);
}

VertexModel build_nilpotent_dg() {
    CommDgAlgebraInput in;
    in.name = "nilpotent-dg";
    in.basis = {{"one", {0, 0}}, {"s", {1, 0}}, {"t", {2, 0}}, {"st", {3, 0}}};
    in.unit = 0;
    for (int i = 0; i < 4; ++i) {
        in.prod[{0, i}] = unit_elem(i);
        if (i > 0) in.prod[{i, 0}] = unit_elem(i);
    }
    in.prod[{1, 2}] = unit_elem(3);  // s t = st
    in.prod[{2, 1}] = unit_elem(3);  // t s = st
    in.dcols.resize(4);
    in.dcols[1] = unit_elem(2);      // d(s) = t
    in.wt2_max = 0;
    in.mode_lo = -2;
    in.mode_hi = 2;
    VertexModel m = build_comm_dg_algebra_va(in);
    m.has_conf = true;
    m.conformal = -1;  // zero conformal vector
    m.cV = 0;
    return m;
}

/* ------------------------------------------------------------------ */
/*  rank-one free boson                                                */
/* ------------------------------------------------------------------ */

namespace {

using Partition = std::vector<int>;          // parts, descending
using FockVec = std::map<Partition, Rat>;    // state -> coefficient

void fock_axpy(FockVec& acc, const Rat& c, const FockVec& v) {
    for (auto& [p, cv] : v) {
        Rat& slot = acc[p];
        slot += c * cv;
        if (slot == 0) acc.erase(p);
    }
}

/* alpha_m with m > 0 removes one part equal to m (coefficient m * mult),
 * m < 0 prepends a part |m|, m = 0 kills the state */
FockVec fock_alpha(int m, const Partition& p, const Rat& c) {
    FockVec out;
    if (m == 0 || c == 0) return out;
    if (m < 0) {
        Partition q = p;
        q.insert(std::upper_bound(q.begin(), q.end(), -m, std::greater<int>()), -m);
        out[q] = c;
        return out;
    }
    int mult = (int)std::count(p.begin(), p.end(), m);
    if (mult == 0) return out;
    Partition q = p;
    q.erase(std::find(q.begin(), q.end(), m));
    out[q] = c * m * mult;
    return out;
}

int part_sum(const Partition& p) {
    int s = 0;
    for (int x : p) s += x;
    return s;
}

struct FockBuilder {
    int W;
    std::map<std::tuple<Partition, int, Partition>, FockVec> memo;

    /* modes of the state alpha_{-u1}...alpha_{-ur} vac acting on a pure state */
    const FockVec& mode(const Partition& u, int n, const Partition& v) {
        auto key = std::tuple{u, n, v};
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        FockVec out;
        if (u.empty()) {
            if (n == -1) out[v] = 1;
        } else {
            int k = u.front();
            Partition w(u.begin() + 1, u.end());
            int target = part_sum(w) + k + part_sum(v) - n - 1;
            if (target >= 0) {
                // creator part of the k-th derivative field
                for (int mm = -1; mm >= -target; --mm) {
                    Rat c = binom(-mm - 1, k - 1);
                    if (c == 0) continue;
                    const FockVec& inner = mode(w, n - mm - k, v);
                    for (auto& [p, cv] : inner) fock_axpy(out, Rat(1), fock_alpha(mm, p, c * cv));
                }
                // annihilator part: act on v first
                std::vector<int> seen;
                for (int part : v) {
                    if (std::count(seen.begin(), seen.end(), part)) continue;
                    seen.push_back(part);
                    FockVec va = fock_alpha(part, v, binom(-part - 1, k - 1));
                    for (auto& [p, cv] : va) {
                        const FockVec& inner = mode(w, n - part - k, p);
                        fock_axpy(out, cv, inner);
                    }
                }
            }
        }
        return memo.emplace(std::move(key), std::move(out)).first->second;
    }
};

std::string partition_id(const Partition& p) {
    if (p.empty()) return "vac";
    if (p == Partition{1, 1}) return "omega";
    std::string s = "p";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += "_";
        s += std::to_string(p[i]);
    }
    return s;
}

void enum_partitions(int n, int max_part, Partition& cur, std::vector<Partition>& out) {
    if (n == 0) { out.push_back(cur); return; }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        enum_partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

} // namespace

VertexModel build_heisenberg(int max_wt) {
    if (max_wt < 0) throw std::runtime_error("build_heisenberg: negative weight bound");
    const int W = max_wt;
    VertexModel m;
    m.name = "heisenberg" + std::to_string(W);
    m.sp.name = m.name;

    std::vector<Partition> parts_by_idx;
    for (int n = 0; n <= W; ++n) {
        std::vector<Partition> pn;
        Partition cur;
        enum_partitions(n, n == 0 ? 1 : n, cur, pn);
        std::sort(pn.begin(), pn.end());
        for (auto& p : pn) {
            m.sp.add(partition_id(p), Bidegree{2 * n, 2 * n});
            parts_by_idx.push_back(p);
        }
    }
    const int dim = m.sp.dim();
    m.dcols.assign(dim, Element{});
    m.vacuum = m.sp.find("vac");
    m.has_conf = W >= 2;  // omega has weight 2 and only fits in windows that wide
    m.conformal = W >= 2 ? m.sp.find("omega") : -1;
    m.cV = 1;
    m.wt2_max = 2 * W;
    m.mode_lo = -(W + 1);
    m.mode_hi = 2 * W - 1;
    m.set_wt2_min();

    // basis vector -> Fock combination (omega is half the [1,1] state)
    auto fock_of = [&](int i) -> std::vector<std::pair<Rat, Partition>> {
        if ((int)parts_by_idx[i].size() == 2 && parts_by_idx[i] == Partition{1, 1})
            return {{Rat(1) / 2, Partition{1, 1}}};
        return {{Rat(1), parts_by_idx[i]}};
    };
    std::map<Partition, int> idx_of;
    for (int i = 0; i < dim; ++i) idx_of[parts_by_idx[i]] = i;
    auto to_elem = [&](const FockVec& v) {
        Element e;
        for (auto& [p, c] : v) {
            auto it = idx_of.find(p);
            if (it == idx_of.end())
                throw std::runtime_error("build_heisenberg: state outside the window");
            // the [1,1] state equals 2 omega
            e.add(it->second, p == Partition{1, 1} ? c * 2 : c);
        }
        return e;
    };

    FockBuilder fb{W, {}};
    for (int u = 0; u < dim; ++u)
        for (int v = 0; v < dim; ++v) {
            int wtsum = (m.sp.bd(u).wt2 + m.sp.bd(v).wt2) / 2;
            for (int n = m.mode_lo; n <= m.mode_hi; ++n) {
                int rw = wtsum - n - 1;
                if (rw < 0 || rw > W) continue;
                FockVec acc;
                for (auto& [cu, pu] : fock_of(u))
                    for (auto& [cv, pv] : fock_of(v))
                        fock_axpy(acc, cu * cv, fb.mode(pu, n, pv));
                Element e = to_elem(acc);
                if (!e.zero()) m.tab[{u, n, v}] = e;
            }
        }
    return m;
}

/* ------------------------------------------------------------------ */
/*  classical import                                                   */
/* ------------------------------------------------------------------ */

VertexModel import_classical_voa(const ClassicalDescription& d) {
    VertexModel m;
    m.name = d.name;
    m.sp.name = d.name;
    auto wt2_of = [&](const Rat& w) {
        Rat two = w * 2;
        if (denominator(two) != 1)
            throw std::runtime_error(d.name + ": weights must be half-integers");
        return (int)(long long)numerator(two);
    };
    for (auto& [id, w] : d.basis) {
        int w2 = wt2_of(w);
        m.sp.add(id, Bidegree{w2, w2});
    }
    const int dim = m.sp.dim();
    m.dcols.assign(dim, Element{});
    m.vacuum = m.sp.find(d.vacuum);
    if (m.vacuum < 0) throw std::runtime_error(d.name + ": vacuum id not declared");
    m.has_conf = d.has_conformal;
    if (d.has_conformal && !d.conformal.empty()) {
        m.conformal = m.sp.find(d.conformal);
        if (m.conformal < 0) throw std::runtime_error(d.name + ": conformal id not declared");
    } else {
        m.conformal = -1;
    }
    m.cV = d.central_charge;
    m.wt2_max = wt2_of(d.wt_max);
    m.mode_lo = d.mode_lo;
    m.mode_hi = d.mode_hi;
    m.set_wt2_min();

    for (auto& [key, combo] : d.modes) {
        auto& [uid, n, vid] = key;
        int u = m.sp.find(uid), v = m.sp.find(vid);
        if (u < 0 || v < 0) throw std::runtime_error(d.name + ": mode uses undeclared id");
        Element e;
        for (auto& [c, id] : combo) {
            int k = m.sp.find(id);
            if (k < 0) throw std::runtime_error(d.name + ": mode value uses undeclared id");
            e.add(k, c);
        }
        Bidegree want = m.sp.bd(u) + m.sp.bd(v) + Bidegree{-2 * n - 2, -2 * (n + 1)};
        for (auto& [k, c] : e.t)
            if (m.sp.bd(k) != want)
                throw std::runtime_error(d.name + ": bidegree law violated at " +
                                         mode_str(m.sp, u, n, m.sp, v));
        if (!e.zero()) m.tab[{u, n, v}] = e;
    }
    return m;
}

} // namespace dgva
