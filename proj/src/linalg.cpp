#include "dgva/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace dgva {

/* ------------------------------------------------------------------ */
/*  RawEchelon                                                         */
/* ------------------------------------------------------------------ */

Element RawEchelon::reduce(Element v) const {
    for (size_t j = 0; j < rows.size() && !v.zero(); ++j) {
        auto it = v.t.find(piv[j]);
        if (it == v.t.end()) continue;
        v.axpy(-it->second, rows[j]);
    }
    return v;
}

Element RawEchelon::reduce_tracked(Element v, std::vector<Rat>& used) const {
    used.assign(rows.size(), Rat(0));
    for (size_t j = 0; j < rows.size() && !v.zero(); ++j) {
        auto it = v.t.find(piv[j]);
        if (it == v.t.end()) continue;
        used[j] = it->second;
        v.axpy(-used[j], rows[j]);
    }
    return v;
}

int RawEchelon::add(Element v) {
    v = reduce(std::move(v));
    if (v.zero()) return -1;
    int p = v.t.begin()->first;
    v *= Rat(1) / v.t.begin()->second;
    // eliminate the new pivot from existing rows, then insert by pivot order
    for (auto& r : rows) {
        auto it = r.t.find(p);
        if (it != r.t.end()) r.axpy(-it->second, v);
    }
    auto pos = std::lower_bound(piv.begin(), piv.end(), p);
    size_t k = pos - piv.begin();
    piv.insert(pos, p);
    rows.insert(rows.begin() + k, std::move(v));
    return (int)k;
}

/* ------------------------------------------------------------------ */
/*  Subspace ops                                                       */
/* ------------------------------------------------------------------ */

int Subspace::dim_at(Bidegree bd) const {
    int n = 0;
    for (auto& r : ech.rows) {
        auto b = homo_bd(*amb, r);
        if (b && *b == bd) ++n;
    }
    return n;
}

Subspace row_reduce(const Space& sp, const std::vector<Element>& vectors) {
    Subspace s;
    s.amb = &sp;
    for (auto& v : vectors) s.ech.add(v);
    return s;
}

Membership membership(const Element& v, const Subspace& s) {
    Membership m;
    m.residue = s.ech.reduce_tracked(v, m.coords);
    m.member = m.residue.zero();
    if (!m.member) m.coords.clear();
    return m;
}

// Zassenhaus: echelonize rows (a, a) for a in A and (b, 0) for b in B over
// doubled columns; rows with zero left half have right halves spanning the
// intersection.
Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.amb != b.amb) throw std::runtime_error("intersect: ambient mismatch");
    int n = a.amb->dim();
    RawEchelon e;
    auto lift = [&](const Element& v, bool both) {
        Element w;
        for (auto& [i, c] : v.t) {
            w.t.emplace(i, c);
            if (both) w.t.emplace(i + n, c);
        }
        return w;
    };
    for (auto& r : a.rows()) e.add(lift(r, true));
    for (auto& r : b.rows()) e.add(lift(r, false));
    Subspace out;
    out.amb = a.amb;
    for (auto& r : e.rows) {
        if (r.t.begin()->first < n) continue; // nonzero left half
        Element v;
        for (auto& [i, c] : r.t) v.t.emplace(i - n, c);
        out.ech.add(v);
    }
    return out;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.amb != b.amb) throw std::runtime_error("sum: ambient mismatch");
    Subspace out;
    out.amb = a.amb;
    for (auto& r : a.rows()) out.ech.add(r);
    for (auto& r : b.rows()) out.ech.add(r);
    return out;
}

/* ------------------------------------------------------------------ */
/*  Solver                                                             */
/* ------------------------------------------------------------------ */

bool Solver::add_gen(const Element& g) {
    Element v = g, coord = unit_elem(n_gens);
    ++n_gens;
    for (size_t j = 0; j < rows.size() && !v.zero(); ++j) {
        auto it = v.t.find(piv[j]);
        if (it == v.t.end()) continue;
        Rat c = it->second;
        v.axpy(-c, rows[j]);
        coord.axpy(-c, coords[j]);
    }
    if (v.zero()) return false;
    int p = v.t.begin()->first;
    Rat inv = Rat(1) / v.t.begin()->second;
    v *= inv;
    coord *= inv;
    for (size_t j = 0; j < rows.size(); ++j) {
        auto it = rows[j].t.find(p);
        if (it == rows[j].t.end()) continue;
        Rat c = it->second;
        rows[j].axpy(-c, v);
        coords[j].axpy(-c, coord);
    }
    auto pos = std::lower_bound(piv.begin(), piv.end(), p);
    size_t k = pos - piv.begin();
    piv.insert(pos, p);
    rows.insert(rows.begin() + k, std::move(v));
    coords.insert(coords.begin() + k, std::move(coord));
    return true;
}

std::optional<Element> Solver::express(const Element& v) const {
    Element rem = v, coord;
    for (size_t j = 0; j < rows.size() && !rem.zero(); ++j) {
        auto it = rem.t.find(piv[j]);
        if (it == rem.t.end()) continue;
        Rat c = it->second;
        rem.axpy(-c, rows[j]);
        coord.axpy(c, coords[j]);
    }
    if (!rem.zero()) return std::nullopt;
    return coord;
}

} // namespace dgva
