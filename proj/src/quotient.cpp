#include "dgva/quotient.hpp"

#include <map>
#include <stdexcept>

namespace dgva {

std::optional<Element> QuotientPresentation::project(const Element& v) const {
    auto coords = solver.express(v);
    if (!coords) return std::nullopt;
    Element q;
    for (size_t k = 0; k < rep_pos.size(); ++k) {
        Rat c = coords->coeff(rep_pos[k]);
        if (c != 0) q.t.emplace((int)k, c);
    }
    return q;
}

Element QuotientPresentation::lift(const Element& q) const {
    Element v;
    for (auto& [i, c] : q.t) v.axpy(c, reps.at(i));
    return v;
}

static void seed_sub(QuotientPresentation& qp, const Subspace& s) {
    qp.sub = s;
    for (auto& r : s.rows()) qp.solver.add_gen(r);
}

QuotientPresentation quotient_present(const Space& sp, const Subspace& s) {
    if (s.amb && s.amb != &sp) throw std::runtime_error("quotient: ambient mismatch");
    QuotientPresentation qp;
    qp.amb = &sp;
    qp.qspace.name = sp.name + "/sub";
    seed_sub(qp, s);
    for (int i = 0; i < sp.dim(); ++i) {
        Element e = unit_elem(i);
        int pos = qp.solver.n_gens;
        if (!qp.solver.add_gen(e)) continue;
        qp.qspace.add(sp.ids[i], sp.bd(i));
        qp.reps.push_back(e);
        qp.rep_pos.push_back(pos);
    }
    return qp;
}

QuotientPresentation quotient_present_rel(
    const Space& sp, const std::vector<Element>& gens, const Subspace& s,
    const std::function<std::string(int, const Element&)>& namer) {
    if (s.amb && s.amb != &sp) throw std::runtime_error("quotient: ambient mismatch");
    QuotientPresentation qp;
    qp.amb = &sp;
    qp.qspace.name = sp.name + "/sub";
    seed_sub(qp, s);
    std::map<std::string, int> seen;
    for (auto& g : gens) {
        auto bd = homo_bd(sp, g);
        if (!bd && !g.zero())
            throw std::runtime_error("quotient: inhomogeneous generator");
        int pos = qp.solver.n_gens;
        if (!qp.solver.add_gen(g)) continue;
        int k = (int)qp.reps.size();
        std::string id = namer ? namer(k, g) : "[" + sp.ids.at(g.t.begin()->first) + "]";
        if (int& n = seen[id]; ++n > 1) id += "#" + std::to_string(n);
        qp.qspace.add(id, *bd);
        qp.reps.push_back(g);
        qp.rep_pos.push_back(pos);
    }
    return qp;
}

std::vector<std::pair<Bidegree, int>> dim_table(const Space& sp) {
    auto lt = [](const Bidegree& a, const Bidegree& b) {
        return std::pair(a.wt2, a.deg) < std::pair(b.wt2, b.deg);
    };
    std::map<Bidegree, int, decltype(lt)> m(lt);
    for (int i = 0; i < sp.dim(); ++i) ++m[sp.bd(i)];
    return {m.begin(), m.end()};
}

} // namespace dgva
