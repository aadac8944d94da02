#include "dgva/linear_map.hpp"

#include <stdexcept>

namespace dgva {

std::string LinearMap::shift_violation() const {
    for (size_t i = 0; i < cols.size(); ++i) {
        Bidegree want = src->bd((int)i) + shift;
        for (auto& [j, c] : cols[i].t)
            if (dst->bd(j) != want)
                return src->ids[i] + " -> " + dst->ids.at(j);
    }
    return "";
}

LinearMap zero_map(const Space& src, const Space& dst, Bidegree shift) {
    LinearMap f;
    f.src = &src;
    f.dst = &dst;
    f.shift = shift;
    f.cols.assign(src.dim(), Element{});
    return f;
}

LinearMap checked_map(const Space& src, const Space& dst, Bidegree shift,
                      std::vector<Element> cols) {
    LinearMap f;
    f.src = &src;
    f.dst = &dst;
    f.shift = shift;
    f.cols = std::move(cols);
    f.cols.resize(src.dim());
    if (auto w = f.shift_violation(); !w.empty())
        throw std::runtime_error("map violates declared shift at " + w);
    return f;
}

LinearMap compose(const LinearMap& g, const LinearMap& f) {
    if (f.dst != g.src) throw std::runtime_error("compose: space mismatch");
    LinearMap h;
    h.src = f.src;
    h.dst = g.dst;
    h.shift = f.shift + g.shift;
    h.cols.reserve(f.src->dim());
    for (int i = 0; i < f.src->dim(); ++i) h.cols.push_back(g.apply(f.col(i)));
    return h;
}

Subspace image(const LinearMap& f) {
    Subspace s;
    s.amb = f.dst;
    for (auto& c : f.cols) s.ech.add(c);
    return s;
}

// Kernel via the solver: feed columns as generators of the image while
// tracking coordinates; a generator that fails to enlarge the image yields
// a relation, recovered by expressing its column in the previous ones.
Subspace kernel(const LinearMap& f) {
    Subspace ker;
    ker.amb = f.src;
    Solver sol;
    for (int i = 0; i < f.src->dim(); ++i) {
        const Element& c = f.col(i);
        if (!sol.add_gen(c)) {
            Element rel = unit_elem(i);
            auto coords = sol.express(c);
            // express uses generator indices 0..i-1 here
            if (coords)
                for (auto& [j, x] : coords->t) rel.add(j, -x);
            ker.ech.add(rel);
        }
    }
    return ker;
}

} // namespace dgva
