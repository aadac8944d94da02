#include "dgva/model.hpp"

namespace dgva {

namespace {

const Element k_zero_elem{};

template <class Table>
std::pair<bool, const Element*> lookup(const Table& tab, const Space& a, const Space& b,
                                       int u, int n, int v,
                                       int wt2_max, int wt2_min, int lo, int hi) {
    if (n > hi) return {true, nullptr};
    int rw = a.bd(u).wt2 + b.bd(v).wt2 - 2 * (n + 1);
    if (rw <= wt2_max && rw < wt2_min) return {true, nullptr};
    if (n < lo || rw > wt2_max) return {false, nullptr};
    auto it = tab.find(std::tuple{u, n, v});
    return {true, it == tab.end() ? nullptr : &it->second};
}

template <class Model>
std::optional<Element> bilin(const Model& m, const Element& x, int n, const Element& y) {
    Element out;
    for (auto& [i, ci] : x.t)
        for (auto& [j, cj] : y.t) {
            auto [known, r] = m.peek(i, n, j);
            if (!known) return std::nullopt;
            if (r) out.axpy(ci * cj, *r);
        }
    return out;
}

int min_wt2(const Space& sp) {
    int w = 0;
    for (int i = 0; i < sp.dim(); ++i) w = i == 0 ? sp.bd(i).wt2 : std::min(w, sp.bd(i).wt2);
    return w;
}

Element apply_cols(const std::vector<Element>& cols, const Element& v) {
    Element out;
    for (auto& [i, c] : v.t)
        if (i < (int)cols.size()) out.axpy(c, cols[i]);
    return out;
}

} // namespace

void VertexModel::set_wt2_min() { wt2_min = min_wt2(sp); }

std::pair<bool, const Element*> VertexModel::peek(int u, int n, int v) const {
    return lookup(tab, sp, sp, u, n, v, wt2_max, wt2_min, mode_lo, mode_hi);
}

std::optional<Element> VertexModel::mode(int u, int n, int v) const {
    auto [known, r] = peek(u, n, v);
    if (!known) return std::nullopt;
    return r ? *r : k_zero_elem;
}

std::optional<Element> VertexModel::mode_apply(const Element& x, int n, const Element& y) const {
    return bilin(*this, x, n, y);
}

Element VertexModel::d_apply(const Element& v) const { return apply_cols(dcols, v); }

LinearMap VertexModel::d_map() const {
    LinearMap m = zero_map(sp, sp, {1, 0});
    m.cols = dcols;
    m.cols.resize(sp.dim());
    return m;
}

std::optional<Element> VertexModel::translate(const Element& v) const {
    return mode_apply(v, -2, unit_elem(vacuum));
}

std::optional<Element> VertexModel::L(int n, const Element& v) const {
    if (conformal < 0) return Element{};
    return mode_apply(unit_elem(conformal), n + 1, v);
}

void ModuleModel::set_wt2_min() { wt2_min = min_wt2(sp); }

std::pair<bool, const Element*> ModuleModel::peek(int u, int n, int m) const {
    return lookup(act, alg->sp, sp, u, n, m, wt2_max, wt2_min, mode_lo, mode_hi);
}

std::optional<Element> ModuleModel::mode(int u, int n, int m) const {
    auto [known, r] = peek(u, n, m);
    if (!known) return std::nullopt;
    return r ? *r : k_zero_elem;
}

std::optional<Element> ModuleModel::mode_apply(const Element& x, int n, const Element& y) const {
    return bilin(*this, x, n, y);
}

Element ModuleModel::d_apply(const Element& v) const { return apply_cols(dcols, v); }

LinearMap ModuleModel::d_map() const {
    LinearMap m = zero_map(sp, sp, {1, 0});
    m.cols = dcols;
    m.cols.resize(sp.dim());
    return m;
}

std::optional<Element> ModuleModel::L(int n, const Element& m) const {
    if (alg->conformal < 0) return Element{};
    return mode_apply(unit_elem(alg->conformal), n + 1, m);
}

std::string mode_str(const Space& a, int u, int n, const Space& b, int v) {
    return a.ids[u] + "[" + std::to_string(n) + "]" + b.ids[v];
}

} // namespace dgva
