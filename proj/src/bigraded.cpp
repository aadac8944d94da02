#include "dgva/bigraded.hpp"

namespace dgva {

std::string wt2_str(int wt2) {
    if (wt2 % 2 == 0) return std::to_string(wt2 / 2);
    return std::to_string(wt2) + "/2";
}

Element combine(const std::vector<std::pair<Rat, Element>>& pairs) {
    Element out;
    for (auto& [c, e] : pairs) out.axpy(c, e);
    return out;
}

std::optional<int> homo_deg(const Space& sp, const Element& e) {
    std::optional<int> d;
    for (auto& [i, c] : e.t) {
        int di = sp.bd(i).deg;
        if (!d) d = di;
        else if (*d != di) return std::nullopt;
    }
    return d;
}

std::optional<int> homo_wt2(const Space& sp, const Element& e) {
    std::optional<int> w;
    for (auto& [i, c] : e.t) {
        int wi = sp.bd(i).wt2;
        if (!w) w = wi;
        else if (*w != wi) return std::nullopt;
    }
    return w;
}

std::optional<Bidegree> homo_bd(const Space& sp, const Element& e) {
    std::optional<Bidegree> b;
    for (auto& [i, c] : e.t) {
        Bidegree bi = sp.bd(i);
        if (!b) b = bi;
        else if (*b != bi) return std::nullopt;
    }
    return b;
}

std::optional<int> top_deg(const Space& sp, const Element& e) {
    std::optional<int> d;
    for (auto& [i, c] : e.t) {
        int di = sp.bd(i).deg;
        if (!d || di > *d) d = di;
    }
    return d;
}

std::optional<int> top_wt2(const Space& sp, const Element& e) {
    std::optional<int> w;
    for (auto& [i, c] : e.t) {
        int wi = sp.bd(i).wt2;
        if (!w || wi > *w) w = wi;
    }
    return w;
}

Element deg_component(const Space& sp, const Element& e, int deg) {
    Element out;
    for (auto& [i, c] : e.t)
        if (sp.bd(i).deg == deg) out.t.emplace(i, c);
    return out;
}

Element wt2_component(const Space& sp, const Element& e, int wt2) {
    Element out;
    for (auto& [i, c] : e.t)
        if (sp.bd(i).wt2 == wt2) out.t.emplace(i, c);
    return out;
}

Element bd_component(const Space& sp, const Element& e, Bidegree bd) {
    Element out;
    for (auto& [i, c] : e.t)
        if (sp.bd(i) == bd) out.t.emplace(i, c);
    return out;
}

std::string elem_str(const Space& sp, const Element& e) {
    if (e.zero()) return "0";
    std::string s;
    for (auto& [i, c] : e.t) {
        if (!s.empty()) s += " + ";
        s += rat_str(c) + "*" + sp.ids.at(i);
    }
    return s;
}

} // namespace dgva
