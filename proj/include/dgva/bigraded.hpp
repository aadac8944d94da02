#pragma once
#include "dgva/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgva {

/* ------------------------------------------------------------------ */
/*  bidegrees                                                          */
/* ------------------------------------------------------------------ */

// (cohomological degree, doubled weight).  Weights live in (1/2)Z, so the
// stored wt2 is always an exact integer.
struct Bidegree {
    int deg = 0;
    int wt2 = 0;
    friend bool operator==(const Bidegree&, const Bidegree&) = default;
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
    Bidegree operator+(const Bidegree& o) const { return {deg + o.deg, wt2 + o.wt2}; }
    Bidegree operator-(const Bidegree& o) const { return {deg - o.deg, wt2 - o.wt2}; }
};

std::string wt2_str(int wt2); // "3" or "3/2"

/* ------------------------------------------------------------------ */
/*  spaces                                                             */
/* ------------------------------------------------------------------ */

// A finite ordered basis of bigraded vectors.  Everything downstream
// (subspaces, maps, tables) refers to basis positions in this order, so the
// order is part of the space's identity.
struct Space {
    std::string name;
    std::vector<std::string> ids;
    std::vector<Bidegree> bds;
    std::map<std::string, int, std::less<>> index;

    int dim() const { return (int)ids.size(); }
    int add(const std::string& id, Bidegree bd) {
        if (index.count(id)) throw std::runtime_error("duplicate basis id: " + id);
        index.emplace(id, (int)ids.size());
        ids.push_back(id);
        bds.push_back(bd);
        return (int)ids.size() - 1;
    }
    int find(std::string_view id) const {
        auto it = index.find(id);
        return it == index.end() ? -1 : it->second;
    }
    const Bidegree& bd(int i) const { return bds.at(i); }
};

/* ------------------------------------------------------------------ */
/*  elements                                                           */
/* ------------------------------------------------------------------ */

// Sparse vector over a space: basis position -> nonzero coefficient.
struct Element {
    std::map<int, Rat> t;

    bool zero() const { return t.empty(); }
    void add(int i, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = t.emplace(i, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) t.erase(it);
        }
    }
    Rat coeff(int i) const {
        auto it = t.find(i);
        return it == t.end() ? Rat(0) : it->second;
    }
    Element& axpy(const Rat& c, const Element& e) { // *this += c * e
        if (c == 0) return *this;
        for (auto& [i, x] : e.t) add(i, c * x);
        return *this;
    }
    Element& operator*=(const Rat& c) {
        if (c == 0) { t.clear(); return *this; }
        for (auto& [i, x] : t) x *= c;
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a.axpy(1, b); }
    friend Element operator-(Element a, const Element& b) { return a.axpy(-1, b); }
    friend Element operator*(const Rat& c, Element e) { e *= c; return e; }
    friend bool operator==(const Element&, const Element&) = default;
};

inline Element unit_elem(int i) {
    Element e;
    e.t.emplace(i, 1);
    return e;
}

Element combine(const std::vector<std::pair<Rat, Element>>& pairs);

// Homogeneity queries: the value if all terms agree, nullopt otherwise
// (zero elements count as homogeneous of any value and return nullopt too).
std::optional<int> homo_deg(const Space& sp, const Element& e);
std::optional<int> homo_wt2(const Space& sp, const Element& e);
std::optional<Bidegree> homo_bd(const Space& sp, const Element& e);

// Max degree / weight over the support (the degree functions of graded
// elements); nullopt on zero.
std::optional<int> top_deg(const Space& sp, const Element& e);
std::optional<int> top_wt2(const Space& sp, const Element& e);

// The component of e supported on basis vectors of the given deg / wt2.
Element deg_component(const Space& sp, const Element& e, int deg);
Element wt2_component(const Space& sp, const Element& e, int wt2);
Element bd_component(const Space& sp, const Element& e, Bidegree bd);

// "2*a + -1/2*b" in basis order; "0" when empty.
std::string elem_str(const Space& sp, const Element& e);

} // namespace dgva
