#pragma once
#include "dgva/linalg.hpp"

namespace dgva {

// Homogeneous linear map between spaces: column per source basis vector,
// every image term of bidegree src_bd + shift.
struct LinearMap {
    const Space* src = nullptr;
    const Space* dst = nullptr;
    Bidegree shift{0, 0};
    std::vector<Element> cols; // size src->dim(); missing tail treated as zero

    const Element& col(int i) const {
        static const Element z{};
        return i < (int)cols.size() ? cols[i] : z;
    }
    Element apply(const Element& v) const {
        Element out;
        for (auto& [i, c] : v.t) out.axpy(c, col(i));
        return out;
    }
    bool is_zero() const {
        for (auto& c : cols)
            if (!c.zero()) return false;
        return true;
    }
    // First shift violation as a witness string, empty if homogeneous.
    std::string shift_violation() const;
};

LinearMap zero_map(const Space& src, const Space& dst, Bidegree shift);

// Throws on a shift violation; used wherever maps enter from outside.
LinearMap checked_map(const Space& src, const Space& dst, Bidegree shift,
                      std::vector<Element> cols);

LinearMap compose(const LinearMap& g, const LinearMap& f); // g after f

Subspace image(const LinearMap& f);
Subspace kernel(const LinearMap& f);

} // namespace dgva
