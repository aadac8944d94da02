#pragma once

#include "dgva/linear_map.hpp"

#include <map>
#include <optional>
#include <tuple>

namespace dgva {

/* A vertex model is a finite window of a dg vertex algebra: a bigraded basis,
 * a differential, and a table of mode products u[n]v for n in a stored range.
 * Entries whose output weight exceeds the window are not representable; the
 * accessors below return nullopt for those, and checks are expected to skip
 * (and count) any identity instance that touches such an entry.
 *
 * Window contract:
 *   - n > mode_hi          : the mode annihilates every stored state (zero),
 *   - result wt2 below every stored weight (and within the window): zero,
 *     because the window is complete at each weight <= wt2_max,
 *   - mode_lo <= n <= mode_hi and result wt2 <= wt2_max : known, table-or-zero,
 *   - anything else        : unknown.
 */
struct VertexModel {
    std::string name;
    Space sp;
    std::vector<Element> dcols;                         // columns of d, one per basis vector
    std::map<std::tuple<int, int, int>, Element> tab;   // (u, n, v) -> u[n]v, zero entries omitted

    int vacuum = -1;
    bool has_conf = false;   // a conformal structure was declared
    int conformal = -1;      // basis index of the conformal vector; -1 = declared zero
    Rat cV = 0;              // central charge

    int wt2_max = 0;         // states of wt2 <= wt2_max are stored
    int wt2_min = 0;         // smallest stored weight (set by set_wt2_min)
    int mode_lo = 0;         // stored mode range [mode_lo, mode_hi]
    int mode_hi = 0;

    void set_wt2_min();

    // tri-state lookup: {known, value}; value is null for known zero
    std::pair<bool, const Element*> peek(int u, int n, int v) const;
    // single-entry lookup under the window contract
    std::optional<Element> mode(int u, int n, int v) const;
    // bilinear extension; nullopt if any touched entry is unknown
    std::optional<Element> mode_apply(const Element& x, int n, const Element& y) const;

    Element d_apply(const Element& v) const;
    LinearMap d_map() const;                            // valid while *this is alive

    // translation D(v) = v[-2] vacuum
    std::optional<Element> translate(const Element& v) const;
    // Virasoro mode L(n) = conformal[n+1]; known-zero when the conformal vector is 0
    std::optional<Element> L(int n, const Element& v) const;

    bool in_window_mode(int n) const { return n >= mode_lo && n <= mode_hi; }
};

/* A module window over a vertex model: same storage pattern, with the mode
 * table recording v[n]m for v in the algebra and m in the module. */
struct ModuleModel {
    std::string name;
    const VertexModel* alg = nullptr;
    Space sp;
    std::vector<Element> dcols;
    std::map<std::tuple<int, int, int>, Element> act;   // (v in alg, n, m) -> v[n]m
    std::map<int, Rat> grade;                           // optional declared grading (else wt)

    int wt2_max = 0;
    int wt2_min = 0;
    int mode_lo = 0;
    int mode_hi = 0;

    void set_wt2_min();

    std::pair<bool, const Element*> peek(int u, int n, int m) const;
    std::optional<Element> mode(int u, int n, int m) const;
    std::optional<Element> mode_apply(const Element& x, int n, const Element& y) const;

    Element d_apply(const Element& v) const;
    LinearMap d_map() const;

    std::optional<Element> L(int n, const Element& m) const;
};

// "u[n]v" rendering for witnesses
std::string mode_str(const Space& a, int u, int n, const Space& b, int v);

} // namespace dgva
