#pragma once
// Self-contained reference implementations used as independent test oracles.
// Everything here is deliberately naive: correctness over speed, and no code
// shared with the library under test beyond the scalar type.
#include "dgva/rational.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace oracle {

using dgva::Int;
using dgva::Rat;

/* ------------------------------------------------------------------ */
/*  partitions                                                         */
/* ------------------------------------------------------------------ */

// p(n) by the classical two-variable recurrence: count(n, k) = partitions of
// n with parts <= k.
inline long long partition_count(int n) {
    if (n < 0) return 0;
    std::vector<std::vector<long long>> c(n + 1, std::vector<long long>(n + 1, 0));
    for (int k = 0; k <= n; ++k) c[0][k] = 1;
    for (int m = 1; m <= n; ++m)
        for (int k = 1; k <= n; ++k)
            c[m][k] = c[m][k - 1] + (m >= k ? c[m - k][k] : 0);
    return c[n][n];
}

// All partitions of n, parts descending, lexicographically sorted.
inline std::vector<std::vector<int>> partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxp) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxp); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    std::sort(out.begin(), out.end());
    return out;
}

/* ------------------------------------------------------------------ */
/*  dense Gaussian elimination over Q                                  */
/* ------------------------------------------------------------------ */

// Row-reduces in place; returns the rank.  Plain textbook elimination,
// no pivot strategy beyond first nonzero column.
inline int dense_rank(std::vector<std::vector<Rat>> m) {
    int rows = (int)m.size();
    if (rows == 0) return 0;
    int cols = (int)m[0].size();
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        Rat inv = Rat(1) / m[rank][c];
        for (int j = c; j < cols; ++j) m[rank][j] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rat f = m[r][c];
            for (int j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

/* ------------------------------------------------------------------ */
/*  free-boson Fock space                                              */
/* ------------------------------------------------------------------ */

// A state is a partition (parts descending): the monomial in the creation
// operators applied to the vacuum.  A vector is a map partition -> scalar.
using State = std::vector<int>;
using Vec = std::map<State, Rat>;

inline void vec_add(Vec& v, const State& s, const Rat& c) {
    if (c == 0) return;
    auto it = v.find(s);
    if (it == v.end()) {
        v.emplace(s, c);
    } else {
        it->second += c;
        if (it->second == 0) v.erase(it);
    }
}

// Annihilator a_m (m > 0) on a basis state: pick out each part equal to m.
// [a_m, a_{-m}] = m gives the factor m * multiplicity.
inline Vec fock_annihilate(int m, const State& s) {
    Vec out;
    long long mult = std::count(s.begin(), s.end(), m);
    if (mult == 0) return out;
    State t = s;
    t.erase(std::find(t.begin(), t.end(), m));
    vec_add(out, t, Rat(m) * Rat(mult));
    return out;
}

inline State fock_create(int m, State s) { // m > 0: prepend part m
    s.push_back(m);
    std::sort(s.begin(), s.end(), std::greater<int>());
    return s;
}

// Mode u_k of the state u = a_{-n1}...a_{-nr}|0> acting on basis state w.
// The field of u is the normal-ordered product of the derivative fields
// of each slot; the coefficient of the slot mode m against slot index n is
// binom(-m-1, n-1).  Enumerates slot modes (m1..mr) with sum(mi+ni) = k+1,
// zero modes dropped (a_0 = 0), annihilators applied right-to-left first,
// creators prepended afterwards.
inline Vec fock_mode(const State& u, long long k, const State& w, int max_wt) {
    Vec out;
    int r = (int)u.size();
    if (r == 0) { // vacuum state: identity at k = -1
        if (k == -1) vec_add(out, w, 1);
        return out;
    }
    std::vector<long long> modes(r);
    long long wt_w = 0;
    for (int p : w) wt_w += p;
    auto rec = [&](auto&& self, int slot, long long rem) -> void {
        if (slot == r) {
            if (rem != 0) return;
            Rat coef = 1;
            for (int i = 0; i < r; ++i)
                coef *= dgva::binom(-modes[i] - 1, u[i] - 1);
            if (coef == 0) return;
            // normal order: annihilators (mode > 0) act first, from the
            // rightmost slot inward, then creators are prepended.
            Vec cur;
            cur.emplace(w, coef);
            for (int i = r - 1; i >= 0; --i) {
                if (modes[i] <= 0) continue;
                Vec next;
                for (auto& [st, c] : cur)
                    for (auto& [st2, c2] : fock_annihilate((int)modes[i], st))
                        vec_add(next, st2, c * c2);
                cur = std::move(next);
                if (cur.empty()) return;
            }
            for (int i = r - 1; i >= 0; --i) {
                if (modes[i] >= 0) continue;
                Vec next;
                for (auto& [st, c] : cur)
                    vec_add(next, fock_create((int)-modes[i], st), c);
                cur = std::move(next);
            }
            for (auto& [st, c] : cur) vec_add(out, st, c);
            return;
        }
        // slot mode m contributes m + n_slot to the running total k+1;
        // m = 0 is the zero operator.  Bound |m| by the weight budget.
        long long lo = -(long long)max_wt, hi = wt_w;
        for (long long m = lo; m <= hi; ++m) {
            if (m == 0) continue;
            modes[slot] = m;
            self(self, slot + 1, rem - (m + u[slot]));
        }
    };
    rec(rec, 0, k + 1);
    // discard components that leave the truncation window
    Vec trimmed;
    for (auto& [st, c] : out) {
        long long wt = 0;
        for (int p : st) wt += p;
        if (wt <= max_wt) trimmed.emplace(st, c);
    }
    return trimmed;
}

} // namespace oracle
