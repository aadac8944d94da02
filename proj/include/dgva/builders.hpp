#pragma once

#include "dgva/model.hpp"

#include <map>

namespace dgva {

/* Input for the exponential-translation construction: a graded-commutative
 * dg algebra with unit together with a square-zero-differential d and a
 * derivation D of bidegree (+2, +2) commuting with d.  Modes are
 *   a[-1-k]b = D^k(a) b / k!   (k >= 0),   a[n]b = 0 for n >= 0.
 * All violations of the preconditions throw std::runtime_error. */
struct CommDgAlgebraInput {
    std::string name;
    std::vector<std::pair<std::string, Bidegree>> basis;
    int unit = 0;
    std::map<std::pair<int, int>, Element> prod;  // missing entry = 0
    std::vector<Element> dcols;                   // short or missing = 0
    std::vector<Element> Dcols;
    int wt2_max = 0;
    int mode_lo = -2;
    int mode_hi = 2;
};

VertexModel build_comm_dg_algebra_va(const CommDgAlgebraInput& in);

/* Two-dimensional square-zero extension Q[x]/(x^2), everything in bidegree
 * (0, 0), zero differential. */
VertexModel build_dual();

/* Four-dimensional dg algebra Q[s, t]/(s^2, t^2) with |s| = 1, |t| = 2,
 * d(s) = t, all weights 0, and a zero (degenerate) conformal vector. */
VertexModel build_nilpotent_dg();

/* Rank-one free boson up to weight max_wt: basis indexed by partitions,
 * deg = 2 wt, zero differential, omega = half the square of the weight-one
 * generator, central charge 1.  Mode window [-(max_wt+1), 2 max_wt - 1]. */
VertexModel build_heisenberg(int max_wt);

/* Plain description of an ordinary (single-graded) vertex algebra: weights
 * only, zero differential; degrees are assigned as 2 wt.  Throws on tables
 * that violate the bidegree law. */
struct ClassicalDescription {
    std::string name;
    std::vector<std::pair<std::string, Rat>> basis;  // id, weight (half-integers allowed)
    std::string vacuum;
    bool has_conformal = false;
    std::string conformal;  // empty = zero conformal vector
    Rat central_charge = 0;
    Rat wt_max = 0;
    int mode_lo = 0;
    int mode_hi = 0;
    // (u, n, v) -> list of (coefficient, id)
    std::map<std::tuple<std::string, int, std::string>, std::vector<std::pair<Rat, std::string>>> modes;
};

VertexModel import_classical_voa(const ClassicalDescription& d);

} // namespace dgva
