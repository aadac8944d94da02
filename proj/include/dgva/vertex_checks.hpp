#pragma once

#include "dgva/model.hpp"
#include "dgva/report.hpp"

namespace dgva {

/* Bounds for the (l, m, n) box scanned by the Jacobi-identity family. */
struct JacobiBox {
    int lo = -4;
    int hi = 4;
};

/* Full axiom suite for a vertex model window.  Families:
 *   bidegree, truncation, vacuum, creation, chain_rule, cocycle_chain_map,
 *   skew, translation, jacobi, series_cap.
 * Identity instances that touch entries outside the known window are skipped
 * and counted; a coverage note is attached for the Jacobi scan. */
CheckReport check_vertex_axioms(const VertexModel& m, JacobiBox box = {});

/* Conformal-structure checks (Virasoro bracket on basis states for
 * |m|,|n| <= vir_box, L(-1) = translation, L(0) = weight, the two
 * mode-commutator laws).  Fails with "conformal-missing" when the model
 * declares no conformal vector; a zero conformal vector is accepted and
 * flagged degenerate. */
CheckReport check_conformal(const VertexModel& m, int vir_box = 4);

/* Axiom suite for a module window over a checked vertex model. */
CheckReport check_module_axioms(const VertexModel& V, const ModuleModel& M, JacobiBox box = {});

} // namespace dgva
