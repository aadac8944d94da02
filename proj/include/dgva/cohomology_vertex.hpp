#pragma once

#include "dgva/model.hpp"
#include "dgva/quotient.hpp"
#include "dgva/report.hpp"

namespace dgva {

/* The vertex model induced on cohomology classes.  The presentation keeps a
 * pointer to the input model's space, so the input must outlive this object.
 * Families reported in `checks`:
 *   induced_well_defined        products of representatives stay in the
 *                               cocycle span and project to classes,
 *   representative_independence modes against exact vectors project to zero.
 */
struct CohomologyVertex {
    VertexModel h;              // zero differential; modes induced on classes
    QuotientPresentation pres;  // classes of cocycles modulo exact vectors
    CheckReport checks;
};

CohomologyVertex cohomology_vertex(const VertexModel& m);

} // namespace dgva
