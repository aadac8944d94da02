#pragma once

#include "dgva/model.hpp"

#include <string>

namespace dgva {

/* Line-oriented text format for model and module windows.  `#` starts a
 * comment, blank lines are ignored, the final line is `end`.  All parse and
 * semantic errors throw std::invalid_argument carrying the line and column
 * of the offending token. */

VertexModel parse_model(const std::string& text);
ModuleModel parse_module(const std::string& text, const VertexModel& model);

/* Canonical emission: basis lines sorted by (wt, deg, id), mode lines by
 * (u, n, v) in that basis order, zero entries omitted.  Re-parsing the
 * output reproduces the same bytes. */
std::string serialize_model(const VertexModel& m);
std::string serialize_module(const ModuleModel& mod);

} // namespace dgva
