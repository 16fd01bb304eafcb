// Graphviz rendering: spans as two-arm element diagrams and cells as
// layered interval diagrams.
#pragma once

#include <string>

#include "spancalc/spanqc.hpp"
#include "spancalc/spans.hpp"

namespace spancalc {

// One node per element, grouped into left, apex, and right clusters, with
// an edge from each apex element to its image under each leg.
std::string dot_span(const Span1& s);

// One node per interval, ranked by interval length, with the one-step
// structure maps drawn as labeled edges.
std::string dot_cell(const SpanCell& f);

}  // namespace spancalc
