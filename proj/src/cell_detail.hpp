// Internal helpers shared by the cell modules: interval indexing and
// assembly of full map tables from one-step maps.
#pragma once

#include <vector>

#include "spancalc/spanqc.hpp"

namespace spancalc {
namespace detail {

int iv_count(int n);
// Index of (lo, hi) in the lexicographic interval list of [n].
int iv_index(int n, int lo, int hi);

// Builds the full map table of a cell from its one-step maps: rd[t] is the
// map (i, j) -> (i, j-1) and ld[t] the map (i, j) -> (i+1, j), indexed by
// the interval index t of (i, j) with j > i. Every other structure map is
// the composite that drops the right end first, then the left end.
SpanCell assemble_cell(int n, const std::vector<FinSet>& sets,
                       const std::vector<SetMap>& rd,
                       const std::vector<SetMap>& ld);

const SetMap& map_at(const SpanCell& f, int i, int j, int a, int b);

// The 2-cell on one triangle of edges with the given inner maps; the legs
// of the middle edge are implied, so callers compare face 1 when the middle
// edge is prescribed.
SpanCell two_cell(const Span1& e01, const Span1& e12, FinSet middle_apex,
                  const SetMap& m1, const SetMap& m2);

}  // namespace detail
}  // namespace spancalc
