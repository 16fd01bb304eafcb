// The arrow-span category over the span calculus: cells of map diagrams,
// the projection to the base complex, canonical cartesian lifts, bounded
// lifting problems with a generic search engine, and the probe battery
// that classifies cartesian edges.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "spancalc/spanqc.hpp"

namespace spancalc {

// An object of the arrow category: a finite-set map drawn downward.
struct ArrObj {
  FinSet top;
  FinSet bottom;
  SetMap arrow;  // top -> bottom
};

bool operator==(const ArrObj& a, const ArrObj& b);
inline bool operator!=(const ArrObj& a, const ArrObj& b) { return !(a == b); }

// A cell of the arrow-span category: a cell of maps between finite-set
// maps. Both layers satisfy the cell axioms and the per-interval component
// maps commute with every structure map.
struct ArrSpanCell {
  SpanCell top_cell;
  SpanCell bottom_cell;
  std::vector<SetMap> components;  // by interval index, top -> bottom
};

bool operator==(const ArrSpanCell& a, const ArrSpanCell& b);
inline bool operator!=(const ArrSpanCell& a, const ArrSpanCell& b) {
  return !(a == b);
}
bool operator<(const ArrSpanCell& a, const ArrSpanCell& b);

int arr_dim(const ArrSpanCell& c);
bool validate_arr_cell(const ArrSpanCell& c);

// The projection to the base complex keeps the bottom layer.
SpanCell project(const ArrSpanCell& c);

ArrObj arr_vertex(const ArrSpanCell& c, int i);
ArrSpanCell arr_from_obj(const ArrObj& x);
// Dimension-1 cell from two spans and the three component maps; throws
// INVALID when the data does not form a cell.
ArrSpanCell make_arr_edge(const Span1& top, const Span1& bottom,
                          const SetMap& c0, const SetMap& cmid,
                          const SetMap& c1);
ArrSpanCell arr_face(const ArrSpanCell& c, int i);
ArrSpanCell arr_degeneracy(const ArrSpanCell& c, int i);
// The final edge, spanning the last two vertices.
ArrSpanCell last_arr_edge(const ArrSpanCell& c);

// Structural cartesian test for a dimension-1 cell: the top left leg is a
// bijection and the right naturality square is a pullback. Throws DIM on
// any other dimension.
bool is_cartesian_structural(const ArrSpanCell& e);

// The canonical cartesian edge over a base span ending at the fiber's
// bottom set: the top apex is the pullback of the base right leg against
// the fiber arrow and the top left leg is the identity. Throws MISMATCH
// when the fiber sits over a different set.
ArrSpanCell cartesian_lift(const Span1& base, const ArrObj& fiber);

// Filler for the inner horn of dimension 2: composes the two edges with
// canonical pullback apexes on both layers and the induced component map
// between them. The induced map always exists because the components
// commute over the shared middle vertex.
ArrSpanCell inner_horn_fill_spantimes(const ArrSpanCell& e01,
                                      const ArrSpanCell& e12);

// A bounded lifting problem against the slice of an edge: find a cell of
// dimension m + 2 whose faces 0..m are the sides, whose face m + 1 is the
// cap, whose final edge is the edge under test, and whose projection is
// the base. Shapes m in {0, 1, 2, 3} are supported; for m = 0 the sides
// list is empty.
struct LiftingProblem {
  int m = 0;
  ArrSpanCell edge;
  std::vector<ArrSpanCell> sides;
  ArrSpanCell cap;
  SpanCell base;
};

// Throws INVALID unless every piece is a valid cell of the right shape and
// all shared faces and projections agree.
void validate_problem(const LiftingProblem& p);

struct LiftResult {
  bool found = false;
  long tried = 0;
  ArrSpanCell witness;  // populated when found
};

// Generic bounded search for a filler: enumerates every data slot the
// given faces leave free (unknown apex sets up to search_bound, then all
// maps elementwise within propagated constraints) and accepts the first
// assembled candidate that is a valid natural cell agreeing with every
// prescribed structure map. No per-shape solution rules are hardcoded.
LiftResult solve_lifting(const LiftingProblem& p, int search_bound);

// Probe generators for a dimension-1 cell. Each family returns the
// lifting problems that test one clause of the cartesian classification:
// surjectivity of the comparison into the pullback, surjectivity of the
// top left leg, injectivity of the top left leg, injectivity of the
// comparison. An edge with cartesian lifting behaviour solves all of them.
std::vector<LiftingProblem> probe_comparison_surjective(const ArrSpanCell& e);
std::vector<LiftingProblem> probe_left_leg_surjective(const ArrSpanCell& e);
std::vector<LiftingProblem> probe_left_leg_injective(const ArrSpanCell& e);
std::vector<LiftingProblem> probe_comparison_injective(const ArrSpanCell& e);

struct ProbeReport {
  bool passed = false;
  // 0 none, 1..4 the probe family that failed first, 5 the bounded sweep.
  int killer = 0;
  long problems = 0;
  std::string detail;
};

// Runs the four probe families and then a bounded sweep of generic lifting
// problems (shape 0 over split test objects, shape 1 over the unit test
// tower), short-circuiting at the first unsolvable problem.
ProbeReport probe_battery(const ArrSpanCell& e, int universe_bound);

// All dimension-1 cells with every set of size at most size_bound, in a
// fixed deterministic order.
std::vector<ArrSpanCell> enumerate_arr_edges(int size_bound);

struct ClassificationReport {
  bool passed = false;
  long cells = 0;
  long classes = 0;
  long structural = 0;
  long battery_passed = 0;
  long discrepancies = 0;
  std::array<long, 6> killers{};  // histogram over failing cells by killer
  std::string detail;
};

// Checks that the structural test and the probe battery agree on every
// dimension-1 cell within size_bound. The battery runs once per relabeling
// class; killer ids are tallied over all failing cells.
ClassificationReport classify_cartesian_edges(int size_bound,
                                              int universe_bound);

}  // namespace spancalc
