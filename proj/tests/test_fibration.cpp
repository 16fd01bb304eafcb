// Arrow-span cells, cartesian lifts, the lifting-problem engine, and the
// probe battery.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "spancalc/fibration.hpp"

using namespace spancalc;

namespace {

Span1 unit_span() {
  return make_span(make_set(1), make_set(1), make_set(1), identity_map(1),
                   identity_map(1));
}

ArrSpanCell example_lift() {
  Span1 base = make_span(make_set(1), make_set(2), make_set(1),
                         constant_map(2, 1, 0), constant_map(2, 1, 0));
  ArrObj fib{make_set(2), make_set(1), constant_map(2, 1, 0)};
  return cartesian_lift(base, fib);
}

// Inner horn of a degenerate cell built from an edge: sides are the first
// m + 1 faces, the cap is the next one, and the projection is the base.
LiftingProblem horn_from_cell(const ArrSpanCell& z, int m) {
  LiftingProblem p;
  p.m = m;
  p.edge = last_arr_edge(z);
  if (m > 0)
    for (int j = 0; j <= m; ++j) p.sides.push_back(arr_face(z, j));
  p.cap = arr_face(z, m + 1);
  p.base = project(z);
  return p;
}

}  // namespace

TEST_CASE("edge construction validates the component squares") {
  Span1 top = make_span(make_set(1), make_set(2), make_set(2),
                        constant_map(2, 1, 0), identity_map(2));
  ArrSpanCell e = make_arr_edge(top, unit_span(), identity_map(1),
                                constant_map(2, 1, 0), constant_map(2, 1, 0));
  CHECK(arr_dim(e) == 1);
  CHECK(validate_arr_cell(e));
  CHECK(arr_vertex(e, 0).top.size == 1);
  CHECK(arr_vertex(e, 1).top.size == 2);
  CHECK_THROWS(make_arr_edge(top, unit_span(), identity_map(1),
                             constant_map(2, 1, 1), constant_map(2, 1, 0)));
}

TEST_CASE("faces and degeneracies of arrow cells are coherent") {
  ArrSpanCell lift = example_lift();
  ArrSpanCell z = arr_degeneracy(lift, 0);
  CHECK(arr_dim(z) == 2);
  CHECK(validate_arr_cell(z));
  CHECK(arr_face(z, 0) == lift);
  CHECK(arr_face(z, 1) == lift);
  ArrSpanCell v = arr_from_obj(arr_vertex(lift, 0));
  CHECK(arr_dim(v) == 0);
  CHECK(arr_degeneracy(v, 0) ==
        arr_face(arr_degeneracy(arr_degeneracy(v, 0), 0), 0));
}

TEST_CASE("canonical cartesian lift of the two point fiber") {
  Span1 base = make_span(make_set(1), make_set(2), make_set(1),
                         constant_map(2, 1, 0), constant_map(2, 1, 0));
  ArrObj fib{make_set(2), make_set(1), constant_map(2, 1, 0)};
  ArrSpanCell lift = cartesian_lift(base, fib);
  CHECK(lift.top_cell.sets[1].size == 4);
  CHECK(is_cartesian_structural(lift));
  CHECK(project(lift) == cell_from_span(base));
  CHECK(arr_vertex(lift, 1) == fib);
  ProbeReport pr = probe_battery(lift, 3);
  CHECK(pr.passed);
  CHECK(pr.killer == 0);
  ArrObj wrong{make_set(2), make_set(2), identity_map(2)};
  CHECK_THROWS(cartesian_lift(base, wrong));
}

TEST_CASE("noninjective top left leg fails the battery") {
  ArrSpanCell bad = make_arr_edge(
      make_span(make_set(1), make_set(2), make_set(2), constant_map(2, 1, 0),
                identity_map(2)),
      unit_span(), identity_map(1), constant_map(2, 1, 0),
      constant_map(2, 1, 0));
  CHECK_FALSE(is_cartesian_structural(bad));
  ProbeReport pr = probe_battery(bad, 3);
  CHECK_FALSE(pr.passed);
  CHECK(pr.killer == 1);
  CHECK(probe_left_leg_injective(bad).empty());
  CHECK(probe_comparison_injective(bad).empty());
}

TEST_CASE("nonsurjective top left leg fails the battery") {
  ArrSpanCell bad = make_arr_edge(
      make_span(make_set(2), make_set(1), make_set(1), constant_map(1, 2, 0),
                identity_map(1)),
      unit_span(), constant_map(2, 1, 0), identity_map(1), identity_map(1));
  CHECK_FALSE(is_cartesian_structural(bad));
  ProbeReport pr = probe_battery(bad, 3);
  CHECK_FALSE(pr.passed);
  CHECK(pr.killer == 2);
}

TEST_CASE("oversized apex fails the battery and its third family") {
  ArrSpanCell bad = make_arr_edge(
      make_span(make_set(1), make_set(2), make_set(1), constant_map(2, 1, 0),
                constant_map(2, 1, 0)),
      unit_span(), identity_map(1), constant_map(2, 1, 0), identity_map(1));
  CHECK_FALSE(is_cartesian_structural(bad));
  std::vector<LiftingProblem> fam3 = probe_left_leg_injective(bad);
  CHECK(fam3.size() == 1);
  long kills = 0;
  for (const LiftingProblem& q : fam3)
    if (!solve_lifting(q, 3).found) ++kills;
  CHECK(kills == 1);
  ProbeReport pr = probe_battery(bad, 3);
  CHECK_FALSE(pr.passed);
  CHECK(pr.killer == 1);
}

TEST_CASE("battery verdicts are invariant under relabeling") {
  ArrSpanCell lift = example_lift();
  SetMap swap = make_map(4, 4, {1, 0, 3, 2});
  ArrSpanCell moved = lift;
  moved.top_cell.maps.at({1, 0}) =
      compose_maps(lift.top_cell.maps.at({1, 0}), swap);
  moved.top_cell.maps.at({1, 2}) =
      compose_maps(lift.top_cell.maps.at({1, 2}), swap);
  moved.components[1] = compose_maps(lift.components[1], swap);
  CHECK(validate_arr_cell(moved));
  ProbeReport pr = probe_battery(moved, 3);
  CHECK(pr.passed);
}

TEST_CASE("inner horn filler composes over the middle vertex") {
  ArrSpanCell lift = example_lift();
  ArrSpanCell e12 = make_arr_edge(
      make_span(make_set(2), make_set(2), make_set(2), identity_map(2),
                identity_map(2)),
      unit_span(), constant_map(2, 1, 0), constant_map(2, 1, 0),
      constant_map(2, 1, 0));
  ArrSpanCell fill = inner_horn_fill_spantimes(lift, e12);
  CHECK(arr_dim(fill) == 2);
  CHECK(validate_arr_cell(fill));
  CHECK(arr_face(fill, 0) == e12);
  CHECK(arr_face(fill, 2) == lift);
}

TEST_CASE("solver closes degenerate horns in one candidate") {
  ArrSpanCell lift = example_lift();
  ArrSpanCell z3 = arr_degeneracy(arr_degeneracy(lift, 0), 0);
  CHECK(validate_arr_cell(z3));
  LiftResult r1 = solve_lifting(horn_from_cell(z3, 1), 4);
  CHECK(r1.found);
  CHECK(r1.tried == 1);
  ArrSpanCell z4 = arr_degeneracy(z3, 0);
  LiftResult r2 = solve_lifting(horn_from_cell(z4, 2), 4);
  CHECK(r2.found);
  CHECK(r2.tried == 1);
  ArrSpanCell z5 = arr_degeneracy(z4, 1);
  LiftResult r3 = solve_lifting(horn_from_cell(z5, 3), 4);
  CHECK(r3.found);
  CHECK(r3.tried == 1);
}

TEST_CASE("solver recovers a two cell from its outer data") {
  ArrSpanCell lift = example_lift();
  ArrSpanCell e12 = make_arr_edge(
      make_span(make_set(2), make_set(2), make_set(2), identity_map(2),
                identity_map(2)),
      unit_span(), constant_map(2, 1, 0), constant_map(2, 1, 0),
      constant_map(2, 1, 0));
  ArrSpanCell fill = inner_horn_fill_spantimes(lift, e12);
  LiftingProblem p = horn_from_cell(fill, 0);
  LiftResult r = solve_lifting(p, 4);
  CHECK(r.found);
  CHECK(validate_arr_cell(r.witness));
  CHECK(last_arr_edge(r.witness) == p.edge);
  CHECK(arr_face(r.witness, 1) == p.cap);
  CHECK(project(r.witness) == p.base);
}

TEST_CASE("incoherent problems are rejected before any search") {
  ArrSpanCell lift = example_lift();
  ArrSpanCell z4 = arr_degeneracy(arr_degeneracy(arr_degeneracy(lift, 0), 0), 0);
  LiftingProblem bad = horn_from_cell(z4, 2);
  bool corrupted = false;
  for (SetMap& c : bad.cap.components)
    if (c.dom >= 1 && c.cod >= 2) {
      c.values[0] = (c.values[0] + 1) % c.cod;
      corrupted = true;
      break;
    }
  CHECK(corrupted);
  CHECK_THROWS(validate_problem(bad));
}

TEST_CASE("edge enumeration and classification at the smallest bound") {
  CHECK(enumerate_arr_edges(1).size() == 14);
  ClassificationReport rep = classify_cartesian_edges(1, 2);
  CHECK(rep.passed);
  CHECK(rep.cells == 14);
  CHECK(rep.classes == 14);
  CHECK(rep.structural == 8);
  CHECK(rep.battery_passed == 8);
  CHECK(rep.discrepancies == 0);
  CHECK(rep.killers == std::array<long, 6>{0, 2, 4, 0, 0, 0});
}
