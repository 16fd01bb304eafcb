// Pullback-property cells, the bounded complex, products, and homspaces.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "spancalc/monoid.hpp"
#include "spancalc/spanqc.hpp"

using namespace spancalc;

namespace {

Span1 copy_span() {
  return make_span(make_set(3), make_set(8), make_set(8),
                   make_map(8, 3, {1, 0, 2, 0, 0, 0, 1, 2}), identity_map(8));
}

Span1 add_span() {
  return make_span(make_set(8), make_set(8), make_set(4), identity_map(8),
                   make_map(8, 4, {0, 0, 1, 3, 3, 3, 3, 3}));
}

}  // namespace

TEST_CASE("span and cell translations invert each other") {
  Span1 s = copy_span();
  SpanCell f = cell_from_span(s);
  CHECK(f.n == 1);
  CHECK(validate_cell(f));
  CHECK(span_from_cell(f) == s);
  CHECK(cell_edge(f, 0, 1) == s);
  SpanCell p = cell_from_point(make_set(4));
  CHECK(p.n == 0);
  CHECK(validate_cell(p));
}

TEST_CASE("encode and decode round trip") {
  SpanCell c = compose_via_cell(copy_span(), add_span());
  CHECK(decode_cell(encode_cell(c)) == c);
  SpanCell f = cell_from_span(add_span());
  CHECK(decode_cell(encode_cell(f)) == f);
}

TEST_CASE("validate_cell rejects corrupted map tables") {
  SpanCell c = compose_via_cell(copy_span(), add_span());
  CHECK(validate_cell(c));
  for (auto& [key, m] : c.maps)
    if (key.first != key.second && m.dom > 0 && m.cod > 1) {
      m.values[0] = (m.values[0] + 1) % m.cod;
      break;
    }
  CHECK_FALSE(validate_cell(c));
}

TEST_CASE("composition cell has the three expected faces") {
  Span1 s = copy_span();
  Span1 t = add_span();
  SpanCell c = compose_via_cell(s, t);
  CHECK(c.n == 2);
  CHECK(validate_cell(c));
  CHECK(face(c, 0) == cell_from_span(t));
  CHECK(face(c, 2) == cell_from_span(s));
  CHECK(face(c, 1) == cell_from_span(compose_spans(s, t)));
  CHECK(cell_edge(c, 0, 1) == s);
  CHECK(cell_edge(c, 1, 2) == t);
}

TEST_CASE("degenerate cells are recognized") {
  Span1 s = copy_span();
  CHECK_FALSE(is_degenerate_cell(cell_from_span(s)));
  CHECK(is_degenerate_cell(cell_from_span(identity_span(make_set(2)))));
  SpanCell c = compose_via_cell(s, add_span());
  CHECK(is_degenerate_cell(degeneracy(cell_from_span(s), 0)));
  CHECK(is_degenerate_cell(degeneracy(c, 1)));
}

TEST_CASE("reversal is an involution matching span reversal") {
  Span1 s = copy_span();
  CHECK(reverse_cell(cell_from_span(s)) == cell_from_span(reverse_span(s)));
  SpanCell c = compose_via_cell(s, add_span());
  CHECK(reverse_cell(reverse_cell(c)) == c);
}

TEST_CASE("faces and degeneracies satisfy the simplicial identities") {
  BoundedComplex bc = bounded_span_complex(1, 3);
  CHECK(bc.sset.counts == std::vector<int>{2, 3, 5, 8});
  for (int d = 1; d <= 3; ++d)
    for (int id = 0; id < bc.sset.counts[static_cast<size_t>(d)]; ++id) {
      SpanCell f = bc.cell(d, id);
      CHECK(validate_cell(f));
      if (d >= 2)
        for (int i = 0; i < d; ++i)
          for (int j = i + 1; j <= d; ++j)
            CHECK(face(face(f, j), i) == face(face(f, i), j - 1));
      for (int i = 0; i < d; ++i) {
        SpanCell g = degeneracy(f, i);
        CHECK(validate_cell(g));
        CHECK(face(g, i) == f);
        CHECK(face(g, i + 1) == f);
      }
    }
}

TEST_CASE("bounded complex resolves cells and references both ways") {
  BoundedComplex bc = bounded_span_complex(1, 3);
  for (int d = 0; d <= bc.payload_dim; ++d)
    for (int id = 0; id < bc.sset.counts[static_cast<size_t>(d)]; ++id) {
      SpanCell f = bc.cell(d, id);
      CellRef r = bc.ref_of(f);
      CHECK(r.base_dim == d);
      CHECK(r.base_id == id);
      CHECK(r.degens.empty());
      CHECK(bc.cell_of(r) == f);
      if (d < 3) {
        SpanCell g = degeneracy(f, 0);
        CellRef rg = bc.ref_of(g);
        CHECK(rg.dim() == d + 1);
        CHECK(bc.cell_of(rg) == g);
      }
    }
}

TEST_CASE("bounded complex counts match the two category nerve") {
  BoundedComplex bc = bounded_span_complex(2, 3);
  CHECK(bc.sset.counts == std::vector<int>{3, 40, 1203, 55898});
  std::vector<FinSet> objects{make_set(0), make_set(1), make_set(2)};
  TwoCatAmbient amb = ambient_spans(objects, 2);
  TruncatedSSet nx = nerve_2cat(amb, 3);
  CHECK(nx.counts == bc.sset.counts);
}

TEST_CASE("nerve and cell translations are mutually inverse") {
  std::vector<FinSet> objects{make_set(0), make_set(1), make_set(2)};
  TwoCatAmbient amb = ambient_spans(objects, 2);
  BoundedComplex bc = bounded_span_complex(2, 2);
  for (int d = 0; d <= 2; ++d)
    for (int id = 0; id < bc.sset.counts[static_cast<size_t>(d)]; ++id) {
      SpanCell f = bc.cell(d, id);
      Nerve2Data nd = nerve_from_cell(amb, objects, f);
      CHECK(cell_from_nerve(amb, objects, nd) == f);
    }
  for (const Nerve2Data& nd : enumerate_nerve2_cells(amb, 2)) {
    SpanCell f = cell_from_nerve(amb, objects, nd);
    CHECK(validate_cell(f));
    CHECK(nerve_from_cell(amb, objects, f) == nd);
  }
}

TEST_CASE("product cones are disjoint unions with projection spans") {
  ProductCone cone = product_cone(make_set(2), make_set(1));
  CHECK(cone.object.size == 3);
  CHECK(cone.to_a.left_foot.size == 3);
  CHECK(cone.to_a.right_foot.size == 2);
  CHECK(span_matrix(cone.to_a) == NatMatrix{3, 2, {1, 0, 0, 1, 0, 0}});
  CHECK(span_matrix(cone.to_b) == NatMatrix{3, 1, {0, 0, 1}});
}

TEST_CASE("small product finality sweeps pass") {
  for (int n : {0, 1}) {
    FinalityReport rep =
        check_product_finality(make_set(1), make_set(1), n, 2);
    CHECK(rep.passed);
    CHECK(rep.failures == 0);
    CHECK(rep.diagrams_checked > 0);
  }
}

TEST_CASE("homspace components carry factorial automorphism counts") {
  GroupoidPresentation g = homspace(make_set(1), make_set(1), 3);
  CHECK(g.aut_orders == std::vector<std::uint64_t>{1, 1, 2, 6});
  GroupoidPresentation h = homspace(make_set(2), make_set(1), 2);
  std::vector<std::uint64_t> orders = h.aut_orders;
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<std::uint64_t>{1, 1, 1, 1, 2, 2});
  for (size_t i = 0; i < h.components.size(); ++i)
    CHECK(automorphism_count(h.components[i]) == h.aut_orders[i]);
}

TEST_CASE("block sum pads matrices diagonally") {
  NatMatrix a{1, 1, {5}};
  NatMatrix b{1, 1, {7}};
  CHECK(homspace_block_sum(a, b) == NatMatrix{2, 2, {5, 0, 0, 7}});
}

TEST_CASE("direct groupoid enumeration agrees with the matrix formula") {
  CompareReport rep = barratt_eccles_compare(make_set(1), make_set(1), 3);
  CHECK(rep.passed);
  CHECK(rep.components == 4);
  CHECK(rep.objects_seen == 4);
}
