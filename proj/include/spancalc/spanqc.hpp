// Cells of the span quasicategory: pullback-property diagrams over the
// interval poset, faces and degeneracies, translation to and from the
// 2-category nerve, the bounded complex, products, and homspaces.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spancalc/simplex.hpp"
#include "spancalc/spans.hpp"

namespace spancalc {

// A functor on the interval poset of [n]: one finite set per interval and
// one structure map per inclusion pair, identities included. Keys are
// (from, to) indices into interval_poset(n) with to contained in from.
struct SpanCell {
  int n = 0;
  std::vector<FinSet> sets;
  std::map<std::pair<int, int>, SetMap> maps;
};

bool operator==(const SpanCell& a, const SpanCell& b);
bool operator<(const SpanCell& a, const SpanCell& b);
inline bool operator!=(const SpanCell& a, const SpanCell& b) {
  return !(a == b);
}

FinSet cell_set(const SpanCell& f, Interval iv);
const SetMap& cell_map(const SpanCell& f, Interval from, Interval to);

// Flat integer encoding used for indexing and compact storage; the map
// table is serialized in key order, which is canonical given n.
std::vector<int> encode_cell(const SpanCell& f);
SpanCell decode_cell(const std::vector<int>& e);

SpanCell cell_from_point(FinSet x);
SpanCell cell_from_span(const Span1& s);
// The (i, j) edge of a cell as a span between its endpoint sets.
Span1 cell_edge(const SpanCell& f, int i, int j);
Span1 span_from_cell(const SpanCell& f);

// Functoriality of the map table plus the pullback property for every
// interval pair with nonempty intersection.
bool validate_cell(const SpanCell& f);

SpanCell face(const SpanCell& f, int i);
SpanCell degeneracy(const SpanCell& f, int i);
bool is_degenerate_cell(const SpanCell& f);

// The involution induced by reversing the vertex order.
SpanCell reverse_cell(const SpanCell& f);

// Mutually inverse translations between nerve cells of the span 2-category
// and pullback-property cells; objects lists the ambient vertex sets.
SpanCell cell_from_nerve(const TwoCatAmbient& amb,
                         const std::vector<FinSet>& objects,
                         const Nerve2Data& d);
Nerve2Data nerve_from_cell(const TwoCatAmbient& amb,
                           const std::vector<FinSet>& objects,
                           const SpanCell& f);

// The 2-cell witnessing the composite of s then t; its middle face is
// compose_spans(s, t).
SpanCell compose_via_cell(const Span1& s, const Span1& t);

struct ProductCone {
  FinSet object;
  Span1 to_a;
  Span1 to_b;
};

ProductCone product_cone(FinSet a, FinSet b);

struct FinalityReport {
  bool passed = false;
  long diagrams_checked = 0;
  long failures = 0;
  std::string detail;
};

// Verifies that every bounded sphere of slice cells under the pair (A, B)
// with terminal vertex the product cone extends, constructing the
// extension. n = 0 treats slice objects, n = 1 spheres of slice edges.
FinalityReport check_product_finality(FinSet a, FinSet b, int n,
                                      int size_bound);

struct GroupoidPresentation {
  std::vector<NatMatrix> components;
  std::vector<std::uint64_t> aut_orders;
};

// The groupoid of sets over X x Y with total size at most apex_bound:
// components indexed by fiber-count matrices, automorphisms counted by the
// product of factorials.
GroupoidPresentation homspace(FinSet x, FinSet y, int apex_bound);
NatMatrix homspace_block_sum(const NatMatrix& m, const NatMatrix& n);

struct CompareReport {
  bool passed = false;
  long components = 0;
  long objects_seen = 0;
  std::string detail;
};

// Computes the homspace two ways: by the matrix formula and by direct
// enumeration of doubly-mapped sets with their isomorphisms over both legs.
CompareReport barratt_eccles_compare(FinSet x, FinSet y, int bound);

// The truncated simplicial set of all cells whose interval sets have size
// at most size_bound. Payloads are stored encoded up to payload_dim; higher
// cells keep only the recipe that rebuilds them from their front face.
struct BoundedComplex {
  int size_bound = 0;
  int payload_dim = 0;
  TruncatedSSet sset;
  std::vector<std::vector<std::vector<int>>> enc;
  std::vector<std::map<std::vector<int>, int>> idx;

  struct Seed {
    CellRef base;
    Span1 last_span;
    std::vector<std::vector<int>> sigmas;
  };
  std::vector<std::vector<Seed>> seeds;

  SpanCell cell(int dim, int id) const;
  SpanCell cell_of(const CellRef& r) const;
  // Resolves cells of dimension at most payload_dim plus their
  // degeneracies.
  CellRef ref_of(const SpanCell& f) const;
};

BoundedComplex bounded_span_complex(int size_bound, int dim_cap);

}  // namespace spancalc
