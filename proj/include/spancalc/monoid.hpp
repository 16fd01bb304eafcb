// Evaluation of spans on finite commutative monoids, the fiber-count matrix
// functor, pointed maps and collapsing spans, free models on finite sets.
#pragma once

#include <string>
#include <vector>

#include "spancalc/spans.hpp"

namespace spancalc {

struct CommMonoid {
  FinSet carrier;
  std::vector<int> table;  // row-major, table[a*n+b] = a+b
  int unit = 0;

  int add(int a, int b) const {
    return table[static_cast<size_t>(a * carrier.size + b)];
  }
};

// A map of pointed sets A+ -> B+ on the non-basepoint parts; value -1 sends
// an element to the basepoint, and the basepoint itself is always preserved.
struct PointedMap {
  int dom = 0;  // non-basepoint elements of the domain
  int cod = 0;  // non-basepoint elements of the codomain
  std::vector<int> values;
};

bool operator==(const PointedMap& a, const PointedMap& b);
inline bool operator!=(const PointedMap& a, const PointedMap& b) {
  return !(a == b);
}

// Monoid laws are checked exhaustively here.
CommMonoid make_monoid(int n, std::vector<int> table, int unit);

struct NamedMonoid {
  std::string name;
  CommMonoid monoid;
};

CommMonoid trivial_monoid();
CommMonoid bool_or_monoid();
CommMonoid bool_and_monoid();
CommMonoid cyclic_monoid(int n);
CommMonoid nat_trunc_monoid(int cap);
CommMonoid max_semilattice_monoid(int n);
std::vector<NamedMonoid> monoid_catalog(int nat_cap = 15);

// result[y] = sum in M of A[lmap(u)] over all apex elements u with
// rmap(u) = y; the empty sum is the unit.
std::vector<int> eval_span(const Span1& s, const CommMonoid& m,
                           const std::vector<int>& a);

NatMatrix ho_matrix(const Span1& s);
NatMatrix ho_compose(const NatMatrix& m1, const NatMatrix& m2);

struct ModelCheckReport {
  bool passed = false;
  long composites_checked = 0;
  long representative_pairs_checked = 0;
  std::string detail;
};

// Checks, for all spans with feet and apex bounded by size_bound and all
// input vectors, that evaluation is functorial for composition and depends
// only on the fiber-count matrix.
ModelCheckReport model_functoriality_check(const CommMonoid& m, int size_bound);

PointedMap make_pointed_map(int dom, int cod, std::vector<int> values);
PointedMap identity_pointed(int n);
PointedMap compose_pointed(const PointedMap& g, const PointedMap& f);
std::vector<PointedMap> all_pointed_maps(int dom, int cod);

// The span A <- f^{-1}(B) -> B with the subset inclusion on the left.
Span1 pointed_to_span(const PointedMap& f);

bool is_collapsing_span(const Span1& s);
bool is_collapsing_pointed(const PointedMap& f);

// The free model on X evaluated at Y: matrices X-by-Y over saturating
// naturals with entrywise addition, encoded base (cap+1).
CommMonoid free_model(FinSet x, FinSet y, int cap);

struct FreeModelReport {
  bool passed = false;
  long homs_found = 0;
  long vectors_expected = 0;
  std::string detail;
};

// Bounded free property: unit-preserving functions from the cap-truncated
// free monoid on X to M that respect all non-saturating sums correspond
// bijectively to X-vectors in M via h -> (h(generator_x)).
FreeModelReport free_property_check(FinSet x, const CommMonoid& m, int cap);

}  // namespace spancalc
