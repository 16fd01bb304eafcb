// Spans of finite sets, invertible 2-cells between them, composition by
// pullback, and the fiber-count matrix invariant.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spancalc/finset.hpp"

namespace spancalc {

struct Span1 {
  FinSet left_foot;
  FinSet apex;
  FinSet right_foot;
  SetMap lmap;  // apex -> left_foot
  SetMap rmap;  // apex -> right_foot
};

bool operator==(const Span1& a, const Span1& b);
inline bool operator!=(const Span1& a, const Span1& b) { return !(a == b); }

// An invertible 2-cell: a bijection of apexes commuting with both legs.
struct Span2 {
  Span1 source;
  Span1 target;
  SetMap iso;  // source.apex -> target.apex
};

struct NatMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> entries;  // row-major

  std::int64_t at(int r, int c) const {
    return entries[static_cast<size_t>(r * cols + c)];
  }
  std::int64_t& at(int r, int c) {
    return entries[static_cast<size_t>(r * cols + c)];
  }
};

bool operator==(const NatMatrix& a, const NatMatrix& b);
inline bool operator!=(const NatMatrix& a, const NatMatrix& b) {
  return !(a == b);
}

Span1 make_span(FinSet left, FinSet apex, FinSet right, SetMap lmap,
                SetMap rmap);
Span1 identity_span(FinSet x);
Span1 reverse_span(const Span1& s);

Span2 make_2cell(Span1 source, Span1 target, SetMap iso);
Span2 identity_2cell(const Span1& s);
Span2 invert_2cell(const Span2& c);

// Composition by pullback; apex elements are matching pairs in lexicographic
// order of (s-apex element, t-apex element).
Span1 compose_spans(const Span1& s, const Span1& t);

// Vertical composite b after a (a: r => s, b: s => t).
Span2 vcompose2(const Span2& b, const Span2& a);

// Horizontal composite over a shared middle foot: a between spans X - Y,
// b between spans Y - Z; result relates the two pullback composites.
Span2 hcompose2(const Span2& b, const Span2& a);

NatMatrix span_matrix(const Span1& s);
NatMatrix matmul(const NatMatrix& a, const NatMatrix& b);
NatMatrix identity_matrix(int n);

// A witness 2-cell iff the matrices agree; constructed fiberwise.
std::optional<Span2> spans_isomorphic(const Span1& s, const Span1& t);

// One canonical representative per iso class (per matrix with entry sum
// <= max_apex), deterministic order. The representative's apex is ordered by
// (x, y) lexicographic over the matrix multiplicities.
std::vector<Span1> enumerate_spans(FinSet x, FinSet y, int max_apex);
Span1 span_from_matrix(const NatMatrix& m);

std::vector<Span2> automorphism_2cells(const Span1& s);
std::uint64_t automorphism_count(const NatMatrix& m);

bool is_equivalence(const Span1& s);
// Bounded search used to cross-validate is_equivalence: an inverse span with
// apex <= max_apex such that both composites are isomorphic to identities.
bool has_inverse_span(const Span1& s, int max_apex);

// Block permutation: blocks (one per element of the outer set, with the given
// sizes) are moved by sigma while family[x] permutes within block x.
SetMap operad_compose(const SetMap& sigma, const std::vector<SetMap>& family);

}  // namespace spancalc
