// Spans, composition by pullback, matrices, and 2-cells.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "spancalc/spans.hpp"

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

TEST_CASE("copy then add composite has the expected matrix") {
  Span1 st = compose_spans(copy_span(), add_span());
  CHECK(st.left_foot.size == 3);
  CHECK(st.apex.size == 8);
  CHECK(st.right_foot.size == 4);
  NatMatrix m = span_matrix(st);
  CHECK(m.rows == 3);
  CHECK(m.cols == 4);
  CHECK(m.entries ==
        std::vector<std::int64_t>{1, 0, 0, 3, 1, 0, 0, 1, 0, 1, 0, 1});
}

TEST_CASE("composition rejects mismatched feet") {
  CHECK_THROWS_AS(compose_spans(copy_span(), copy_span()), error);
}

TEST_CASE("matrix entries count apex elements over each foot pair") {
  Span1 s = make_span(make_set(2), make_set(3), make_set(2),
                      make_map(3, 2, {0, 0, 1}), make_map(3, 2, {1, 1, 1}));
  NatMatrix m = span_matrix(s);
  CHECK(m.at(0, 0) == 0);
  CHECK(m.at(0, 1) == 2);
  CHECK(m.at(1, 0) == 0);
  CHECK(m.at(1, 1) == 1);
}

TEST_CASE("identity spans are units up to isomorphism") {
  Span1 s = make_span(make_set(2), make_set(3), make_set(2),
                      make_map(3, 2, {0, 0, 1}), make_map(3, 2, {1, 0, 1}));
  Span1 ls = compose_spans(identity_span(make_set(2)), s);
  Span1 sr = compose_spans(s, identity_span(make_set(2)));
  CHECK(spans_isomorphic(ls, s).has_value());
  CHECK(spans_isomorphic(sr, s).has_value());
  CHECK(span_matrix(ls) == span_matrix(s));
  CHECK(span_matrix(sr) == span_matrix(s));
}

TEST_CASE("composition is associative up to isomorphism") {
  std::vector<Span1> reps =
      enumerate_spans(make_set(2), make_set(2), 2);
  for (const Span1& s : reps)
    for (const Span1& t : reps)
      for (const Span1& u : reps) {
        Span1 a = compose_spans(compose_spans(s, t), u);
        Span1 b = compose_spans(s, compose_spans(t, u));
        CHECK(span_matrix(a) == span_matrix(b));
        CHECK(spans_isomorphic(a, b).has_value());
      }
}

TEST_CASE("reversal is an involution and transposes the matrix") {
  Span1 s = make_span(make_set(2), make_set(3), make_set(1),
                      make_map(3, 2, {0, 1, 1}), constant_map(3, 1, 0));
  Span1 r = reverse_span(s);
  CHECK(reverse_span(r) == s);
  NatMatrix m = span_matrix(s), mt = span_matrix(r);
  CHECK(mt.rows == m.cols);
  CHECK(mt.cols == m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) CHECK(m.at(i, j) == mt.at(j, i));
}

TEST_CASE("enumeration lists canonical representatives exactly once") {
  std::vector<Span1> reps = enumerate_spans(make_set(2), make_set(2), 2);
  CHECK(reps.size() == 15);
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j)
      CHECK_FALSE(spans_isomorphic(reps[i], reps[j]).has_value());
  CHECK(enumerate_spans(make_set(1), make_set(1), 2).size() == 3);
  CHECK(enumerate_spans(make_set(0), make_set(2), 2).size() == 1);
  CHECK(enumerate_spans(make_set(3), make_set(3), 3).size() == 220);
}

TEST_CASE("spans are isomorphic exactly when their matrices agree") {
  std::vector<Span1> reps = enumerate_spans(make_set(2), make_set(1), 2);
  for (const Span1& s : reps)
    for (const Span1& t : reps)
      CHECK(spans_isomorphic(s, t).has_value() == (span_matrix(s) == span_matrix(t)));
}

TEST_CASE("span from matrix inverts the matrix of a span") {
  for (const Span1& s : enumerate_spans(make_set(2), make_set(2), 2)) {
    NatMatrix m = span_matrix(s);
    CHECK(span_matrix(span_from_matrix(m)) == m);
    CHECK(spans_isomorphic(span_from_matrix(m), s).has_value());
  }
}

TEST_CASE("two cells compose isomorphisms of spans") {
  Span1 s = make_span(make_set(1), make_set(2), make_set(1),
                      constant_map(2, 1, 0), constant_map(2, 1, 0));
  std::vector<Span2> autos = automorphism_2cells(s);
  CHECK(autos.size() == 2);
  for (const Span2& a : autos) {
    Span2 inv = invert_2cell(a);
    CHECK(compose_maps(inv.iso, a.iso) == identity_map(2));
  }
  CHECK(automorphism_2cells(identity_span(make_set(2))).size() == 1);
}

TEST_CASE("automorphism count matches the listed automorphisms") {
  for (const Span1& s : enumerate_spans(make_set(2), make_set(2), 2))
    CHECK(automorphism_count(span_matrix(s)) ==
          automorphism_2cells(s).size());
}

TEST_CASE("two cell construction checks both triangles") {
  Span1 s = make_span(make_set(1), make_set(2), make_set(2),
                      constant_map(2, 1, 0), identity_map(2));
  Span1 t = make_span(make_set(1), make_set(2), make_set(2),
                      constant_map(2, 1, 0), make_map(2, 2, {1, 0}));
  Span2 c = make_2cell(s, t, make_map(2, 2, {1, 0}));
  CHECK(c.iso.values == std::vector<int>{1, 0});
  CHECK_THROWS_AS(make_2cell(s, t, identity_map(2)), error);
  Span2 id = identity_2cell(s);
  CHECK(id.iso == identity_map(2));
}

TEST_CASE("equivalences are the invertible spans") {
  CHECK(is_equivalence(identity_span(make_set(3))));
  Span1 swap = make_span(make_set(2), make_set(2), make_set(2),
                         identity_map(2), make_map(2, 2, {1, 0}));
  CHECK(is_equivalence(swap));
  CHECK(has_inverse_span(swap, 2));
  Span1 fold = make_span(make_set(1), make_set(2), make_set(1),
                         constant_map(2, 1, 0), constant_map(2, 1, 0));
  CHECK_FALSE(is_equivalence(fold));
  CHECK_FALSE(has_inverse_span(fold, 3));
}
