#include "spancalc/monoid.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace spancalc {

bool operator==(const PointedMap& a, const PointedMap& b) {
  return a.dom == b.dom && a.cod == b.cod && a.values == b.values;
}

CommMonoid make_monoid(int n, std::vector<int> table, int unit) {
  if (n < 1) fail(errc::out_of_range, "carrier must contain the unit");
  if (static_cast<int>(table.size()) != n * n)
    fail(errc::length_mismatch, "operation table must be carrier-squared");
  for (int v : table)
    if (v < 0 || v >= n) fail(errc::out_of_range, "table value outside carrier");
  if (unit < 0 || unit >= n) fail(errc::out_of_range, "unit outside carrier");
  CommMonoid m{FinSet{n}, std::move(table), unit};
  for (int a = 0; a < n; ++a) {
    if (m.add(unit, a) != a || m.add(a, unit) != a)
      fail(errc::invalid, "unit law fails");
    for (int b = 0; b < n; ++b) {
      if (m.add(a, b) != m.add(b, a)) fail(errc::invalid, "not commutative");
      for (int c = 0; c < n; ++c)
        if (m.add(m.add(a, b), c) != m.add(a, m.add(b, c)))
          fail(errc::invalid, "not associative");
    }
  }
  return m;
}

CommMonoid trivial_monoid() { return make_monoid(1, {0}, 0); }

CommMonoid bool_or_monoid() { return make_monoid(2, {0, 1, 1, 1}, 0); }

CommMonoid bool_and_monoid() { return make_monoid(2, {0, 0, 0, 1}, 1); }

CommMonoid cyclic_monoid(int n) {
  std::vector<int> t(static_cast<size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<size_t>(a * n + b)] = (a + b) % n;
  return make_monoid(n, std::move(t), 0);
}

CommMonoid nat_trunc_monoid(int cap) {
  int n = cap + 1;
  std::vector<int> t(static_cast<size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      t[static_cast<size_t>(a * n + b)] = std::min(a + b, cap);
  return make_monoid(n, std::move(t), 0);
}

CommMonoid max_semilattice_monoid(int n) {
  std::vector<int> t(static_cast<size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<size_t>(a * n + b)] = std::max(a, b);
  return make_monoid(n, std::move(t), 0);
}

std::vector<NamedMonoid> monoid_catalog(int nat_cap) {
  std::vector<NamedMonoid> out;
  out.push_back({"trivial", trivial_monoid()});
  out.push_back({"bool-or", bool_or_monoid()});
  out.push_back({"bool-and", bool_and_monoid()});
  out.push_back({"z2", cyclic_monoid(2)});
  out.push_back({"z3", cyclic_monoid(3)});
  out.push_back({"z4", cyclic_monoid(4)});
  out.push_back({"nat-trunc", nat_trunc_monoid(nat_cap)});
  out.push_back({"max3", max_semilattice_monoid(3)});
  return out;
}

std::vector<int> eval_span(const Span1& s, const CommMonoid& m,
                           const std::vector<int>& a) {
  if (static_cast<int>(a.size()) != s.left_foot.size)
    fail(errc::index, "input vector must be indexed by the left foot");
  for (int v : a)
    if (v < 0 || v >= m.carrier.size)
      fail(errc::index, "input entry outside the monoid carrier");
  std::vector<int> out(static_cast<size_t>(s.right_foot.size), m.unit);
  for (int u = 0; u < s.apex.size; ++u) {
    int y = s.rmap.values[static_cast<size_t>(u)];
    int x = s.lmap.values[static_cast<size_t>(u)];
    out[static_cast<size_t>(y)] =
        m.add(out[static_cast<size_t>(y)], a[static_cast<size_t>(x)]);
  }
  return out;
}

NatMatrix ho_matrix(const Span1& s) { return span_matrix(s); }

NatMatrix ho_compose(const NatMatrix& m1, const NatMatrix& m2) {
  if (m1.cols != m2.rows)
    fail(errc::shape, "inner matrix dimensions must agree");
  return matmul(m1, m2);
}

namespace {

// Steps a vector over the carrier through all values; false when exhausted.
bool next_vector(std::vector<int>& v, int base) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (++v[i] < base) return true;
    v[i] = 0;
  }
  return false;
}

std::vector<Span1> all_spans(int x, int y, int max_apex) {
  std::vector<Span1> out;
  for (int a = 0; a <= max_apex; ++a)
    for (const SetMap& l : all_maps(a, x))
      for (const SetMap& r : all_maps(a, y))
        out.push_back(Span1{FinSet{x}, FinSet{a}, FinSet{y}, l, r});
  return out;
}

}  // namespace

ModelCheckReport model_functoriality_check(const CommMonoid& m,
                                           int size_bound) {
  ModelCheckReport rep;
  rep.passed = true;
  // Evaluation must agree across all spans sharing a fiber-count matrix.
  for (int x = 0; x <= size_bound && rep.passed; ++x)
    for (int y = 0; y <= size_bound && rep.passed; ++y)
      for (const Span1& s : all_spans(x, y, size_bound)) {
        Span1 rep_span = span_from_matrix(span_matrix(s));
        std::vector<int> a(static_cast<size_t>(x), 0);
        do {
          if (eval_span(s, m, a) != eval_span(rep_span, m, a)) {
            rep.passed = false;
            rep.detail = "evaluation distinguishes isomorphic spans";
            break;
          }
        } while (next_vector(a, m.carrier.size));
        rep.representative_pairs_checked++;
        if (!rep.passed) break;
      }
  // Evaluation must be functorial for composition by pullback.
  for (int x = 0; x <= size_bound && rep.passed; ++x)
    for (int y = 0; y <= size_bound && rep.passed; ++y)
      for (int z = 0; z <= size_bound && rep.passed; ++z)
        for (const Span1& s : enumerate_spans(FinSet{x}, FinSet{y}, size_bound)) {
          for (const Span1& t :
               enumerate_spans(FinSet{y}, FinSet{z}, size_bound)) {
            Span1 st = compose_spans(s, t);
            std::vector<int> a(static_cast<size_t>(x), 0);
            do {
              if (eval_span(t, m, eval_span(s, m, a)) != eval_span(st, m, a)) {
                rep.passed = false;
                rep.detail = "evaluation is not functorial for composition";
                break;
              }
            } while (next_vector(a, m.carrier.size));
            rep.composites_checked++;
            if (!rep.passed) break;
          }
          if (!rep.passed) break;
        }
  return rep;
}

PointedMap make_pointed_map(int dom, int cod, std::vector<int> values) {
  if (dom < 0 || cod < 0) fail(errc::out_of_range, "negative set size");
  if (static_cast<int>(values.size()) != dom)
    fail(errc::length_mismatch, "value table length does not match domain");
  for (int v : values)
    if (v < -1 || v >= cod)
      fail(errc::out_of_range, "pointed value outside codomain");
  return PointedMap{dom, cod, std::move(values)};
}

PointedMap identity_pointed(int n) {
  PointedMap f{n, n, std::vector<int>(static_cast<size_t>(n))};
  for (int i = 0; i < n; ++i) f.values[static_cast<size_t>(i)] = i;
  return f;
}

PointedMap compose_pointed(const PointedMap& g, const PointedMap& f) {
  if (f.cod != g.dom)
    fail(errc::domain_mismatch, "pointed maps do not chain");
  PointedMap h{f.dom, g.cod, std::vector<int>(static_cast<size_t>(f.dom))};
  for (int i = 0; i < f.dom; ++i) {
    int v = f.values[static_cast<size_t>(i)];
    h.values[static_cast<size_t>(i)] =
        v < 0 ? -1 : g.values[static_cast<size_t>(v)];
  }
  return h;
}

std::vector<PointedMap> all_pointed_maps(int dom, int cod) {
  std::vector<PointedMap> out;
  std::vector<int> v(static_cast<size_t>(dom), -1);
  for (;;) {
    out.push_back(PointedMap{dom, cod, v});
    int i = dom - 1;
    while (i >= 0 && v[static_cast<size_t>(i)] == cod - 1) {
      v[static_cast<size_t>(i)] = -1;
      --i;
    }
    if (i < 0) break;
    v[static_cast<size_t>(i)]++;
  }
  return out;
}

Span1 pointed_to_span(const PointedMap& f) {
  std::vector<int> lv, rv;
  for (int i = 0; i < f.dom; ++i)
    if (f.values[static_cast<size_t>(i)] >= 0) {
      lv.push_back(i);
      rv.push_back(f.values[static_cast<size_t>(i)]);
    }
  int n = static_cast<int>(lv.size());
  return Span1{FinSet{f.dom}, FinSet{n}, FinSet{f.cod},
               SetMap{n, f.dom, std::move(lv)}, SetMap{n, f.cod, std::move(rv)}};
}

bool is_collapsing_span(const Span1& s) {
  return classify_map(s.lmap).mono && classify_map(s.rmap).iso;
}

bool is_collapsing_pointed(const PointedMap& f) {
  std::vector<int> hits(static_cast<size_t>(f.cod), 0);
  for (int v : f.values)
    if (v >= 0) hits[static_cast<size_t>(v)]++;
  for (int h : hits)
    if (h != 1) return false;
  return true;
}

namespace {

int ipow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

CommMonoid free_model(FinSet x, FinSet y, int cap) {
  int digits = x.size * y.size;
  int base = cap + 1;
  int n = ipow(base, digits);
  std::vector<int> t(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int sum = 0, pw = 1, ra = a, rb = b;
      for (int d = 0; d < digits; ++d) {
        int da = ra % base, db = rb % base;
        sum += std::min(da + db, cap) * pw;
        pw *= base;
        ra /= base;
        rb /= base;
      }
      t[static_cast<size_t>(a) * static_cast<size_t>(n) +
        static_cast<size_t>(b)] = sum;
    }
  return make_monoid(n, std::move(t), 0);
}

FreeModelReport free_property_check(FinSet x, const CommMonoid& m, int cap) {
  FreeModelReport rep;
  CommMonoid free = free_model(x, FinSet{1}, cap);
  int base = cap + 1;
  int fn = free.carrier.size;
  // Which pairs stay strictly below saturation in every coordinate.
  std::vector<std::pair<int, int>> safe;
  for (int a = 0; a < fn; ++a)
    for (int b = 0; b < fn; ++b) {
      bool ok = true;
      int ra = a, rb = b;
      for (int d = 0; d < x.size; ++d) {
        if (ra % base + rb % base > cap) ok = false;
        ra /= base;
        rb /= base;
      }
      if (ok) safe.push_back({a, b});
    }
  std::vector<int> gens(static_cast<size_t>(x.size));
  int pw = 1;
  for (int d = 0; d < x.size; ++d) {
    gens[static_cast<size_t>(d)] = pw;
    pw *= base;
  }
  std::map<std::vector<int>, int> seen;  // generator images -> multiplicity
  std::vector<int> h(static_cast<size_t>(fn), 0);
  do {
    if (h[static_cast<size_t>(free.unit)] != m.unit) continue;
    bool hom = true;
    for (auto [a, b] : safe)
      if (h[static_cast<size_t>(free.add(a, b))] !=
          m.add(h[static_cast<size_t>(a)], h[static_cast<size_t>(b)])) {
        hom = false;
        break;
      }
    if (!hom) continue;
    rep.homs_found++;
    std::vector<int> images(static_cast<size_t>(x.size));
    for (int d = 0; d < x.size; ++d)
      images[static_cast<size_t>(d)] = h[static_cast<size_t>(gens[static_cast<size_t>(d)])];
    seen[images]++;
  } while (next_vector(h, m.carrier.size));
  rep.vectors_expected = 1;
  for (int d = 0; d < x.size; ++d) rep.vectors_expected *= m.carrier.size;
  rep.passed = rep.homs_found == rep.vectors_expected &&
               static_cast<long>(seen.size()) == rep.vectors_expected;
  if (!rep.passed) {
    std::ostringstream os;
    os << "homs " << rep.homs_found << " distinct images " << seen.size()
       << " expected " << rep.vectors_expected;
    rep.detail = os.str();
  }
  return rep;
}

}  // namespace spancalc
