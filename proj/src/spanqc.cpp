// Span quasicategory cells: validation, simplicial structure, translations
// with the 2-category nerve, products, homspaces, and the bounded complex.
#include "spancalc/spanqc.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <utility>

#include "cell_detail.hpp"
#include "spancalc/parallel.hpp"

namespace spancalc {

namespace detail {

int iv_count(int n) { return (n + 1) * (n + 2) / 2; }

int iv_index(int n, int lo, int hi) {
  return lo * (n + 1) - lo * (lo - 1) / 2 + (hi - lo);
}

SpanCell assemble_cell(int n, const std::vector<FinSet>& sets,
                       const std::vector<SetMap>& rd,
                       const std::vector<SetMap>& ld) {
  SpanCell c;
  c.n = n;
  c.sets = sets;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      int from = iv_index(n, i, j);
      for (int a = i; a <= j; ++a)
        for (int b = a; b <= j; ++b) {
          SetMap m = identity_map(sets[static_cast<size_t>(from)].size);
          for (int t = j; t > b; --t)
            m = compose_maps(rd[static_cast<size_t>(iv_index(n, i, t))], m);
          for (int s = i; s < a; ++s)
            m = compose_maps(ld[static_cast<size_t>(iv_index(n, s, b))], m);
          c.maps[{from, iv_index(n, a, b)}] = std::move(m);
        }
    }
  return c;
}

const SetMap& map_at(const SpanCell& f, int i, int j, int a, int b) {
  return f.maps.at({iv_index(f.n, i, j), iv_index(f.n, a, b)});
}

SpanCell two_cell(const Span1& e01, const Span1& e12, FinSet middle_apex,
                  const SetMap& m1, const SetMap& m2) {
  std::vector<FinSet> sets(6);
  sets[static_cast<size_t>(iv_index(2, 0, 0))] = e01.left_foot;
  sets[static_cast<size_t>(iv_index(2, 0, 1))] = e01.apex;
  sets[static_cast<size_t>(iv_index(2, 0, 2))] = middle_apex;
  sets[static_cast<size_t>(iv_index(2, 1, 1))] = e12.left_foot;
  sets[static_cast<size_t>(iv_index(2, 1, 2))] = e12.apex;
  sets[static_cast<size_t>(iv_index(2, 2, 2))] = e12.right_foot;
  std::vector<SetMap> rd(6), ld(6);
  rd[static_cast<size_t>(iv_index(2, 0, 1))] = e01.lmap;
  ld[static_cast<size_t>(iv_index(2, 0, 1))] = e01.rmap;
  rd[static_cast<size_t>(iv_index(2, 1, 2))] = e12.lmap;
  ld[static_cast<size_t>(iv_index(2, 1, 2))] = e12.rmap;
  rd[static_cast<size_t>(iv_index(2, 0, 2))] = m1;
  ld[static_cast<size_t>(iv_index(2, 0, 2))] = m2;
  return assemble_cell(2, sets, rd, ld);
}

}  // namespace detail

namespace {

using detail::assemble_cell;
using detail::iv_count;
using detail::iv_index;
using detail::map_at;
using detail::two_cell;

// Relabels a cell along a monotone vertex map into [f.n].
SpanCell reindex(const SpanCell& f, int new_n,
                 const std::function<int(int)>& vmap) {
  SpanCell g;
  g.n = new_n;
  g.sets.resize(static_cast<size_t>(iv_count(new_n)));
  for (int a = 0; a <= new_n; ++a)
    for (int b = a; b <= new_n; ++b)
      g.sets[static_cast<size_t>(iv_index(new_n, a, b))] =
          f.sets[static_cast<size_t>(iv_index(f.n, vmap(a), vmap(b)))];
  for (int i = 0; i <= new_n; ++i)
    for (int j = i; j <= new_n; ++j)
      for (int a = i; a <= j; ++a)
        for (int b = a; b <= j; ++b)
          g.maps[{iv_index(new_n, i, j), iv_index(new_n, a, b)}] =
              f.maps.at({iv_index(f.n, vmap(i), vmap(j)),
                         iv_index(f.n, vmap(a), vmap(b))});
  return g;
}

}  // namespace

bool operator==(const SpanCell& a, const SpanCell& b) {
  if (a.n != b.n || a.sets.size() != b.sets.size()) return false;
  for (size_t i = 0; i < a.sets.size(); ++i)
    if (a.sets[i] != b.sets[i]) return false;
  return a.maps == b.maps;
}

bool operator<(const SpanCell& a, const SpanCell& b) {
  if (a.n != b.n) return a.n < b.n;
  for (size_t i = 0; i < a.sets.size() && i < b.sets.size(); ++i)
    if (a.sets[i].size != b.sets[i].size)
      return a.sets[i].size < b.sets[i].size;
  if (a.sets.size() != b.sets.size()) return a.sets.size() < b.sets.size();
  return a.maps < b.maps;
}

FinSet cell_set(const SpanCell& f, Interval iv) {
  if (iv.lo < 0 || iv.hi > f.n || iv.lo > iv.hi)
    fail(errc::index_range, "interval outside the cell");
  return f.sets[static_cast<size_t>(iv_index(f.n, iv.lo, iv.hi))];
}

const SetMap& cell_map(const SpanCell& f, Interval from, Interval to) {
  if (from.lo < 0 || from.hi > f.n || from.lo > from.hi || to.lo < 0 ||
      to.hi > f.n || to.lo > to.hi)
    fail(errc::index_range, "interval outside the cell");
  if (!interval_leq(from, to))
    fail(errc::index_range, "no structure map for that interval pair");
  return f.maps.at(
      {iv_index(f.n, from.lo, from.hi), iv_index(f.n, to.lo, to.hi)});
}

std::vector<int> encode_cell(const SpanCell& f) {
  std::vector<int> out;
  out.push_back(f.n);
  for (const FinSet& s : f.sets) out.push_back(s.size);
  for (const auto& kv : f.maps)
    for (int v : kv.second.values) out.push_back(v);
  return out;
}

SpanCell decode_cell(const std::vector<int>& e) {
  if (e.empty()) fail(errc::shape, "empty cell encoding");
  SpanCell c;
  c.n = e[0];
  if (c.n < 0) fail(errc::shape, "negative dimension in cell encoding");
  int k = iv_count(c.n);
  if (static_cast<int>(e.size()) < 1 + k)
    fail(errc::shape, "cell encoding too short");
  c.sets.resize(static_cast<size_t>(k));
  for (int t = 0; t < k; ++t)
    c.sets[static_cast<size_t>(t)] = make_set(e[static_cast<size_t>(1 + t)]);
  size_t pos = static_cast<size_t>(1 + k);
  for (int i = 0; i <= c.n; ++i)
    for (int j = i; j <= c.n; ++j)
      for (int a = i; a <= j; ++a)
        for (int b = a; b <= j; ++b) {
          int from = iv_index(c.n, i, j);
          int to = iv_index(c.n, a, b);
          int dom = c.sets[static_cast<size_t>(from)].size;
          int cod = c.sets[static_cast<size_t>(to)].size;
          if (pos + static_cast<size_t>(dom) > e.size())
            fail(errc::shape, "cell encoding too short");
          std::vector<int> vals(e.begin() + static_cast<long>(pos),
                                e.begin() + static_cast<long>(pos) + dom);
          pos += static_cast<size_t>(dom);
          c.maps[{from, to}] = make_map(dom, cod, std::move(vals));
        }
  if (pos != e.size()) fail(errc::shape, "trailing data in cell encoding");
  return c;
}

SpanCell cell_from_point(FinSet x) {
  SpanCell c;
  c.n = 0;
  c.sets = {x};
  c.maps[{0, 0}] = identity_map(x.size);
  return c;
}

SpanCell cell_from_span(const Span1& s) {
  std::vector<FinSet> sets(3);
  sets[static_cast<size_t>(iv_index(1, 0, 0))] = s.left_foot;
  sets[static_cast<size_t>(iv_index(1, 0, 1))] = s.apex;
  sets[static_cast<size_t>(iv_index(1, 1, 1))] = s.right_foot;
  std::vector<SetMap> rd(3), ld(3);
  rd[static_cast<size_t>(iv_index(1, 0, 1))] = s.lmap;
  ld[static_cast<size_t>(iv_index(1, 0, 1))] = s.rmap;
  return assemble_cell(1, sets, rd, ld);
}

Span1 cell_edge(const SpanCell& f, int i, int j) {
  if (i < 0 || j > f.n || i > j)
    fail(errc::index_range, "edge endpoints outside the cell");
  return make_span(cell_set(f, {i, i}), cell_set(f, {i, j}),
                   cell_set(f, {j, j}), cell_map(f, {i, j}, {i, i}),
                   cell_map(f, {i, j}, {j, j}));
}

Span1 span_from_cell(const SpanCell& f) {
  if (f.n != 1) fail(errc::dim, "cell is not an edge");
  return cell_edge(f, 0, 1);
}

bool validate_cell(const SpanCell& f) {
  if (f.n < 0) return false;
  int k = iv_count(f.n);
  if (static_cast<int>(f.sets.size()) != k) return false;
  for (const FinSet& s : f.sets)
    if (s.size < 0) return false;
  // Exact key set, map shapes, and value ranges.
  size_t expected = 0;
  for (int i = 0; i <= f.n; ++i)
    for (int j = i; j <= f.n; ++j)
      for (int a = i; a <= j; ++a)
        for (int b = a; b <= j; ++b) {
          ++expected;
          int from = iv_index(f.n, i, j);
          int to = iv_index(f.n, a, b);
          auto it = f.maps.find({from, to});
          if (it == f.maps.end()) return false;
          const SetMap& m = it->second;
          if (m.dom != f.sets[static_cast<size_t>(from)].size ||
              m.cod != f.sets[static_cast<size_t>(to)].size ||
              static_cast<int>(m.values.size()) != m.dom)
            return false;
          for (int v : m.values)
            if (v < 0 || v >= m.cod) return false;
        }
  if (f.maps.size() != expected) return false;
  // Identities on equal intervals.
  for (int t = 0; t < k; ++t)
    if (f.maps.at({t, t}) != identity_map(f.sets[static_cast<size_t>(t)].size))
      return false;
  // Functoriality across every nested triple of intervals.
  for (int i = 0; i <= f.n; ++i)
    for (int j = i; j <= f.n; ++j)
      for (int a = i; a <= j; ++a)
        for (int b = a; b <= j; ++b)
          for (int c = a; c <= b; ++c)
            for (int d = c; d <= b; ++d) {
              const SetMap& outer = map_at(f, i, j, a, b);
              const SetMap& inner = map_at(f, a, b, c, d);
              if (compose_maps(inner, outer) != map_at(f, i, j, c, d))
                return false;
            }
  // Pullback property for every interval pair with nonempty intersection.
  for (int a = 0; a <= f.n; ++a)
    for (int b = a; b <= f.n; ++b)
      for (int c = a; c <= f.n; ++c)
        for (int d = c; d <= f.n; ++d) {
          if (std::make_pair(c, d) <= std::make_pair(a, b)) continue;
          int mlo = std::max(a, c), mhi = std::min(b, d);
          if (mlo > mhi) continue;
          int ulo = std::min(a, c), uhi = std::max(b, d);
          if (!is_pullback_square(map_at(f, ulo, uhi, a, b),
                                  map_at(f, ulo, uhi, c, d),
                                  map_at(f, a, b, mlo, mhi),
                                  map_at(f, c, d, mlo, mhi)))
            return false;
        }
  return true;
}

SpanCell face(const SpanCell& f, int i) {
  if (f.n < 1) fail(errc::index_range, "face of a vertex");
  if (i < 0 || i > f.n) fail(errc::index_range, "face index outside dimension");
  return reindex(f, f.n - 1, [i](int v) { return v + (v >= i ? 1 : 0); });
}

SpanCell degeneracy(const SpanCell& f, int i) {
  if (i < 0 || i > f.n)
    fail(errc::index_range, "degeneracy index outside dimension");
  return reindex(f, f.n + 1, [i](int v) { return v - (v > i ? 1 : 0); });
}

namespace {

// Necessary condition for f to be the j-th degeneracy of its j-th face: the
// (j, j+1) edge is an identity span. Cheap filter before the full compare.
bool identity_edge_at(const SpanCell& f, int j) {
  const FinSet& v = f.sets[static_cast<size_t>(iv_index(f.n, j, j))];
  if (f.sets[static_cast<size_t>(iv_index(f.n, j, j + 1))] != v ||
      f.sets[static_cast<size_t>(iv_index(f.n, j + 1, j + 1))] != v)
    return false;
  const std::vector<int>& lv = map_at(f, j, j + 1, j, j).values;
  const std::vector<int>& rv = map_at(f, j, j + 1, j + 1, j + 1).values;
  for (int t = 0; t < v.size; ++t)
    if (lv[static_cast<size_t>(t)] != t || rv[static_cast<size_t>(t)] != t)
      return false;
  return true;
}

}  // namespace

bool is_degenerate_cell(const SpanCell& f) {
  for (int j = 0; j + 1 <= f.n; ++j)
    if (identity_edge_at(f, j) && f == degeneracy(face(f, j), j)) return true;
  return false;
}

SpanCell reverse_cell(const SpanCell& f) {
  SpanCell g;
  g.n = f.n;
  g.sets.resize(f.sets.size());
  int n = f.n;
  for (int a = 0; a <= n; ++a)
    for (int b = a; b <= n; ++b)
      g.sets[static_cast<size_t>(iv_index(n, a, b))] =
          f.sets[static_cast<size_t>(iv_index(n, n - b, n - a))];
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int a = i; a <= j; ++a)
        for (int b = a; b <= j; ++b)
          g.maps[{iv_index(n, i, j), iv_index(n, a, b)}] =
              f.maps.at({iv_index(n, n - j, n - i), iv_index(n, n - b, n - a)});
  return g;
}

namespace {

// One component of the inverse of theta_{ikj}: sends an element of the
// carrier of f_ij to its (i,k) or (k,j) half of the unique matching pair.
SetMap theta_component(const TwoCatAmbient& amb, const Nerve2Data& d, int i,
                       int k, int j, bool first) {
  int fik = d.arrows.at({i, k});
  int fkj = d.arrows.at({k, j});
  int fij = d.arrows.at({i, j});
  std::vector<std::pair<int, int>> pairs = match_pairs(amb, fik, fkj);
  SetMap inv = invert(d.thetas.at({i, k, j}));
  std::vector<int> vals(static_cast<size_t>(amb.carrier[static_cast<size_t>(fij)]));
  for (size_t c = 0; c < vals.size(); ++c) {
    const auto& pr = pairs[static_cast<size_t>(inv.values[c])];
    vals[c] = first ? pr.first : pr.second;
  }
  int cod = amb.carrier[static_cast<size_t>(first ? fik : fkj)];
  int dom = static_cast<int>(vals.size());
  return make_map(dom, cod, std::move(vals));
}

}  // namespace

SpanCell cell_from_nerve(const TwoCatAmbient& amb,
                         const std::vector<FinSet>& objects,
                         const Nerve2Data& d) {
  try {
    validate_nerve2(amb, d);
  } catch (const error& e) {
    fail(errc::invalid,
         std::string("nerve cell does not validate: ") + e.what());
  }
  int n = d.n;
  std::vector<FinSet> sets(static_cast<size_t>(iv_count(n)));
  std::vector<SetMap> rd(sets.size()), ld(sets.size());
  for (int i = 0; i <= n; ++i) {
    int o = d.objects[static_cast<size_t>(i)];
    if (o < 0 || o >= static_cast<int>(objects.size()))
      fail(errc::invalid, "nerve vertex outside the object list");
    sets[static_cast<size_t>(iv_index(n, i, i))] = objects[static_cast<size_t>(o)];
  }
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Span1 sp = ambient_span_of(amb, objects, d.arrows.at({i, j}));
      int t = iv_index(n, i, j);
      sets[static_cast<size_t>(t)] = sp.apex;
      rd[static_cast<size_t>(t)] =
          (j - 1 == i) ? sp.lmap : theta_component(amb, d, i, j - 1, j, true);
      ld[static_cast<size_t>(t)] =
          (i + 1 == j) ? sp.rmap : theta_component(amb, d, i, i + 1, j, false);
    }
  SpanCell c = assemble_cell(n, sets, rd, ld);
  if (!validate_cell(c))
    fail(errc::invalid, "translated cell fails validation");
  return c;
}

Nerve2Data nerve_from_cell(const TwoCatAmbient& amb,
                           const std::vector<FinSet>& objects,
                           const SpanCell& f) {
  if (!validate_cell(f)) fail(errc::invalid, "cell does not validate");
  Nerve2Data d;
  d.n = f.n;
  for (int i = 0; i <= f.n; ++i) {
    int found = -1, hits = 0;
    for (size_t o = 0; o < objects.size(); ++o)
      if (objects[o] == f.sets[static_cast<size_t>(iv_index(f.n, i, i))]) {
        found = static_cast<int>(o);
        ++hits;
      }
    if (hits != 1)
      fail(errc::invalid, "vertex set is not a unique ambient object");
    d.objects.push_back(found);
  }
  for (int i = 0; i <= f.n; ++i)
    for (int j = i + 1; j <= f.n; ++j) {
      try {
        d.arrows[{i, j}] = ambient_span_id(amb, objects, cell_edge(f, i, j));
      } catch (const error& e) {
        fail(errc::invalid,
             std::string("edge is not an ambient 1-cell: ") + e.what());
      }
    }
  for (int i = 0; i <= f.n; ++i)
    for (int k = i + 1; k <= f.n; ++k)
      for (int j = k + 1; j <= f.n; ++j) {
        std::vector<std::pair<int, int>> pairs =
            match_pairs(amb, d.arrows.at({i, k}), d.arrows.at({k, j}));
        const SetMap& toik = map_at(f, i, j, i, k);
        const SetMap& tokj = map_at(f, i, j, k, j);
        int carrier = f.sets[static_cast<size_t>(iv_index(f.n, i, j))].size;
        std::vector<int> vals(pairs.size(), -1);
        for (size_t t = 0; t < pairs.size(); ++t) {
          int hits = 0;
          for (int c = 0; c < carrier; ++c)
            if (toik.values[static_cast<size_t>(c)] == pairs[t].first &&
                tokj.values[static_cast<size_t>(c)] == pairs[t].second) {
              vals[t] = c;
              ++hits;
            }
          if (hits != 1)
            fail(errc::invalid, "matching pair lacks a unique middle element");
        }
        d.thetas[{i, k, j}] =
            make_map(static_cast<int>(pairs.size()), carrier, std::move(vals));
      }
  try {
    validate_nerve2(amb, d);
  } catch (const error& e) {
    fail(errc::invalid,
         std::string("translated nerve cell does not validate: ") + e.what());
  }
  return d;
}

SpanCell compose_via_cell(const Span1& s, const Span1& t) {
  if (s.right_foot != t.left_foot)
    fail(errc::foot_mismatch, "spans do not share a middle foot");
  PullbackSquare pb = pullback(s.rmap, t.lmap);
  SpanCell c = two_cell(s, t, pb.apex, pb.left, pb.right);
  if (!validate_cell(c))
    fail(errc::invalid, "composite witness fails validation");
  return c;
}

ProductCone product_cone(FinSet a, FinSet b) {
  Coproduct cop = coproduct(a, b);
  ProductCone cone;
  cone.object = cop.sum;
  cone.to_a = make_span(cop.sum, a, a, cop.inl, identity_map(a.size));
  cone.to_b = make_span(cop.sum, b, b, cop.inr, identity_map(b.size));
  return cone;
}

namespace {

// All concrete spans between two fixed feet with apex at most bound, in
// lexicographic order of (apex size, lmap, rmap).
std::vector<Span1> concrete_spans(FinSet from, FinSet to, int bound) {
  std::vector<Span1> out;
  for (int u = 0; u <= bound; ++u)
    for (const SetMap& lm : all_maps(u, from.size))
      for (const SetMap& rm : all_maps(u, to.size))
        out.push_back(make_span(from, make_set(u), to, lm, rm));
  return out;
}

// A slice vertex under (A, B): two bounded spans out of a shared set.
struct SliceVertex {
  Span1 sa;
  Span1 sb;
};

std::vector<SliceVertex> slice_vertices(FinSet a, FinSet b, int bound) {
  std::vector<SliceVertex> out;
  for (int q = 0; q <= bound; ++q) {
    FinSet qs = make_set(q);
    std::vector<Span1> sas = concrete_spans(qs, a, bound);
    std::vector<Span1> sbs = concrete_spans(qs, b, bound);
    for (const Span1& sa : sas)
      for (const Span1& sb : sbs) out.push_back({sa, sb});
  }
  return out;
}

// All valid 2-cells with the prescribed triangle of edges.
std::vector<SpanCell> complete_two_cells(const Span1& e01, const Span1& e12,
                                         const Span1& e02) {
  std::vector<SpanCell> out;
  SpanCell want02 = cell_from_span(e02);
  for (const SetMap& m1 : all_maps(e02.apex.size, e01.apex.size))
    for (const SetMap& m2 : all_maps(e02.apex.size, e12.apex.size)) {
      SpanCell c = two_cell(e01, e12, e02.apex, m1, m2);
      if (validate_cell(c) && face(c, 1) == want02) out.push_back(c);
    }
  return out;
}

// A slice edge into the cone vertex: the underlying edge of spans plus the
// pair of 2-cells over the two cone legs sharing it.
struct ConeEdge {
  Span1 h;
  SpanCell va;
  SpanCell vb;
};

// The canonical factorization of w through the cone; the pairing edge has
// the disjoint union of the two apexes over it.
ConeEdge canonical_cone_edge(const SliceVertex& w, const ProductCone& cone) {
  Coproduct cop = coproduct(w.sa.apex, w.sb.apex);
  std::vector<int> lv(static_cast<size_t>(cop.sum.size), 0);
  std::vector<int> rv(static_cast<size_t>(cop.sum.size), 0);
  for (int i = 0; i < w.sa.apex.size; ++i) {
    int e = cop.inl.values[static_cast<size_t>(i)];
    lv[static_cast<size_t>(e)] = w.sa.lmap.values[static_cast<size_t>(i)];
    rv[static_cast<size_t>(e)] =
        cone.to_a.lmap.values[static_cast<size_t>(w.sa.rmap.values[static_cast<size_t>(i)])];
  }
  for (int j = 0; j < w.sb.apex.size; ++j) {
    int e = cop.inr.values[static_cast<size_t>(j)];
    lv[static_cast<size_t>(e)] = w.sb.lmap.values[static_cast<size_t>(j)];
    rv[static_cast<size_t>(e)] =
        cone.to_b.lmap.values[static_cast<size_t>(w.sb.rmap.values[static_cast<size_t>(j)])];
  }
  ConeEdge out;
  out.h = make_span(w.sa.left_foot, cop.sum, cone.object,
                    make_map(cop.sum.size, w.sa.left_foot.size, lv),
                    make_map(cop.sum.size, cone.object.size, rv));
  out.va = two_cell(out.h, cone.to_a, w.sa.apex, cop.inl, w.sa.rmap);
  out.vb = two_cell(out.h, cone.to_b, w.sb.apex, cop.inr, w.sb.rmap);
  return out;
}

bool cone_edge_valid(const ConeEdge& ce, const SliceVertex& w,
                     const ProductCone& cone) {
  return validate_cell(ce.va) && validate_cell(ce.vb) &&
         face(ce.va, 0) == cell_from_span(cone.to_a) &&
         face(ce.vb, 0) == cell_from_span(cone.to_b) &&
         face(ce.va, 1) == cell_from_span(w.sa) &&
         face(ce.vb, 1) == cell_from_span(w.sb) &&
         face(ce.va, 2) == cell_from_span(ce.h) &&
         face(ce.vb, 2) == cell_from_span(ce.h);
}

// All bounded slice edges from w to the cone vertex.
std::vector<ConeEdge> bounded_cone_edges(const SliceVertex& w,
                                         const ProductCone& cone, int bound) {
  std::vector<ConeEdge> out;
  FinSet q = w.sa.left_foot;
  for (const Span1& h : concrete_spans(q, cone.object, bound)) {
    std::vector<SpanCell> vas = complete_two_cells(h, cone.to_a, w.sa);
    if (vas.empty()) continue;
    std::vector<SpanCell> vbs = complete_two_cells(h, cone.to_b, w.sb);
    for (const SpanCell& va : vas)
      for (const SpanCell& vb : vbs) out.push_back({h, va, vb});
  }
  return out;
}

// A slice edge between two slice vertices.
struct SliceEdge {
  Span1 g;
  SpanCell ya;
  SpanCell yb;
};

std::vector<SliceEdge> slice_edges(const SliceVertex& w0,
                                   const SliceVertex& w1, int bound) {
  std::vector<SliceEdge> out;
  for (const Span1& g :
       concrete_spans(w0.sa.left_foot, w1.sa.left_foot, bound)) {
    std::vector<SpanCell> yas = complete_two_cells(g, w1.sa, w0.sa);
    if (yas.empty()) continue;
    std::vector<SpanCell> ybs = complete_two_cells(g, w1.sb, w0.sb);
    for (const SpanCell& ya : yas)
      for (const SpanCell& yb : ybs) out.push_back({g, ya, yb});
  }
  return out;
}

// Assembles the 3-cell over (left leg, middle edge, cone leg) from its four
// prescribed faces and checks it; toc is the cone leg used on this side.
bool three_cell_matches(const Span1& g, const Span1& h1, const Span1& toc,
                        const SetMap& q1, const SetMap& q2, const SpanCell& v0,
                        const SpanCell& v1, const SpanCell& y,
                        const SpanCell& t) {
  std::vector<FinSet> sets(10);
  sets[static_cast<size_t>(iv_index(3, 0, 0))] = g.left_foot;
  sets[static_cast<size_t>(iv_index(3, 0, 1))] = g.apex;
  sets[static_cast<size_t>(iv_index(3, 0, 2))] = cell_set(v0, {0, 1});
  sets[static_cast<size_t>(iv_index(3, 0, 3))] = cell_set(v0, {0, 2});
  sets[static_cast<size_t>(iv_index(3, 1, 1))] = g.right_foot;
  sets[static_cast<size_t>(iv_index(3, 1, 2))] = h1.apex;
  sets[static_cast<size_t>(iv_index(3, 1, 3))] = cell_set(v1, {0, 2});
  sets[static_cast<size_t>(iv_index(3, 2, 2))] = toc.left_foot;
  sets[static_cast<size_t>(iv_index(3, 2, 3))] = toc.apex;
  sets[static_cast<size_t>(iv_index(3, 3, 3))] = toc.right_foot;
  std::vector<SetMap> rd(10), ld(10);
  rd[static_cast<size_t>(iv_index(3, 0, 1))] = g.lmap;
  ld[static_cast<size_t>(iv_index(3, 0, 1))] = g.rmap;
  rd[static_cast<size_t>(iv_index(3, 1, 2))] = h1.lmap;
  ld[static_cast<size_t>(iv_index(3, 1, 2))] = h1.rmap;
  rd[static_cast<size_t>(iv_index(3, 2, 3))] = toc.lmap;
  ld[static_cast<size_t>(iv_index(3, 2, 3))] = toc.rmap;
  rd[static_cast<size_t>(iv_index(3, 0, 2))] = q1;
  ld[static_cast<size_t>(iv_index(3, 0, 2))] = q2;
  rd[static_cast<size_t>(iv_index(3, 1, 3))] = cell_map(v1, {0, 2}, {0, 1});
  ld[static_cast<size_t>(iv_index(3, 1, 3))] = cell_map(v1, {0, 2}, {1, 2});
  rd[static_cast<size_t>(iv_index(3, 0, 3))] = cell_map(v0, {0, 2}, {0, 1});
  ld[static_cast<size_t>(iv_index(3, 0, 3))] = cell_map(y, {0, 2}, {1, 2});
  SpanCell c = assemble_cell(3, sets, rd, ld);
  return validate_cell(c) && face(c, 0) == v1 && face(c, 1) == v0 &&
         face(c, 2) == y && face(c, 3) == t;
}

// Searches the two free structure maps of the shared bottom face and checks
// that some choice completes both 3-cells of the sphere.
bool sphere_extends(const ProductCone& cone, const SliceEdge& e01,
                    const ConeEdge& c0, const ConeEdge& c1) {
  SpanCell want_h0 = cell_from_span(c0.h);
  for (const SetMap& q1 : all_maps(c0.h.apex.size, e01.g.apex.size))
    for (const SetMap& q2 : all_maps(c0.h.apex.size, c1.h.apex.size)) {
      SpanCell t = two_cell(e01.g, c1.h, c0.h.apex, q1, q2);
      if (!validate_cell(t) || face(t, 1) != want_h0) continue;
      if (three_cell_matches(e01.g, c1.h, cone.to_a, q1, q2, c0.va, c1.va,
                             e01.ya, t) &&
          three_cell_matches(e01.g, c1.h, cone.to_b, q1, q2, c0.vb, c1.vb,
                             e01.yb, t))
        return true;
    }
  return false;
}

}  // namespace

FinalityReport check_product_finality(FinSet a, FinSet b, int n,
                                      int size_bound) {
  if (n != 0 && n != 1)
    fail(errc::dim, "finality check covers sphere dimensions 0 and 1");
  if (size_bound < 0) fail(errc::out_of_range, "negative size bound");
  ProductCone cone = product_cone(a, b);
  std::vector<SliceVertex> ws = slice_vertices(a, b, size_bound);
  FinalityReport rep;
  if (n == 0) {
    std::vector<char> bad(ws.size(), 0);
    par_for(static_cast<long>(ws.size()), [&](long i) {
      ConeEdge ce = canonical_cone_edge(ws[static_cast<size_t>(i)], cone);
      if (!cone_edge_valid(ce, ws[static_cast<size_t>(i)], cone))
        bad[static_cast<size_t>(i)] = 1;
    });
    rep.diagrams_checked = static_cast<long>(ws.size());
    for (size_t i = 0; i < ws.size(); ++i)
      if (bad[i]) {
        ++rep.failures;
        if (rep.detail.empty())
          rep.detail = "no factorization for slice vertex " + std::to_string(i);
      }
    rep.passed = rep.failures == 0;
    return rep;
  }
  std::vector<std::vector<ConeEdge>> ces(ws.size());
  par_for(static_cast<long>(ws.size()), [&](long i) {
    ces[static_cast<size_t>(i)] =
        bounded_cone_edges(ws[static_cast<size_t>(i)], cone, size_bound);
  });
  long m = static_cast<long>(ws.size());
  std::vector<long> cnt(static_cast<size_t>(m * m), 0);
  std::vector<long> bad(static_cast<size_t>(m * m), 0);
  par_for(m * m, [&](long p) {
    size_t i = static_cast<size_t>(p / m), j = static_cast<size_t>(p % m);
    if (ces[i].empty() || ces[j].empty()) return;
    for (const SliceEdge& e : slice_edges(ws[i], ws[j], size_bound))
      for (const ConeEdge& c0 : ces[i])
        for (const ConeEdge& c1 : ces[j]) {
          ++cnt[static_cast<size_t>(p)];
          if (!sphere_extends(cone, e, c0, c1)) ++bad[static_cast<size_t>(p)];
        }
  });
  for (size_t p = 0; p < cnt.size(); ++p) {
    rep.diagrams_checked += cnt[p];
    if (bad[p] > 0 && rep.detail.empty())
      rep.detail = "unfillable sphere over vertex pair " +
                   std::to_string(p / static_cast<size_t>(m)) + "," +
                   std::to_string(p % static_cast<size_t>(m));
    rep.failures += bad[p];
  }
  rep.passed = rep.failures == 0;
  return rep;
}

GroupoidPresentation homspace(FinSet x, FinSet y, int apex_bound) {
  if (apex_bound < 0) fail(errc::out_of_range, "negative apex bound");
  GroupoidPresentation gp;
  int cells = x.size * y.size;
  std::vector<std::int64_t> cur(static_cast<size_t>(cells), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == cells) {
      NatMatrix mt{x.size, y.size, cur};
      gp.aut_orders.push_back(automorphism_count(mt));
      gp.components.push_back(std::move(mt));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[static_cast<size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
    cur[static_cast<size_t>(pos)] = 0;
  };
  rec(0, apex_bound);
  return gp;
}

NatMatrix homspace_block_sum(const NatMatrix& m, const NatMatrix& n) {
  NatMatrix out;
  out.rows = m.rows + n.rows;
  out.cols = m.cols + n.cols;
  out.entries.assign(static_cast<size_t>(out.rows) * static_cast<size_t>(out.cols), 0);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) out.at(r, c) = m.at(r, c);
  for (int r = 0; r < n.rows; ++r)
    for (int c = 0; c < n.cols; ++c)
      out.at(m.rows + r, m.cols + c) = n.at(r, c);
  return out;
}

namespace {

// The canonical doubly-mapped set of a fiber-count matrix: elements sorted
// by their (x, y) images.
void canonical_object(const NatMatrix& m, std::vector<int>* gx,
                      std::vector<int>* gy) {
  gx->clear();
  gy->clear();
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      for (std::int64_t t = 0; t < m.at(r, c); ++t) {
        gx->push_back(r);
        gy->push_back(c);
      }
}

}  // namespace

CompareReport barratt_eccles_compare(FinSet x, FinSet y, int bound) {
  CompareReport rep;
  GroupoidPresentation gp = homspace(x, y, bound);
  rep.components = static_cast<long>(gp.components.size());
  std::map<std::vector<std::int64_t>, int> which;
  for (size_t i = 0; i < gp.components.size(); ++i)
    which[gp.components[i].entries] = static_cast<int>(i);
  std::vector<char> realized(gp.components.size(), 0);
  for (int sz = 0; sz <= bound; ++sz)
    for (const SetMap& fx : all_maps(sz, x.size))
      for (const SetMap& fy : all_maps(sz, y.size)) {
        ++rep.objects_seen;
        NatMatrix m;
        m.rows = x.size;
        m.cols = y.size;
        m.entries.assign(static_cast<size_t>(x.size) * static_cast<size_t>(y.size), 0);
        for (int e = 0; e < sz; ++e)
          m.at(fx.values[static_cast<size_t>(e)],
               fy.values[static_cast<size_t>(e)])++;
        auto it = which.find(m.entries);
        if (it == which.end()) {
          rep.detail = "object realizes a matrix missing from the formula side";
          return rep;
        }
        realized[static_cast<size_t>(it->second)] = 1;
        // Explicit isomorphism onto the canonical object of the component.
        std::vector<int> gx, gy;
        canonical_object(m, &gx, &gy);
        std::vector<int> order(static_cast<size_t>(sz));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int u, int v) {
          return std::make_pair(fx.values[static_cast<size_t>(u)],
                                fy.values[static_cast<size_t>(u)]) <
                 std::make_pair(fx.values[static_cast<size_t>(v)],
                                fy.values[static_cast<size_t>(v)]);
        });
        for (int pos = 0; pos < sz; ++pos) {
          int e = order[static_cast<size_t>(pos)];
          if (gx[static_cast<size_t>(pos)] !=
                  fx.values[static_cast<size_t>(e)] ||
              gy[static_cast<size_t>(pos)] !=
                  fy.values[static_cast<size_t>(e)]) {
            rep.detail = "sorting map fails to commute with both legs";
            return rep;
          }
        }
      }
  for (size_t i = 0; i < gp.components.size(); ++i) {
    if (!realized[i]) {
      rep.detail = "formula component never realized by an object";
      return rep;
    }
    std::vector<int> gx, gy;
    canonical_object(gp.components[i], &gx, &gy);
    std::vector<int> perm(gx.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t autos = 0;
    do {
      bool ok = true;
      for (size_t e = 0; e < perm.size() && ok; ++e)
        if (gx[static_cast<size_t>(perm[e])] != gx[e] ||
            gy[static_cast<size_t>(perm[e])] != gy[e])
          ok = false;
      if (ok) ++autos;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (autos != gp.aut_orders[i]) {
      rep.detail = "automorphism count differs from the factorial formula";
      return rep;
    }
  }
  rep.passed = true;
  return rep;
}

namespace {

// Working state of one last-vertex extension: the concrete data of the new
// intervals (i, d), indexed by i.
struct ExtState {
  int d = 0;
  std::vector<int> size_;
  std::vector<SetMap> rdrop_;  // (i, d) -> (i, d-1)
  std::vector<SetMap> ldrop_;  // (i, d) -> (i+1, d)
  std::vector<SetMap> leg_;    // (i, d) -> (i, i)
  std::vector<std::vector<int>> sigmas;  // in walk order i = d-2 .. 0
};

ExtState ext_init(const Span1& sp, int d) {
  ExtState st;
  st.d = d;
  st.size_.assign(static_cast<size_t>(d), 0);
  st.rdrop_.assign(static_cast<size_t>(d), SetMap{});
  st.ldrop_.assign(static_cast<size_t>(d), SetMap{});
  st.leg_.assign(static_cast<size_t>(d), SetMap{});
  st.size_[static_cast<size_t>(d - 1)] = sp.apex.size;
  st.rdrop_[static_cast<size_t>(d - 1)] = sp.lmap;
  st.ldrop_[static_cast<size_t>(d - 1)] = sp.rmap;
  st.leg_[static_cast<size_t>(d - 1)] = sp.lmap;
  return st;
}

// The forced pullback at level i, built against the level above.
PullbackSquare ext_level_pb(const SpanCell& base, const ExtState& st, int i) {
  const SetMap& left = map_at(base, i, i + 1, i + 1, i + 1);
  return pullback(left, st.leg_[static_cast<size_t>(i + 1)]);
}

// Installs level i of the state for one bijection choice; sigma lists the
// pullback element assigned to each element of the new concrete set.
void ext_level_apply(const SpanCell& base, const PullbackSquare& pb,
                     const std::vector<int>& sigma, int i, ExtState* st) {
  int k = static_cast<int>(sigma.size());
  int d = st->d;
  std::vector<int> adj(static_cast<size_t>(k)), ldp(static_cast<size_t>(k));
  for (int v = 0; v < k; ++v) {
    adj[static_cast<size_t>(v)] =
        pb.left.values[static_cast<size_t>(sigma[static_cast<size_t>(v)])];
    ldp[static_cast<size_t>(v)] =
        pb.right.values[static_cast<size_t>(sigma[static_cast<size_t>(v)])];
  }
  const SetMap& base_to_adj = map_at(base, i, d - 1, i, i + 1);
  const SetMap& base_to_next = map_at(base, i, d - 1, i + 1, d - 1);
  const SetMap& rd_next = st->rdrop_[static_cast<size_t>(i + 1)];
  std::vector<int> rdp(static_cast<size_t>(k), -1);
  int basesz = base.sets[static_cast<size_t>(iv_index(base.n, i, d - 1))].size;
  for (int v = 0; v < k; ++v) {
    int aa = adj[static_cast<size_t>(v)];
    int bb = rd_next.values[static_cast<size_t>(ldp[static_cast<size_t>(v)])];
    int hits = 0;
    for (int c = 0; c < basesz; ++c)
      if (base_to_adj.values[static_cast<size_t>(c)] == aa &&
          base_to_next.values[static_cast<size_t>(c)] == bb) {
        rdp[static_cast<size_t>(v)] = c;
        ++hits;
      }
    if (hits != 1) fail(errc::invalid, "extension lost pullback uniqueness");
  }
  st->size_[static_cast<size_t>(i)] = k;
  st->ldrop_[static_cast<size_t>(i)] =
      make_map(k, st->size_[static_cast<size_t>(i + 1)], ldp);
  st->rdrop_[static_cast<size_t>(i)] = make_map(k, basesz, rdp);
  const SetMap& adj_leg = map_at(base, i, i + 1, i, i);
  std::vector<int> leg(static_cast<size_t>(k));
  for (int v = 0; v < k; ++v)
    leg[static_cast<size_t>(v)] =
        adj_leg.values[static_cast<size_t>(adj[static_cast<size_t>(v)])];
  st->leg_[static_cast<size_t>(i)] = make_map(k, adj_leg.cod, leg);
}

// Builds the extended cell reusing the composite table of the front face:
// old entries are copied, maps out of a new interval (i, d) factor as the
// base composite after the right drop, or a chain of left drops.
SpanCell ext_assemble(const SpanCell& base, const Span1& sp,
                      const ExtState& st) {
  int d = st.d;
  SpanCell c;
  c.n = d;
  c.sets.resize(static_cast<size_t>(iv_count(d)));
  for (int a = 0; a <= d - 1; ++a)
    for (int b = a; b <= d - 1; ++b)
      c.sets[static_cast<size_t>(iv_index(d, a, b))] =
          base.sets[static_cast<size_t>(iv_index(d - 1, a, b))];
  c.sets[static_cast<size_t>(iv_index(d, d, d))] = sp.right_foot;
  for (int i = 0; i <= d - 1; ++i)
    c.sets[static_cast<size_t>(iv_index(d, i, d))] =
        make_set(st.size_[static_cast<size_t>(i)]);
  for (int i = 0; i <= d - 1; ++i)
    for (int j = i; j <= d - 1; ++j)
      for (int a = i; a <= j; ++a)
        for (int b = a; b <= j; ++b)
          c.maps[{iv_index(d, i, j), iv_index(d, a, b)}] =
              base.maps.at({iv_index(d - 1, i, j), iv_index(d - 1, a, b)});
  c.maps[{iv_index(d, d, d), iv_index(d, d, d)}] =
      identity_map(sp.right_foot.size);
  for (int i = d - 1; i >= 0; --i) {
    int from = iv_index(d, i, d);
    c.maps[{from, from}] = identity_map(st.size_[static_cast<size_t>(i)]);
    SetMap down = st.ldrop_[static_cast<size_t>(i)];
    for (int a = i + 1; a <= d; ++a) {
      c.maps[{from, iv_index(d, a, d)}] = down;
      if (a <= d - 1)
        down = compose_maps(st.ldrop_[static_cast<size_t>(a)], down);
    }
    const SetMap& rdrop = st.rdrop_[static_cast<size_t>(i)];
    for (int a = i; a <= d - 1; ++a)
      for (int b = a; b <= d - 1; ++b)
        c.maps[{from, iv_index(d, a, b)}] = compose_maps(
            base.maps.at({iv_index(d - 1, i, d - 1), iv_index(d - 1, a, b)}),
            rdrop);
  }
  return c;
}

// Checks only the content added by the last vertex: the interchange square
// and the adjacent split property at every new interval. With a valid front
// face this covers the whole cell, since every other square and composite
// lies inside the front face.
bool ext_validate(const SpanCell& f) {
  int n = f.n;
  for (int s = 0; s + 2 <= n; ++s) {
    const SetMap& ld_sn = map_at(f, s, n, s + 1, n);
    const SetMap& rd_sn = map_at(f, s, n, s, n - 1);
    if (compose_maps(map_at(f, s, n - 1, s + 1, n - 1), rd_sn) !=
        compose_maps(map_at(f, s + 1, n, s + 1, n - 1), ld_sn))
      return false;
    if (!is_pullback_square(map_at(f, s, n, s, s + 1), ld_sn,
                            map_at(f, s, s + 1, s + 1, s + 1),
                            map_at(f, s + 1, n, s + 1, s + 1)))
      return false;
  }
  return true;
}

// Depth-first enumeration over the bijection choices of every level.
void ext_dfs(const SpanCell& base, int bound, int i, ExtState& st,
             const std::function<void(ExtState&)>& emit) {
  if (i < 0) {
    emit(st);
    return;
  }
  PullbackSquare pb = ext_level_pb(base, st, i);
  if (pb.apex.size > bound) return;
  std::vector<int> sigma(static_cast<size_t>(pb.apex.size));
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    ext_level_apply(base, pb, sigma, i, &st);
    st.sigmas.push_back(sigma);
    ext_dfs(base, bound, i - 1, st, emit);
    st.sigmas.pop_back();
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

// Deterministic rebuild of one extension from its recorded choices.
SpanCell extend_with(const SpanCell& base, const Span1& sp,
                     const std::vector<std::vector<int>>& sigmas) {
  int d = base.n + 1;
  ExtState st = ext_init(sp, d);
  size_t at = 0;
  for (int i = d - 2; i >= 0; --i) {
    PullbackSquare pb = ext_level_pb(base, st, i);
    if (at >= sigmas.size() ||
        static_cast<int>(sigmas[at].size()) != pb.apex.size)
      fail(errc::invalid, "extension recipe does not match its base");
    ext_level_apply(base, pb, sigmas[at], i, &st);
    ++at;
  }
  if (at != sigmas.size())
    fail(errc::invalid, "extension recipe does not match its base");
  return ext_assemble(base, sp, st);
}

}  // namespace

SpanCell BoundedComplex::cell(int dim, int id) const {
  if (dim < 0 || dim >= static_cast<int>(sset.counts.size()) || id < 0 ||
      id >= sset.counts[static_cast<size_t>(dim)])
    fail(errc::index_range, "cell id outside the complex");
  if (dim <= payload_dim)
    return decode_cell(enc[static_cast<size_t>(dim)][static_cast<size_t>(id)]);
  const Seed& s = seeds[static_cast<size_t>(dim)][static_cast<size_t>(id)];
  return extend_with(cell_of(s.base), s.last_span, s.sigmas);
}

SpanCell BoundedComplex::cell_of(const CellRef& r) const {
  SpanCell c = cell(r.base_dim, r.base_id);
  for (int t = static_cast<int>(r.degens.size()) - 1; t >= 0; --t)
    c = degeneracy(c, r.degens[static_cast<size_t>(t)]);
  return c;
}

CellRef BoundedComplex::ref_of(const SpanCell& f) const {
  for (int j = 0; j + 1 <= f.n; ++j) {
    if (!identity_edge_at(f, j)) continue;
    SpanCell df = face(f, j);
    if (f == degeneracy(df, j)) return apply_degeneracy(ref_of(df), j);
  }
  if (f.n < 0 || f.n >= static_cast<int>(idx.size()) ||
      idx[static_cast<size_t>(f.n)].empty())
    fail(errc::index_range, "no cell index at that dimension");
  auto it = idx[static_cast<size_t>(f.n)].find(encode_cell(f));
  if (it == idx[static_cast<size_t>(f.n)].end())
    fail(errc::index_range, "cell is not in the complex");
  return CellRef{f.n, it->second, {}};
}

BoundedComplex bounded_span_complex(int size_bound, int dim_cap) {
  if (size_bound < 0) fail(errc::out_of_range, "negative size bound");
  if (dim_cap < 0) fail(errc::out_of_range, "negative dimension cap");
  BoundedComplex bc;
  bc.size_bound = size_bound;
  bc.payload_dim = std::min(dim_cap, 3);
  int idx_top = std::max(bc.payload_dim, dim_cap - 1);
  bc.enc.resize(static_cast<size_t>(dim_cap) + 1);
  bc.idx.resize(static_cast<size_t>(dim_cap) + 1);
  bc.seeds.resize(static_cast<size_t>(dim_cap) + 1);
  std::vector<int> counts(static_cast<size_t>(dim_cap) + 1, 0);
  std::vector<std::vector<std::vector<CellRef>>> face_tab(
      static_cast<size_t>(dim_cap) + 1);
  std::vector<std::vector<std::string>> labels(static_cast<size_t>(dim_cap) +
                                               1);
  // Bookkeeping uses sset.counts before the final assembly.
  bc.sset.counts.assign(static_cast<size_t>(dim_cap) + 1, 0);
  for (int k = 0; k <= size_bound; ++k) {
    SpanCell c = cell_from_point(make_set(k));
    std::vector<int> e = encode_cell(c);
    bc.idx[0][e] = k;
    bc.enc[0].push_back(std::move(e));
    labels[0].push_back("0." + std::to_string(k));
  }
  counts[0] = size_bound + 1;
  bc.sset.counts[0] = counts[0];
  for (int d = 1; d <= dim_cap; ++d) {
    // Bases are all cells of dimension d - 1, degenerate cells included,
    // since the front face of a nondegenerate cell may be degenerate.
    std::vector<CellRef> bases;
    for (int k = d - 1; k >= 0; --k) {
      int t = d - 1 - k;
      std::vector<std::vector<int>> picks;
      std::vector<int> pick;
      std::function<void(int)> gen = [&](int hi) {
        if (static_cast<int>(pick.size()) == t) {
          picks.push_back(pick);
          return;
        }
        int need = t - static_cast<int>(pick.size());
        for (int j = hi; j >= need - 1; --j) {
          pick.push_back(j);
          gen(j - 1);
          pick.pop_back();
        }
      };
      gen(d - 2);
      for (const std::vector<int>& degs : picks)
        for (int id = 0; id < counts[static_cast<size_t>(k)]; ++id)
          bases.push_back(CellRef{k, id, degs});
    }
    long nb = static_cast<long>(bases.size());
    struct NewCell {
      std::vector<int> e;
      BoundedComplex::Seed seed;
      std::vector<CellRef> faces;
    };
    bool keep_enc = d <= idx_top;
    bool keep_payload = d <= bc.payload_dim;
    // Bases are processed in windows so the merge buffer stays small.
    const long window = 2048;
    for (long w0 = 0; w0 < nb; w0 += window) {
      long w1 = std::min(nb, w0 + window);
      std::vector<std::vector<NewCell>> built(static_cast<size_t>(w1 - w0));
      par_for(w1 - w0, [&](long t) {
        long bidx = w0 + t;
        SpanCell base = bc.cell_of(bases[static_cast<size_t>(bidx)]);
        FinSet last =
            base.sets[static_cast<size_t>(iv_index(d - 1, d - 1, d - 1))];
        std::vector<NewCell>& mine = built[static_cast<size_t>(t)];
        for (int uz = 0; uz <= size_bound; ++uz)
          for (int z = 0; z <= size_bound; ++z)
            for (const SetMap& lm : all_maps(uz, last.size))
              for (const SetMap& rm : all_maps(uz, z)) {
                Span1 sp = make_span(last, make_set(uz), make_set(z), lm, rm);
                ExtState st = ext_init(sp, d);
                ext_dfs(base, size_bound, d - 2, st, [&](ExtState& got) {
                  SpanCell c = ext_assemble(base, sp, got);
                  if (!ext_validate(c))
                    fail(errc::invalid, "extension produced an invalid cell");
                  if (is_degenerate_cell(c)) return;
                  NewCell nc;
                  nc.seed.base = bases[static_cast<size_t>(bidx)];
                  nc.seed.last_span = sp;
                  nc.seed.sigmas = got.sigmas;
                  if (keep_enc) nc.e = encode_cell(c);
                  for (int i = 0; i <= d; ++i)
                    nc.faces.push_back(bc.ref_of(face(c, i)));
                  mine.push_back(std::move(nc));
                });
              }
      });
      for (std::vector<NewCell>& chunk : built)
        for (NewCell& nc : chunk) {
          int id = counts[static_cast<size_t>(d)]++;
          if (keep_enc) bc.idx[static_cast<size_t>(d)][nc.e] = id;
          if (keep_payload)
            bc.enc[static_cast<size_t>(d)].push_back(std::move(nc.e));
          if (!keep_payload)
            bc.seeds[static_cast<size_t>(d)].push_back(std::move(nc.seed));
          face_tab[static_cast<size_t>(d)].push_back(std::move(nc.faces));
          labels[static_cast<size_t>(d)].push_back(std::to_string(d) + "." +
                                                   std::to_string(id));
        }
    }
    bc.sset.counts[static_cast<size_t>(d)] = counts[static_cast<size_t>(d)];
  }
  bc.sset = make_sset(dim_cap, counts, std::move(face_tab), std::move(labels));
  return bc;
}

}  // namespace spancalc
