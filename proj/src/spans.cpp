#include "spancalc/spans.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

namespace spancalc {

bool operator==(const Span1& a, const Span1& b) {
  return a.left_foot == b.left_foot && a.apex == b.apex &&
         a.right_foot == b.right_foot && a.lmap == b.lmap && a.rmap == b.rmap;
}

bool operator==(const NatMatrix& a, const NatMatrix& b) {
  return a.rows == b.rows && a.cols == b.cols && a.entries == b.entries;
}

Span1 make_span(FinSet left, FinSet apex, FinSet right, SetMap lmap,
                SetMap rmap) {
  if (lmap.dom != apex.size || rmap.dom != apex.size)
    fail(errc::domain_mismatch, "span legs must start at the apex");
  if (lmap.cod != left.size)
    fail(errc::codomain_mismatch, "left leg must land in the left foot");
  if (rmap.cod != right.size)
    fail(errc::codomain_mismatch, "right leg must land in the right foot");
  return Span1{left, apex, right, std::move(lmap), std::move(rmap)};
}

Span1 identity_span(FinSet x) {
  return Span1{x, x, x, identity_map(x.size), identity_map(x.size)};
}

Span1 reverse_span(const Span1& s) {
  return Span1{s.right_foot, s.apex, s.left_foot, s.rmap, s.lmap};
}

Span2 make_2cell(Span1 source, Span1 target, SetMap iso) {
  if (source.left_foot != target.left_foot ||
      source.right_foot != target.right_foot)
    fail(errc::foot_mismatch, "2-cell endpoints must share both feet");
  if (iso.dom != source.apex.size || iso.cod != target.apex.size)
    fail(errc::domain_mismatch, "2-cell map must run between the apexes");
  if (!is_bijection(iso))
    fail(errc::not_invertible, "2-cell map must be a bijection");
  if (compose_maps(target.lmap, iso) != source.lmap ||
      compose_maps(target.rmap, iso) != source.rmap)
    fail(errc::not_commuting, "2-cell map must commute with both legs");
  return Span2{std::move(source), std::move(target), std::move(iso)};
}

Span2 identity_2cell(const Span1& s) {
  return Span2{s, s, identity_map(s.apex.size)};
}

Span2 invert_2cell(const Span2& c) {
  return Span2{c.target, c.source, invert(c.iso)};
}

Span1 compose_spans(const Span1& s, const Span1& t) {
  if (s.right_foot != t.left_foot)
    fail(errc::foot_mismatch, "spans must share the middle foot");
  PullbackSquare pb = pullback(s.rmap, t.lmap);
  return Span1{s.left_foot, pb.apex, t.right_foot,
               compose_maps(s.lmap, pb.left), compose_maps(t.rmap, pb.right)};
}

Span2 vcompose2(const Span2& b, const Span2& a) {
  if (a.target != b.source)
    fail(errc::mismatch, "vertical composite needs a.target = b.source");
  return Span2{a.source, b.target, compose_maps(b.iso, a.iso)};
}

Span2 hcompose2(const Span2& b, const Span2& a) {
  if (a.source.right_foot != b.source.left_foot)
    fail(errc::mismatch, "horizontal composite needs chained feet");
  Span1 src = compose_spans(a.source, b.source);
  Span1 tgt = compose_spans(a.target, b.target);
  // Recover the matching pairs behind both composite apexes, then transport
  // each source pair through the two apex bijections.
  PullbackSquare pbs = pullback(a.source.rmap, b.source.lmap);
  PullbackSquare pbt = pullback(a.target.rmap, b.target.lmap);
  std::map<std::pair<int, int>, int> index;
  for (int w = 0; w < pbt.apex.size; ++w)
    index[{pbt.left.values[static_cast<size_t>(w)],
           pbt.right.values[static_cast<size_t>(w)]}] = w;
  std::vector<int> v(static_cast<size_t>(pbs.apex.size));
  for (int z = 0; z < pbs.apex.size; ++z) {
    int u = a.iso.values[static_cast<size_t>(
        pbs.left.values[static_cast<size_t>(z)])];
    int w = b.iso.values[static_cast<size_t>(
        pbs.right.values[static_cast<size_t>(z)])];
    v[static_cast<size_t>(z)] = index.at({u, w});
  }
  return make_2cell(std::move(src), std::move(tgt),
                    SetMap{pbs.apex.size, pbt.apex.size, std::move(v)});
}

NatMatrix span_matrix(const Span1& s) {
  NatMatrix m;
  m.rows = s.left_foot.size;
  m.cols = s.right_foot.size;
  m.entries.assign(static_cast<size_t>(m.rows * m.cols), 0);
  for (int u = 0; u < s.apex.size; ++u)
    m.at(s.lmap.values[static_cast<size_t>(u)],
         s.rmap.values[static_cast<size_t>(u)])++;
  return m;
}

NatMatrix matmul(const NatMatrix& a, const NatMatrix& b) {
  if (a.cols != b.rows)
    fail(errc::shape_mismatch, "inner matrix dimensions must agree");
  NatMatrix m;
  m.rows = a.rows;
  m.cols = b.cols;
  m.entries.assign(static_cast<size_t>(m.rows * m.cols), 0);
  for (int r = 0; r < a.rows; ++r)
    for (int k = 0; k < a.cols; ++k) {
      std::int64_t av = a.at(r, k);
      if (av == 0) continue;
      for (int c = 0; c < b.cols; ++c) m.at(r, c) += av * b.at(k, c);
    }
  return m;
}

NatMatrix identity_matrix(int n) {
  NatMatrix m;
  m.rows = n;
  m.cols = n;
  m.entries.assign(static_cast<size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::optional<Span2> spans_isomorphic(const Span1& s, const Span1& t) {
  if (s.left_foot != t.left_foot || s.right_foot != t.right_foot)
    fail(errc::foot_mismatch, "isomorphism test needs shared feet");
  if (span_matrix(s) != span_matrix(t)) return std::nullopt;
  // Matching fiber sizes; pair off the fibers in element order.
  std::map<std::pair<int, int>, std::vector<int>> tfibers;
  for (int u = 0; u < t.apex.size; ++u)
    tfibers[{t.lmap.values[static_cast<size_t>(u)],
             t.rmap.values[static_cast<size_t>(u)]}]
        .push_back(u);
  std::map<std::pair<int, int>, size_t> used;
  std::vector<int> v(static_cast<size_t>(s.apex.size));
  for (int u = 0; u < s.apex.size; ++u) {
    std::pair<int, int> key{s.lmap.values[static_cast<size_t>(u)],
                            s.rmap.values[static_cast<size_t>(u)]};
    v[static_cast<size_t>(u)] = tfibers[key][used[key]++];
  }
  return make_2cell(s, t, SetMap{s.apex.size, t.apex.size, std::move(v)});
}

namespace {

void enumerate_matrices(int pos, int total, int budget, NatMatrix& m,
                        std::vector<NatMatrix>& out) {
  if (pos == total) {
    out.push_back(m);
    return;
  }
  for (int v = 0; v <= budget; ++v) {
    m.entries[static_cast<size_t>(pos)] = v;
    enumerate_matrices(pos + 1, total, budget - v, m, out);
  }
  m.entries[static_cast<size_t>(pos)] = 0;
}

}  // namespace

std::vector<Span1> enumerate_spans(FinSet x, FinSet y, int max_apex) {
  NatMatrix m;
  m.rows = x.size;
  m.cols = y.size;
  m.entries.assign(static_cast<size_t>(x.size * y.size), 0);
  std::vector<NatMatrix> mats;
  int total = x.size * y.size;
  if (total == 0) {
    mats.push_back(m);
  } else {
    enumerate_matrices(0, total, max_apex, m, mats);
  }
  std::vector<Span1> out;
  out.reserve(mats.size());
  for (const NatMatrix& mat : mats) out.push_back(span_from_matrix(mat));
  return out;
}

Span1 span_from_matrix(const NatMatrix& m) {
  std::vector<int> lv, rv;
  for (int x = 0; x < m.rows; ++x)
    for (int y = 0; y < m.cols; ++y)
      for (std::int64_t k = 0; k < m.at(x, y); ++k) {
        lv.push_back(x);
        rv.push_back(y);
      }
  int n = static_cast<int>(lv.size());
  return Span1{FinSet{m.rows}, FinSet{n}, FinSet{m.cols},
               SetMap{n, m.rows, std::move(lv)}, SetMap{n, m.cols, std::move(rv)}};
}

std::vector<Span2> automorphism_2cells(const Span1& s) {
  // A 2-cell from s to itself permutes each fiber of (lmap, rmap) freely.
  std::map<std::pair<int, int>, std::vector<int>> fibers;
  for (int u = 0; u < s.apex.size; ++u)
    fibers[{s.lmap.values[static_cast<size_t>(u)],
            s.rmap.values[static_cast<size_t>(u)]}]
        .push_back(u);
  std::vector<std::vector<std::vector<int>>> perms;  // per fiber, all orders
  std::vector<std::vector<int>> positions;           // per fiber, slots
  for (auto& [key, elems] : fibers) {
    (void)key;
    positions.push_back(elems);
    std::vector<std::vector<int>> all;
    std::vector<int> p = elems;
    do {
      all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    perms.push_back(std::move(all));
  }
  std::vector<Span2> out;
  std::vector<size_t> pick(perms.size(), 0);
  for (;;) {
    std::vector<int> v(static_cast<size_t>(s.apex.size));
    for (size_t f = 0; f < perms.size(); ++f)
      for (size_t i = 0; i < positions[f].size(); ++i)
        v[static_cast<size_t>(positions[f][i])] = perms[f][pick[f]][i];
    out.push_back(make_2cell(s, s, SetMap{s.apex.size, s.apex.size, std::move(v)}));
    size_t f = 0;
    while (f < perms.size() && ++pick[f] == perms[f].size()) {
      pick[f] = 0;
      ++f;
    }
    if (f == perms.size()) break;
  }
  return out;
}

std::uint64_t automorphism_count(const NatMatrix& m) {
  std::uint64_t n = 1;
  for (std::int64_t e : m.entries)
    for (std::int64_t k = 2; k <= e; ++k) n *= static_cast<std::uint64_t>(k);
  return n;
}

bool is_equivalence(const Span1& s) {
  return is_bijection(s.lmap) && is_bijection(s.rmap);
}

bool has_inverse_span(const Span1& s, int max_apex) {
  Span1 idl = identity_span(s.left_foot);
  Span1 idr = identity_span(s.right_foot);
  for (const Span1& t : enumerate_spans(s.right_foot, s.left_foot, max_apex)) {
    if (!spans_isomorphic(compose_spans(s, t), idl)) continue;
    if (spans_isomorphic(compose_spans(t, s), idr)) return true;
  }
  return false;
}

SetMap operad_compose(const SetMap& sigma, const std::vector<SetMap>& family) {
  int n = static_cast<int>(family.size());
  if (sigma.dom != n || sigma.cod != n || !is_bijection(sigma))
    fail(errc::shape_mismatch, "outer permutation must match the block count");
  for (const SetMap& p : family)
    if (p.dom != p.cod || !is_bijection(p))
      fail(errc::shape_mismatch, "each block entry must be a permutation");
  std::vector<int> offset_in(static_cast<size_t>(n) + 1, 0);
  for (int x = 0; x < n; ++x)
    offset_in[static_cast<size_t>(x) + 1] =
        offset_in[static_cast<size_t>(x)] + family[static_cast<size_t>(x)].dom;
  int total = offset_in[static_cast<size_t>(n)];
  std::vector<int> offset_out(static_cast<size_t>(n), 0);
  for (int x = 0; x < n; ++x) {
    int off = 0;
    for (int xp = 0; xp < n; ++xp)
      if (sigma.values[static_cast<size_t>(xp)] <
          sigma.values[static_cast<size_t>(x)])
        off += family[static_cast<size_t>(xp)].dom;
    offset_out[static_cast<size_t>(x)] = off;
  }
  std::vector<int> v(static_cast<size_t>(total));
  for (int x = 0; x < n; ++x)
    for (int i = 0; i < family[static_cast<size_t>(x)].dom; ++i)
      v[static_cast<size_t>(offset_in[static_cast<size_t>(x)] + i)] =
          offset_out[static_cast<size_t>(x)] +
          family[static_cast<size_t>(x)].values[static_cast<size_t>(i)];
  return SetMap{total, total, std::move(v)};
}

}  // namespace spancalc
