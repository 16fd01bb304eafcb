#include "spancalc/simplex.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <set>
#include <sstream>

#include "spancalc/parallel.hpp"
#include "spancalc/spans.hpp"

namespace spancalc {

bool operator==(Interval a, Interval b) { return a.lo == b.lo && a.hi == b.hi; }

bool operator<(Interval a, Interval b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.hi < b.hi;
}

IntervalPoset interval_poset(int n) {
  if (n < 0) fail(errc::out_of_range, "simplex dimension must be nonnegative");
  IntervalPoset p;
  p.n = n;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) p.elements.push_back(Interval{i, j});
  return p;
}

int interval_index(const IntervalPoset& p, Interval iv) {
  for (size_t t = 0; t < p.elements.size(); ++t)
    if (p.elements[t] == iv) return static_cast<int>(t);
  fail(errc::index_range, "interval outside the poset");
}

bool interval_leq(Interval a, Interval b) {
  return a.lo <= b.lo && b.hi <= a.hi;
}

bool check_monotone(const SetMap& phi) {
  for (int i = 0; i + 1 < phi.dom; ++i)
    if (phi.values[static_cast<size_t>(i)] >
        phi.values[static_cast<size_t>(i) + 1])
      return false;
  return true;
}

SetMap induced(const SetMap& phi) {
  if (!check_monotone(phi))
    fail(errc::not_monotone, "induced functor needs a monotone map");
  if (phi.dom < 1 || phi.cod < 1)
    fail(errc::out_of_range, "simplex maps need nonempty vertex sets");
  IntervalPoset src = interval_poset(phi.dom - 1);
  IntervalPoset dst = interval_poset(phi.cod - 1);
  std::vector<int> v;
  v.reserve(src.elements.size());
  for (Interval iv : src.elements)
    v.push_back(interval_index(
        dst, Interval{phi.values[static_cast<size_t>(iv.lo)],
                      phi.values[static_cast<size_t>(iv.hi)]}));
  return SetMap{static_cast<int>(src.elements.size()),
                static_cast<int>(dst.elements.size()), std::move(v)};
}

bool operator==(const CellRef& a, const CellRef& b) {
  return a.base_dim == b.base_dim && a.base_id == b.base_id &&
         a.degens == b.degens;
}

bool operator<(const CellRef& a, const CellRef& b) {
  if (a.base_dim != b.base_dim) return a.base_dim < b.base_dim;
  if (a.base_id != b.base_id) return a.base_id < b.base_id;
  return a.degens < b.degens;
}

CellRef apply_degeneracy(const CellRef& c, int i) {
  if (i < 0 || i > c.dim())
    fail(errc::index_range, "degeneracy index outside the cell dimension");
  // Insert s_i into the strictly decreasing word with s_i s_j = s_{j+1} s_i.
  CellRef out{c.base_dim, c.base_id, {}};
  std::vector<int> word;
  int k = i;
  size_t t = 0;
  while (t < c.degens.size() && k <= c.degens[t]) {
    word.push_back(c.degens[t] + 1);
    ++t;
  }
  word.push_back(k);
  for (; t < c.degens.size(); ++t) word.push_back(c.degens[t]);
  out.degens = std::move(word);
  return out;
}

CellRef TruncatedSSet::face(const CellRef& c, int i) const {
  int d = c.dim();
  if (d < 1) fail(errc::dim, "0-cells have no faces");
  if (i < 0 || i > d) fail(errc::index_range, "face index outside dimension");
  if (c.degens.empty())
    return face_tab[static_cast<size_t>(d)][static_cast<size_t>(c.base_id)]
                   [static_cast<size_t>(i)];
  int j = c.degens[0];
  CellRef rest{c.base_dim, c.base_id,
               std::vector<int>(c.degens.begin() + 1, c.degens.end())};
  if (i == j || i == j + 1) return rest;
  if (i < j) return apply_degeneracy(face(rest, i), j - 1);
  return apply_degeneracy(face(rest, i - 1), j);
}

CellRef TruncatedSSet::degenerate(const CellRef& c, int i) const {
  if (c.dim() + 1 > cap)
    fail(errc::dim_over_cap, "degeneracy would exceed the truncation");
  return apply_degeneracy(c, i);
}

bool TruncatedSSet::is_valid_ref(const CellRef& c) const {
  if (c.base_dim < 0 || c.base_dim > cap) return false;
  if (c.base_id < 0 || c.base_id >= counts[static_cast<size_t>(c.base_dim)])
    return false;
  if (c.dim() > cap) return false;
  for (size_t t = 0; t + 1 < c.degens.size(); ++t)
    if (c.degens[t] <= c.degens[t + 1]) return false;
  // Applied right to left, each index must fit the growing dimension.
  for (size_t t = 0; t < c.degens.size(); ++t) {
    int applied_at = c.base_dim + static_cast<int>(c.degens.size() - 1 - t);
    if (c.degens[t] < 0 || c.degens[t] > applied_at) return false;
  }
  return true;
}

std::vector<CellRef> TruncatedSSet::all_cells(int d) const {
  if (d < 0 || d > cap) fail(errc::dim_over_cap, "dimension outside the cap");
  std::vector<CellRef> out;
  for (int id = 0; id < counts[static_cast<size_t>(d)]; ++id)
    out.push_back(CellRef{d, id, {}});
  if (d > 0) {
    for (const CellRef& c : all_cells(d - 1))
      for (int i = 0; i <= d - 1; ++i) out.push_back(apply_degeneracy(c, i));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string TruncatedSSet::label(const CellRef& c) const {
  std::ostringstream os;
  for (int i : c.degens) os << "s" << i << ".";
  os << labels[static_cast<size_t>(c.base_dim)][static_cast<size_t>(c.base_id)];
  return os.str();
}

TruncatedSSet make_sset(int cap, std::vector<int> counts,
                        std::vector<std::vector<std::vector<CellRef>>> face_tab,
                        std::vector<std::vector<std::string>> labels) {
  if (cap < 0) fail(errc::out_of_range, "cap must be nonnegative");
  if (static_cast<int>(counts.size()) != cap + 1 ||
      static_cast<int>(face_tab.size()) != cap + 1 ||
      static_cast<int>(labels.size()) != cap + 1)
    fail(errc::length_mismatch, "tables must cover dimensions 0..cap");
  TruncatedSSet x;
  x.cap = cap;
  x.counts = std::move(counts);
  x.face_tab = std::move(face_tab);
  x.labels = std::move(labels);
  for (int d = 0; d <= cap; ++d) {
    if (static_cast<int>(x.labels[static_cast<size_t>(d)].size()) !=
        x.counts[static_cast<size_t>(d)])
      fail(errc::length_mismatch, "one label per cell required");
    if (d == 0) continue;
    if (static_cast<int>(x.face_tab[static_cast<size_t>(d)].size()) !=
        x.counts[static_cast<size_t>(d)])
      fail(errc::length_mismatch, "one face row per cell required");
    for (const auto& row : x.face_tab[static_cast<size_t>(d)]) {
      if (static_cast<int>(row.size()) != d + 1)
        fail(errc::length_mismatch, "a d-cell has d+1 faces");
      for (const CellRef& f : row)
        if (f.dim() != d - 1 || !x.is_valid_ref(f))
          fail(errc::invalid, "face entry is not a valid cell");
    }
  }
  for (int d = 2; d <= cap; ++d)
    for (int id = 0; id < x.counts[static_cast<size_t>(d)]; ++id) {
      CellRef c{d, id, {}};
      for (int j = 1; j <= d; ++j)
        for (int i = 0; i < j; ++i)
          if (x.face(x.face(c, j), i) != x.face(x.face(c, i), j - 1))
            fail(errc::invalid, "simplicial identities fail");
    }
  return x;
}

Category make_category(int n_objects, std::vector<int> src,
                       std::vector<int> tgt, std::vector<int> identity,
                       std::vector<std::vector<int>> comp,
                       std::vector<std::string> names) {
  Category c;
  c.n_objects = n_objects;
  c.src = std::move(src);
  c.tgt = std::move(tgt);
  c.identity = std::move(identity);
  c.comp = std::move(comp);
  c.names = std::move(names);
  size_t m = c.src.size();
  if (c.tgt.size() != m || c.comp.size() != m)
    fail(errc::invalid_category, "morphism tables disagree in size");
  if (static_cast<int>(c.identity.size()) != n_objects)
    fail(errc::invalid_category, "one identity per object required");
  if (c.names.empty())
    for (size_t i = 0; i < m; ++i) c.names.push_back("m" + std::to_string(i));
  if (c.names.size() != m)
    fail(errc::invalid_category, "one name per morphism required");
  for (size_t i = 0; i < m; ++i) {
    if (c.src[i] < 0 || c.src[i] >= n_objects || c.tgt[i] < 0 ||
        c.tgt[i] >= n_objects)
      fail(errc::invalid_category, "morphism endpoints outside objects");
    if (c.comp[i].size() != m)
      fail(errc::invalid_category, "composition table must be square");
  }
  for (int o = 0; o < n_objects; ++o) {
    int e = c.identity[static_cast<size_t>(o)];
    if (e < 0 || static_cast<size_t>(e) >= m || c.src[static_cast<size_t>(e)] != o ||
        c.tgt[static_cast<size_t>(e)] != o)
      fail(errc::invalid_category, "identity endpoints are wrong");
  }
  for (size_t g = 0; g < m; ++g)
    for (size_t f = 0; f < m; ++f) {
      int gf = c.comp[g][f];
      bool composable = c.tgt[f] == c.src[g];
      if (!composable) {
        if (gf != -1)
          fail(errc::invalid_category, "composite of non-composable pair");
        continue;
      }
      if (gf < 0 || static_cast<size_t>(gf) >= m)
        fail(errc::invalid_category, "missing composite");
      if (c.src[static_cast<size_t>(gf)] != c.src[f] ||
          c.tgt[static_cast<size_t>(gf)] != c.tgt[g])
        fail(errc::invalid_category, "composite endpoints are wrong");
    }
  for (size_t f = 0; f < m; ++f) {
    if (c.comp[static_cast<size_t>(c.identity[static_cast<size_t>(c.tgt[f])])][f] !=
        static_cast<int>(f))
      fail(errc::invalid_category, "left identity law fails");
    if (c.comp[f][static_cast<size_t>(c.identity[static_cast<size_t>(c.src[f])])] !=
        static_cast<int>(f))
      fail(errc::invalid_category, "right identity law fails");
  }
  for (size_t h = 0; h < m; ++h)
    for (size_t g = 0; g < m; ++g)
      for (size_t f = 0; f < m; ++f) {
        if (c.tgt[f] != c.src[g] || c.tgt[g] != c.src[h]) continue;
        if (c.comp[h][static_cast<size_t>(c.comp[g][f])] !=
            c.comp[static_cast<size_t>(c.comp[h][g])][f])
          fail(errc::invalid_category, "composition is not associative");
      }
  return c;
}

Category group_z2_category() {
  return make_category(1, {0, 0}, {0, 0}, {0},
                       {{0, 1}, {1, 0}}, {"e", "g"});
}

Category chain_poset_category(int n) {
  // Objects 0..n, one morphism i -> j whenever i <= j.
  std::vector<int> src, tgt, identity(static_cast<size_t>(n) + 1, -1);
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> arr;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      if (i == j) identity[static_cast<size_t>(i)] = static_cast<int>(arr.size());
      arr.push_back({i, j});
      src.push_back(i);
      tgt.push_back(j);
      names.push_back(std::to_string(i) + "<" + std::to_string(j));
    }
  size_t m = arr.size();
  std::vector<std::vector<int>> comp(m, std::vector<int>(m, -1));
  for (size_t g = 0; g < m; ++g)
    for (size_t f = 0; f < m; ++f)
      if (arr[f].second == arr[g].first)
        for (size_t h = 0; h < m; ++h)
          if (arr[h].first == arr[f].first && arr[h].second == arr[g].second)
            comp[g][f] = static_cast<int>(h);
  return make_category(n + 1, std::move(src), std::move(tgt),
                       std::move(identity), std::move(comp), std::move(names));
}

Category fork_category() {
  // 0:id_u 1:id_v 2:id_w 3:g 4:p 5:q 6:r with pg = qg = r.
  int m = 7;
  std::vector<int> src{0, 1, 2, 0, 1, 1, 0};
  std::vector<int> tgt{0, 1, 2, 1, 2, 2, 2};
  std::vector<std::vector<int>> comp(static_cast<size_t>(m),
                                     std::vector<int>(static_cast<size_t>(m), -1));
  auto set = [&](int g, int f, int gf) { comp[static_cast<size_t>(g)][static_cast<size_t>(f)] = gf; };
  for (int f = 0; f < m; ++f) {
    set(tgt[static_cast<size_t>(f)] == 0 ? 0 : (tgt[static_cast<size_t>(f)] == 1 ? 1 : 2), f, f);
    set(f, src[static_cast<size_t>(f)] == 0 ? 0 : (src[static_cast<size_t>(f)] == 1 ? 1 : 2), f);
  }
  set(4, 3, 6);
  set(5, 3, 6);
  return make_category(3, std::move(src), std::move(tgt), {0, 1, 2},
                       std::move(comp), {"idu", "idv", "idw", "g", "p", "q", "r"});
}

namespace {

struct ChainIndex {
  // Chains per dimension, with a lookup from chain to nondegenerate id.
  std::vector<std::vector<std::vector<int>>> chains;
  std::vector<std::map<std::vector<int>, int>> lookup;
};

// A chain containing identities names a degenerate cell; peel them off.
CellRef chain_to_ref(const Category& c, const ChainIndex& ix,
                     const std::vector<int>& chain, int src_object) {
  for (size_t t = 0; t < chain.size(); ++t) {
    bool is_id = false;
    for (int e : c.identity)
      if (chain[t] == e) is_id = true;
    if (!is_id) continue;
    std::vector<int> rest;
    for (size_t u = 0; u < chain.size(); ++u)
      if (u != t) rest.push_back(chain[u]);
    return apply_degeneracy(chain_to_ref(c, ix, rest, src_object),
                            static_cast<int>(t));
  }
  int d = static_cast<int>(chain.size());
  if (d == 0) return CellRef{0, src_object, {}};
  return CellRef{d, ix.lookup[static_cast<size_t>(d)].at(chain), {}};
}

}  // namespace

TruncatedSSet nerve_category(const Category& c, int cap) {
  ChainIndex ix;
  ix.chains.resize(static_cast<size_t>(cap) + 1);
  ix.lookup.resize(static_cast<size_t>(cap) + 1);
  std::set<int> ids(c.identity.begin(), c.identity.end());
  ix.chains[0] = {};  // dimension 0 holds objects, not chains
  for (int d = 1; d <= cap; ++d) {
    std::vector<std::vector<int>> out;
    std::vector<int> chain;
    std::function<void()> grow = [&]() {
      if (static_cast<int>(chain.size()) == d) {
        out.push_back(chain);
        return;
      }
      for (size_t f = 0; f < c.src.size(); ++f) {
        if (ids.count(static_cast<int>(f))) continue;
        if (!chain.empty() &&
            c.src[f] != c.tgt[static_cast<size_t>(chain.back())])
          continue;
        chain.push_back(static_cast<int>(f));
        grow();
        chain.pop_back();
      }
    };
    grow();
    ix.chains[static_cast<size_t>(d)] = out;
    for (size_t id = 0; id < out.size(); ++id)
      ix.lookup[static_cast<size_t>(d)][out[id]] = static_cast<int>(id);
  }
  std::vector<int> counts(static_cast<size_t>(cap) + 1);
  std::vector<std::vector<std::string>> labels(static_cast<size_t>(cap) + 1);
  std::vector<std::vector<std::vector<CellRef>>> face_tab(
      static_cast<size_t>(cap) + 1);
  counts[0] = c.n_objects;
  for (int o = 0; o < c.n_objects; ++o)
    labels[0].push_back("o" + std::to_string(o));
  for (int d = 1; d <= cap; ++d) {
    const auto& chains = ix.chains[static_cast<size_t>(d)];
    counts[static_cast<size_t>(d)] = static_cast<int>(chains.size());
    for (const auto& chain : chains) {
      std::string lab;
      for (size_t t = 0; t < chain.size(); ++t) {
        if (t) lab += "|";
        lab += c.names[static_cast<size_t>(chain[t])];
      }
      labels[static_cast<size_t>(d)].push_back(lab);
      std::vector<CellRef> row;
      for (int i = 0; i <= d; ++i) {
        std::vector<int> sub;
        if (i == 0) {
          sub.assign(chain.begin() + 1, chain.end());
        } else if (i == d) {
          sub.assign(chain.begin(), chain.end() - 1);
        } else {
          sub.assign(chain.begin(), chain.end());
          sub[static_cast<size_t>(i) - 1] =
              c.comp[static_cast<size_t>(chain[static_cast<size_t>(i)])]
                    [static_cast<size_t>(chain[static_cast<size_t>(i) - 1])];
          sub.erase(sub.begin() + i);
        }
        int src_object =
            i == 0 ? c.tgt[static_cast<size_t>(chain[0])]
                   : c.src[static_cast<size_t>(chain[0])];
        row.push_back(chain_to_ref(c, ix, sub, src_object));
      }
      face_tab[static_cast<size_t>(d)].push_back(std::move(row));
    }
  }
  return make_sset(cap, std::move(counts), std::move(face_tab),
                   std::move(labels));
}

std::vector<std::pair<int, int>> match_pairs(const TwoCatAmbient& amb, int f,
                                             int g) {
  if (amb.tgt[static_cast<size_t>(f)] != amb.src[static_cast<size_t>(g)])
    fail(errc::domain_mismatch, "1-cells do not chain");
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < amb.carrier[static_cast<size_t>(f)]; ++u)
    for (int v = 0; v < amb.carrier[static_cast<size_t>(g)]; ++v)
      if (amb.match(f, g, u, v)) out.push_back({u, v});
  return out;
}

int pair_index(const std::vector<std::pair<int, int>>& pairs, int u, int v) {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(u, v));
  if (it == pairs.end() || *it != std::make_pair(u, v))
    fail(errc::compatibility_fail, "element pair does not match");
  return static_cast<int>(it - pairs.begin());
}

bool operator==(const Nerve2Data& a, const Nerve2Data& b) {
  return a.n == b.n && a.objects == b.objects && a.arrows == b.arrows &&
         a.thetas == b.thetas;
}

bool operator<(const Nerve2Data& a, const Nerve2Data& b) {
  if (a.n != b.n) return a.n < b.n;
  if (a.objects != b.objects) return a.objects < b.objects;
  if (a.arrows != b.arrows) return a.arrows < b.arrows;
  return a.thetas < b.thetas;
}

TwoCatAmbient ambient_from_category(const Category& c) {
  TwoCatAmbient amb;
  amb.n_objects = c.n_objects;
  amb.src = c.src;
  amb.tgt = c.tgt;
  amb.carrier.assign(c.src.size(), 1);
  for (int o = 0; o < c.n_objects; ++o)
    amb.id1.push_back(c.identity[static_cast<size_t>(o)]);
  amb.match = [](int, int, int, int) { return true; };
  auto comp = c.comp;
  amb.is_theta = [comp](int f, int g, int h, const SetMap& beta) {
    (void)beta;
    return comp[static_cast<size_t>(g)][static_cast<size_t>(f)] == h;
  };
  amb.names = c.names;
  return amb;
}

namespace {

std::vector<Span1> ambient_span_list(const std::vector<FinSet>& objects,
                                     int max_apex) {
  std::vector<Span1> out;
  for (FinSet x : objects)
    for (FinSet y : objects)
      for (int a = 0; a <= max_apex; ++a)
        for (const SetMap& l : all_maps(a, x.size))
          for (const SetMap& r : all_maps(a, y.size))
            out.push_back(Span1{x, FinSet{a}, y, l, r});
  return out;
}

}  // namespace

TwoCatAmbient ambient_spans(const std::vector<FinSet>& objects, int max_apex) {
  auto spans = std::make_shared<std::vector<Span1>>(
      ambient_span_list(objects, max_apex));
  TwoCatAmbient amb;
  amb.n_objects = static_cast<int>(objects.size());
  amb.id1.assign(objects.size(), -1);
  for (size_t t = 0; t < spans->size(); ++t) {
    const Span1& s = (*spans)[t];
    int so = -1, to = -1;
    for (size_t o = 0; o < objects.size(); ++o) {
      if (objects[o] == s.left_foot && so < 0) so = static_cast<int>(o);
      if (objects[o] == s.right_foot && to < 0) to = static_cast<int>(o);
    }
    amb.src.push_back(so);
    amb.tgt.push_back(to);
    amb.carrier.push_back(s.apex.size);
    if (so == to && s == identity_span(objects[static_cast<size_t>(so)]))
      amb.id1[static_cast<size_t>(so)] = static_cast<int>(t);
    std::ostringstream os;
    os << s.left_foot.size << "<" << s.apex.size << ">" << s.right_foot.size
       << "#" << t;
    amb.names.push_back(os.str());
  }
  for (size_t o = 0; o < objects.size(); ++o)
    if (amb.id1[o] < 0)
      fail(errc::out_of_range, "identity span exceeds the apex bound");
  amb.match = [spans](int f, int g, int u, int v) {
    return (*spans)[static_cast<size_t>(f)].rmap.values[static_cast<size_t>(u)] ==
           (*spans)[static_cast<size_t>(g)].lmap.values[static_cast<size_t>(v)];
  };
  amb.is_theta = [spans](int f, int g, int h, const SetMap& beta) {
    const Span1& sf = (*spans)[static_cast<size_t>(f)];
    const Span1& sg = (*spans)[static_cast<size_t>(g)];
    const Span1& sh = (*spans)[static_cast<size_t>(h)];
    if (sh.left_foot != sf.left_foot || sh.right_foot != sg.right_foot)
      return false;
    if (!is_bijection(beta)) return false;
    int t = 0;
    for (int u = 0; u < sf.apex.size; ++u)
      for (int v = 0; v < sg.apex.size; ++v) {
        if (sf.rmap.values[static_cast<size_t>(u)] !=
            sg.lmap.values[static_cast<size_t>(v)])
          continue;
        int w = beta.values[static_cast<size_t>(t++)];
        if (sh.lmap.values[static_cast<size_t>(w)] !=
                sf.lmap.values[static_cast<size_t>(u)] ||
            sh.rmap.values[static_cast<size_t>(w)] !=
                sg.rmap.values[static_cast<size_t>(v)])
          return false;
      }
    return true;
  };
  return amb;
}

int ambient_span_id(const TwoCatAmbient& amb,
                    const std::vector<FinSet>& objects, const Span1& s) {
  // Rebuild with the same bound the ambient used: infer it from carriers.
  int max_apex = 0;
  for (int c : amb.carrier) max_apex = std::max(max_apex, c);
  std::vector<Span1> spans = ambient_span_list(objects, max_apex);
  for (size_t t = 0; t < spans.size(); ++t)
    if (spans[t] == s) return static_cast<int>(t);
  fail(errc::index_range, "span is not a 1-cell of this universe");
}

Span1 ambient_span_of(const TwoCatAmbient& amb,
                      const std::vector<FinSet>& objects, int one_cell) {
  int max_apex = 0;
  for (int c : amb.carrier) max_apex = std::max(max_apex, c);
  std::vector<Span1> spans = ambient_span_list(objects, max_apex);
  if (one_cell < 0 || static_cast<size_t>(one_cell) >= spans.size())
    fail(errc::index_range, "1-cell id outside the universe");
  return spans[static_cast<size_t>(one_cell)];
}

namespace {

int cell_arrow(const Nerve2Data& d, int i, int j) {
  return d.arrows.at({i, j});
}

const SetMap& cell_theta(const Nerve2Data& d, int i, int j, int k) {
  return d.thetas.at({i, j, k});
}

// The compatibility identity for one quadruple i<j<k<l, elementwise.
bool quad_holds(const TwoCatAmbient& amb, const Nerve2Data& d, int i, int j,
                int k, int l) {
  int fij = cell_arrow(d, i, j), fjk = cell_arrow(d, j, k);
  int fkl = cell_arrow(d, k, l), fik = cell_arrow(d, i, k);
  int fjl = cell_arrow(d, j, l);
  auto p_ij_jk = match_pairs(amb, fij, fjk);
  auto p_jk_kl = match_pairs(amb, fjk, fkl);
  auto p_ij_jl = match_pairs(amb, fij, fjl);
  auto p_ik_kl = match_pairs(amb, fik, fkl);
  const SetMap& t_ijk = cell_theta(d, i, j, k);
  const SetMap& t_jkl = cell_theta(d, j, k, l);
  const SetMap& t_ijl = cell_theta(d, i, j, l);
  const SetMap& t_ikl = cell_theta(d, i, k, l);
  for (auto [u, v] : p_ij_jk)
    for (int w = 0; w < amb.carrier[static_cast<size_t>(fkl)]; ++w) {
      if (!amb.match(fjk, fkl, v, w)) continue;
      int vw = t_jkl.values[static_cast<size_t>(pair_index(p_jk_kl, v, w))];
      int lhs = t_ijl.values[static_cast<size_t>(pair_index(p_ij_jl, u, vw))];
      int uv = t_ijk.values[static_cast<size_t>(pair_index(p_ij_jk, u, v))];
      int rhs = t_ikl.values[static_cast<size_t>(pair_index(p_ik_kl, uv, w))];
      if (lhs != rhs) return false;
    }
  return true;
}

}  // namespace

void validate_nerve2(const TwoCatAmbient& amb, const Nerve2Data& d) {
  if (static_cast<int>(d.objects.size()) != d.n + 1)
    fail(errc::compatibility_fail, "object tuple length is wrong");
  for (int o : d.objects)
    if (o < 0 || o >= amb.n_objects)
      fail(errc::compatibility_fail, "object outside the universe");
  for (int i = 0; i <= d.n; ++i)
    for (int j = i + 1; j <= d.n; ++j) {
      auto it = d.arrows.find({i, j});
      if (it == d.arrows.end())
        fail(errc::compatibility_fail, "missing 1-cell entry");
      int f = it->second;
      if (f < 0 || static_cast<size_t>(f) >= amb.src.size())
        fail(errc::compatibility_fail, "1-cell id outside the universe");
      if (amb.src[static_cast<size_t>(f)] != d.objects[static_cast<size_t>(i)] ||
          amb.tgt[static_cast<size_t>(f)] != d.objects[static_cast<size_t>(j)])
        fail(errc::compatibility_fail, "1-cell endpoints disagree");
    }
  if (static_cast<int>(d.arrows.size()) != d.n * (d.n + 1) / 2)
    fail(errc::compatibility_fail, "extra 1-cell entries");
  for (int i = 0; i <= d.n; ++i)
    for (int j = i + 1; j <= d.n; ++j)
      for (int k = j + 1; k <= d.n; ++k) {
        auto it = d.thetas.find({i, j, k});
        if (it == d.thetas.end())
          fail(errc::compatibility_fail, "missing 2-cell entry");
        const SetMap& beta = it->second;
        int fij = cell_arrow(d, i, j), fjk = cell_arrow(d, j, k);
        int fik = cell_arrow(d, i, k);
        auto pairs = match_pairs(amb, fij, fjk);
        if (beta.dom != static_cast<int>(pairs.size()) ||
            beta.cod != amb.carrier[static_cast<size_t>(fik)])
          fail(errc::compatibility_fail, "2-cell endpoints disagree");
        if (!is_bijection(beta))
          fail(errc::compatibility_fail, "2-cell is not invertible");
        if (!amb.is_theta(fij, fjk, fik, beta))
          fail(errc::compatibility_fail, "2-cell is not recognized");
      }
  int expected = 0;
  for (int i = 0; i <= d.n; ++i)
    for (int j = i + 1; j <= d.n; ++j)
      for (int k = j + 1; k <= d.n; ++k) ++expected;
  if (static_cast<int>(d.thetas.size()) != expected)
    fail(errc::compatibility_fail, "extra 2-cell entries");
  for (int i = 0; i <= d.n; ++i)
    for (int j = i + 1; j <= d.n; ++j)
      for (int k = j + 1; k <= d.n; ++k)
        for (int l = k + 1; l <= d.n; ++l)
          if (!quad_holds(amb, d, i, j, k, l))
            fail(errc::compatibility_fail, "compatibility identity fails");
}

Nerve2Data nerve2_face(const Nerve2Data& d, int i) {
  if (i < 0 || i > d.n) fail(errc::index_range, "face index outside dimension");
  if (d.n < 1) fail(errc::dim, "0-cells have no faces");
  Nerve2Data out;
  out.n = d.n - 1;
  auto old_index = [i](int t) { return t < i ? t : t + 1; };
  for (int t = 0; t <= out.n; ++t)
    out.objects.push_back(d.objects[static_cast<size_t>(old_index(t))]);
  for (int a = 0; a <= out.n; ++a)
    for (int b = a + 1; b <= out.n; ++b)
      out.arrows[{a, b}] = d.arrows.at({old_index(a), old_index(b)});
  for (int a = 0; a <= out.n; ++a)
    for (int b = a + 1; b <= out.n; ++b)
      for (int c = b + 1; c <= out.n; ++c)
        out.thetas[{a, b, c}] =
            d.thetas.at({old_index(a), old_index(b), old_index(c)});
  return out;
}

namespace {

SetMap unitor(const TwoCatAmbient& amb, int f, int g, int target,
              bool keep_second) {
  auto pairs = match_pairs(amb, f, g);
  std::vector<int> v;
  v.reserve(pairs.size());
  for (auto [u, w] : pairs) v.push_back(keep_second ? w : u);
  SetMap beta{static_cast<int>(pairs.size()),
              amb.carrier[static_cast<size_t>(target)], std::move(v)};
  if (!amb.is_theta(f, g, target, beta))
    fail(errc::invalid, "identity 1-cell lacks its unit 2-cell");
  return beta;
}

}  // namespace

Nerve2Data nerve2_degeneracy(const TwoCatAmbient& amb, const Nerve2Data& d,
                             int j) {
  if (j < 0 || j > d.n)
    fail(errc::index_range, "degeneracy index outside dimension");
  Nerve2Data out;
  out.n = d.n + 1;
  auto old_index = [j](int t) { return t <= j ? t : t - 1; };
  for (int t = 0; t <= out.n; ++t)
    out.objects.push_back(d.objects[static_cast<size_t>(old_index(t))]);
  for (int a = 0; a <= out.n; ++a)
    for (int b = a + 1; b <= out.n; ++b) {
      int oa = old_index(a), ob = old_index(b);
      out.arrows[{a, b}] =
          oa == ob ? amb.id1[static_cast<size_t>(d.objects[static_cast<size_t>(oa)])]
                   : d.arrows.at({oa, ob});
    }
  for (int a = 0; a <= out.n; ++a)
    for (int b = a + 1; b <= out.n; ++b)
      for (int c = b + 1; c <= out.n; ++c) {
        int oa = old_index(a), ob = old_index(b), oc = old_index(c);
        if (oa == ob) {
          // Left leg collapsed: the unit 2-cell id * f => f.
          out.thetas[{a, b, c}] =
              unitor(amb, out.arrows.at({a, b}), out.arrows.at({b, c}),
                     out.arrows.at({a, c}), true);
        } else if (ob == oc) {
          out.thetas[{a, b, c}] =
              unitor(amb, out.arrows.at({a, b}), out.arrows.at({b, c}),
                     out.arrows.at({a, c}), false);
        } else {
          out.thetas[{a, b, c}] = d.thetas.at({oa, ob, oc});
        }
      }
  return out;
}

namespace {

std::vector<SetMap> theta_candidates(const TwoCatAmbient& amb, int f, int g,
                                     int h) {
  std::vector<SetMap> out;
  auto pairs = match_pairs(amb, f, g);
  int n = static_cast<int>(pairs.size());
  if (n != amb.carrier[static_cast<size_t>(h)]) return out;
  std::vector<int> v(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) v[static_cast<size_t>(t)] = t;
  do {
    SetMap beta{n, n, v};
    if (amb.is_theta(f, g, h, beta)) out.push_back(std::move(beta));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace

std::vector<Nerve2Data> enumerate_nerve2_cells(
    const TwoCatAmbient& amb, int n,
    const std::vector<std::array<int, 4>>* quads) {
  std::vector<Nerve2Data> out;
  if (n == 0) {
    for (int o = 0; o < amb.n_objects; ++o) {
      Nerve2Data d;
      d.n = 0;
      d.objects = {o};
      out.push_back(std::move(d));
    }
    return out;
  }
  // Pair slots ordered by length so every split of a long arrow is available.
  std::vector<std::pair<int, int>> slots;
  for (int len = 1; len <= n; ++len)
    for (int i = 0; i + len <= n; ++i) slots.push_back({i, i + len});
  std::vector<std::array<int, 3>> triples;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) triples.push_back({i, j, k});
  std::vector<std::array<int, 4>> all_quads;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) all_quads.push_back({i, j, k, l});
  const std::vector<std::array<int, 4>>& active = quads ? *quads : all_quads;
  // A quadruple can be checked once its four triples all carry 2-cells; in
  // triple enumeration order that is when the latest of them is chosen.
  auto triple_pos = [&](int i, int j, int k) {
    for (size_t t = 0; t < triples.size(); ++t)
      if (triples[t] == std::array<int, 3>{i, j, k}) return t;
    return triples.size();
  };
  std::vector<std::vector<std::array<int, 4>>> quad_at(triples.size());
  for (const auto& q : active) {
    size_t last = std::max(
        std::max(triple_pos(q[0], q[1], q[2]), triple_pos(q[0], q[1], q[3])),
        std::max(triple_pos(q[0], q[2], q[3]), triple_pos(q[1], q[2], q[3])));
    quad_at[last].push_back(q);
  }
  Nerve2Data cur;
  cur.n = n;
  cur.objects.assign(static_cast<size_t>(n) + 1, 0);
  std::function<void(size_t)> pick_theta = [&](size_t t) {
    if (t == triples.size()) {
      out.push_back(cur);
      return;
    }
    auto [i, j, k] = triples[t];
    for (SetMap& beta :
         theta_candidates(amb, cur.arrows.at({i, j}), cur.arrows.at({j, k}),
                          cur.arrows.at({i, k}))) {
      cur.thetas[{i, j, k}] = std::move(beta);
      bool ok = true;
      for (const auto& q : quad_at[t])
        if (!quad_holds(amb, cur, q[0], q[1], q[2], q[3])) {
          ok = false;
          break;
        }
      if (ok) pick_theta(t + 1);
      cur.thetas.erase({i, j, k});
    }
  };
  std::function<void(size_t)> pick_arrow = [&](size_t s) {
    if (s == slots.size()) {
      pick_theta(0);
      return;
    }
    auto [i, k] = slots[s];
    for (size_t f = 0; f < amb.src.size(); ++f) {
      if (amb.src[f] != cur.objects[static_cast<size_t>(i)] ||
          amb.tgt[f] != cur.objects[static_cast<size_t>(k)])
        continue;
      // Every split must admit at least a size match for its 2-cell.
      bool ok = true;
      for (int j = i + 1; j < k && ok; ++j) {
        auto pairs = match_pairs(amb, cur.arrows.at({i, j}),
                                 cur.arrows.at({j, k}));
        if (static_cast<int>(pairs.size()) != amb.carrier[f]) ok = false;
      }
      if (!ok) continue;
      cur.arrows[{i, k}] = static_cast<int>(f);
      pick_arrow(s + 1);
      cur.arrows.erase({i, k});
    }
  };
  std::function<void(int)> pick_object = [&](int t) {
    if (t == n + 1) {
      pick_arrow(0);
      return;
    }
    for (int o = 0; o < amb.n_objects; ++o) {
      cur.objects[static_cast<size_t>(t)] = o;
      pick_object(t + 1);
    }
  };
  pick_object(0);
  return out;
}

TruncatedSSet nerve_2cat(const TwoCatAmbient& amb, int cap) {
  std::vector<std::vector<Nerve2Data>> cells(static_cast<size_t>(cap) + 1);
  for (int d = 0; d <= cap; ++d) cells[static_cast<size_t>(d)] = enumerate_nerve2_cells(amb, d);
  std::vector<std::map<Nerve2Data, CellRef>> refs(static_cast<size_t>(cap) + 1);
  std::vector<int> counts(static_cast<size_t>(cap) + 1, 0);
  std::vector<std::vector<std::string>> labels(static_cast<size_t>(cap) + 1);
  std::vector<std::vector<const Nerve2Data*>> nondeg(static_cast<size_t>(cap) + 1);
  for (int d = 0; d <= cap; ++d) {
    for (const Nerve2Data& c : cells[static_cast<size_t>(d)]) {
      bool degenerate = false;
      for (int j = 0; j < d && !degenerate; ++j)
        if (nerve2_degeneracy(amb, nerve2_face(c, j), j) == c) {
          refs[static_cast<size_t>(d)][c] = apply_degeneracy(
              refs[static_cast<size_t>(d) - 1].at(nerve2_face(c, j)), j);
          degenerate = true;
        }
      if (degenerate) continue;
      refs[static_cast<size_t>(d)][c] =
          CellRef{d, counts[static_cast<size_t>(d)], {}};
      counts[static_cast<size_t>(d)]++;
      nondeg[static_cast<size_t>(d)].push_back(&c);
      std::ostringstream os;
      os << "c" << d << "." << (counts[static_cast<size_t>(d)] - 1) << "[";
      for (size_t t = 0; t < c.objects.size(); ++t) {
        if (t) os << ",";
        os << c.objects[t];
      }
      os << ";";
      bool first = true;
      for (const auto& [key, f] : c.arrows) {
        if (!first) os << ",";
        first = false;
        os << f;
      }
      os << "]";
      labels[static_cast<size_t>(d)].push_back(os.str());
    }
  }
  std::vector<std::vector<std::vector<CellRef>>> face_tab(
      static_cast<size_t>(cap) + 1);
  for (int d = 1; d <= cap; ++d)
    for (const Nerve2Data* c : nondeg[static_cast<size_t>(d)]) {
      std::vector<CellRef> row;
      for (int i = 0; i <= d; ++i)
        row.push_back(refs[static_cast<size_t>(d) - 1].at(nerve2_face(*c, i)));
      face_tab[static_cast<size_t>(d)].push_back(std::move(row));
    }
  return make_sset(cap, std::move(counts), std::move(face_tab),
                   std::move(labels));
}

namespace {

void require_face2(const Nerve2Data& f, const char* which) {
  if (f.n != 2)
    fail(errc::dim, std::string("horn face must be a 2-cell: ") + which);
}

void check_agree(int a, int b, const char* what) {
  if (a != b)
    fail(errc::compatibility_fail,
         std::string("horn faces disagree on ") + what);
}

}  // namespace

Nerve2Data filler_formula_21(const TwoCatAmbient& amb, const Nerve2Data& face0,
                             const Nerve2Data& face2,
                             const Nerve2Data& face3) {
  require_face2(face0, "face 0");
  require_face2(face2, "face 2");
  require_face2(face3, "face 3");
  Nerve2Data out;
  out.n = 3;
  out.objects = {face3.objects[0], face3.objects[1], face3.objects[2],
                 face0.objects[2]};
  check_agree(face0.objects[0], face3.objects[1], "object 1");
  check_agree(face0.objects[1], face3.objects[2], "object 2");
  check_agree(face2.objects[0], face3.objects[0], "object 0");
  check_agree(face2.objects[1], face3.objects[1], "object 1");
  check_agree(face2.objects[2], face0.objects[2], "object 3");
  out.arrows[{0, 1}] = face3.arrows.at({0, 1});
  check_agree(face2.arrows.at({0, 1}), face3.arrows.at({0, 1}), "edge 01");
  out.arrows[{1, 2}] = face3.arrows.at({1, 2});
  check_agree(face0.arrows.at({0, 1}), face3.arrows.at({1, 2}), "edge 12");
  out.arrows[{0, 2}] = face3.arrows.at({0, 2});
  out.arrows[{2, 3}] = face0.arrows.at({1, 2});
  out.arrows[{1, 3}] = face0.arrows.at({0, 2});
  check_agree(face2.arrows.at({1, 2}), face0.arrows.at({0, 2}), "edge 13");
  out.arrows[{0, 3}] = face2.arrows.at({0, 2});
  out.thetas[{0, 1, 2}] = face3.thetas.at({0, 1, 2});
  out.thetas[{1, 2, 3}] = face0.thetas.at({0, 1, 2});
  out.thetas[{0, 1, 3}] = face2.thetas.at({0, 1, 2});
  // theta_023(d, c) = theta_013(a, theta_123(b, c)) with (a, b) the
  // preimage of d under theta_012.
  int f01 = out.arrows.at({0, 1}), f12 = out.arrows.at({1, 2});
  int f23 = out.arrows.at({2, 3}), f02 = out.arrows.at({0, 2});
  int f13 = out.arrows.at({1, 3}), f03 = out.arrows.at({0, 3});
  auto p_01_12 = match_pairs(amb, f01, f12);
  auto p_12_23 = match_pairs(amb, f12, f23);
  auto p_01_13 = match_pairs(amb, f01, f13);
  auto p_02_23 = match_pairs(amb, f02, f23);
  SetMap inv012 = invert(out.thetas.at({0, 1, 2}));
  const SetMap& t123 = out.thetas.at({1, 2, 3});
  const SetMap& t013 = out.thetas.at({0, 1, 3});
  std::vector<int> v(p_02_23.size());
  for (size_t t = 0; t < p_02_23.size(); ++t) {
    auto [dd, c] = p_02_23[t];
    auto [a, b] = p_01_12[static_cast<size_t>(
        inv012.values[static_cast<size_t>(dd)])];
    int e = t123.values[static_cast<size_t>(pair_index(p_12_23, b, c))];
    v[t] = t013.values[static_cast<size_t>(pair_index(p_01_13, a, e))];
  }
  out.thetas[{0, 2, 3}] = SetMap{static_cast<int>(p_02_23.size()),
                                 amb.carrier[static_cast<size_t>(f03)],
                                 std::move(v)};
  validate_nerve2(amb, out);
  return out;
}

Nerve2Data filler_formula_22(const TwoCatAmbient& amb, const Nerve2Data& face0,
                             const Nerve2Data& face1,
                             const Nerve2Data& face3) {
  require_face2(face0, "face 0");
  require_face2(face1, "face 1");
  require_face2(face3, "face 3");
  Nerve2Data out;
  out.n = 3;
  out.objects = {face3.objects[0], face3.objects[1], face3.objects[2],
                 face0.objects[2]};
  check_agree(face0.objects[0], face3.objects[1], "object 1");
  check_agree(face0.objects[1], face3.objects[2], "object 2");
  check_agree(face1.objects[0], face3.objects[0], "object 0");
  check_agree(face1.objects[1], face3.objects[2], "object 2");
  check_agree(face1.objects[2], face0.objects[2], "object 3");
  out.arrows[{0, 1}] = face3.arrows.at({0, 1});
  out.arrows[{1, 2}] = face3.arrows.at({1, 2});
  check_agree(face0.arrows.at({0, 1}), face3.arrows.at({1, 2}), "edge 12");
  out.arrows[{0, 2}] = face3.arrows.at({0, 2});
  check_agree(face1.arrows.at({0, 1}), face3.arrows.at({0, 2}), "edge 02");
  out.arrows[{2, 3}] = face0.arrows.at({1, 2});
  check_agree(face1.arrows.at({1, 2}), face0.arrows.at({1, 2}), "edge 23");
  out.arrows[{1, 3}] = face0.arrows.at({0, 2});
  out.arrows[{0, 3}] = face1.arrows.at({0, 2});
  out.thetas[{0, 1, 2}] = face3.thetas.at({0, 1, 2});
  out.thetas[{1, 2, 3}] = face0.thetas.at({0, 1, 2});
  out.thetas[{0, 2, 3}] = face1.thetas.at({0, 1, 2});
  // theta_013(a, e) = theta_023(theta_012(a, b), c) with (b, c) the
  // preimage of e under theta_123.
  int f01 = out.arrows.at({0, 1}), f12 = out.arrows.at({1, 2});
  int f23 = out.arrows.at({2, 3}), f02 = out.arrows.at({0, 2});
  int f13 = out.arrows.at({1, 3}), f03 = out.arrows.at({0, 3});
  auto p_01_12 = match_pairs(amb, f01, f12);
  auto p_12_23 = match_pairs(amb, f12, f23);
  auto p_01_13 = match_pairs(amb, f01, f13);
  auto p_02_23 = match_pairs(amb, f02, f23);
  SetMap inv123 = invert(out.thetas.at({1, 2, 3}));
  const SetMap& t012 = out.thetas.at({0, 1, 2});
  const SetMap& t023 = out.thetas.at({0, 2, 3});
  std::vector<int> v(p_01_13.size());
  for (size_t t = 0; t < p_01_13.size(); ++t) {
    auto [a, e] = p_01_13[t];
    auto [b, c] = p_12_23[static_cast<size_t>(
        inv123.values[static_cast<size_t>(e)])];
    int dd = t012.values[static_cast<size_t>(pair_index(p_01_12, a, b))];
    v[t] = t023.values[static_cast<size_t>(pair_index(p_02_23, dd, c))];
  }
  out.thetas[{0, 1, 3}] = SetMap{static_cast<int>(p_01_13.size()),
                                 amb.carrier[static_cast<size_t>(f03)],
                                 std::move(v)};
  validate_nerve2(amb, out);
  return out;
}

bool horn_compatible(const TruncatedSSet& x, const HornMap& h) {
  for (int j = 1; j <= h.n; ++j) {
    if (j == h.k) continue;
    for (int i = 0; i < j; ++i) {
      if (i == h.k) continue;
      if (x.face(h.faces[static_cast<size_t>(j)], i) !=
          x.face(h.faces[static_cast<size_t>(i)], j - 1))
        return false;
    }
  }
  return true;
}

namespace {

struct FaceTable {
  std::vector<CellRef> cells;
  std::vector<std::vector<CellRef>> faces;  // per cell, d entries
  // For each face position, cells grouped by that face value.
  std::vector<std::map<CellRef, std::vector<int>>> by_face;
};

FaceTable build_face_table(const TruncatedSSet& x, int d) {
  FaceTable t;
  t.cells = x.all_cells(d);
  t.faces.resize(t.cells.size());
  t.by_face.resize(static_cast<size_t>(d) + 1);
  for (size_t c = 0; c < t.cells.size(); ++c) {
    for (int i = 0; i <= d; ++i) {
      t.faces[c].push_back(x.face(t.cells[c], i));
      t.by_face[static_cast<size_t>(i)][t.faces[c].back()].push_back(
          static_cast<int>(c));
    }
  }
  return t;
}

// Extends a partial tuple of horn faces over the given slots.
void extend_tuple(const FaceTable& ft, const std::vector<int>& slots,
                  size_t at, std::vector<int>& chosen,
                  const std::function<void(const std::vector<int>&)>& emit) {
  if (at == slots.size()) {
    emit(chosen);
    return;
  }
  int j = slots[at];
  // Constraints: face i of slot j equals face j-1 of the chosen slot i.
  const std::vector<int>* best = nullptr;
  std::vector<std::pair<int, CellRef>> constraints;
  for (size_t e = 0; e < at; ++e) {
    int i = slots[e];
    if (i >= j) continue;
    CellRef want = ft.faces[static_cast<size_t>(chosen[e])]
                           [static_cast<size_t>(j - 1)];
    constraints.push_back({i, want});
    auto it = ft.by_face[static_cast<size_t>(i)].find(want);
    if (it == ft.by_face[static_cast<size_t>(i)].end()) return;
    if (!best || it->second.size() < best->size()) best = &it->second;
  }
  if (!best) {
    for (size_t c = 0; c < ft.cells.size(); ++c) {
      chosen.push_back(static_cast<int>(c));
      extend_tuple(ft, slots, at + 1, chosen, emit);
      chosen.pop_back();
    }
    return;
  }
  for (int c : *best) {
    bool ok = true;
    for (const auto& [i, want] : constraints)
      if (ft.faces[static_cast<size_t>(c)][static_cast<size_t>(i)] != want) {
        ok = false;
        break;
      }
    if (!ok) continue;
    chosen.push_back(c);
    extend_tuple(ft, slots, at + 1, chosen, emit);
    chosen.pop_back();
  }
}

std::vector<std::vector<int>> enumerate_tuples(const TruncatedSSet& x, int n,
                                               const std::vector<int>& slots) {
  FaceTable ft = build_face_table(x, n - 1);
  long roots = static_cast<long>(ft.cells.size());
  std::vector<std::vector<std::vector<int>>> per_root(
      static_cast<size_t>(roots));
  par_for(roots, [&](long r) {
    std::vector<int> chosen{static_cast<int>(r)};
    extend_tuple(ft, slots, 1, chosen, [&](const std::vector<int>& t) {
      per_root[static_cast<size_t>(r)].push_back(t);
    });
  });
  std::vector<std::vector<int>> out;
  for (auto& v : per_root)
    for (auto& t : v) out.push_back(std::move(t));
  return out;
}

}  // namespace

std::vector<HornMap> enumerate_horn_maps(const TruncatedSSet& x, int n,
                                         int k) {
  if (n < 1 || n > x.cap)
    fail(errc::dim_over_cap, "horn dimension outside the cap");
  if (k < 0 || k > n) fail(errc::index_range, "horn index outside dimension");
  std::vector<int> slots;
  for (int j = 0; j <= n; ++j)
    if (j != k) slots.push_back(j);
  FaceTable ft = build_face_table(x, n - 1);
  std::vector<HornMap> out;
  for (const auto& tuple : enumerate_tuples(x, n, slots)) {
    HornMap h;
    h.n = n;
    h.k = k;
    h.faces.assign(static_cast<size_t>(n) + 1, CellRef{});
    for (size_t e = 0; e < slots.size(); ++e)
      h.faces[static_cast<size_t>(slots[e])] =
          ft.cells[static_cast<size_t>(tuple[e])];
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<CellRef> fillers(const TruncatedSSet& x, const HornMap& h) {
  std::vector<CellRef> out;
  for (const CellRef& c : x.all_cells(h.n)) {
    bool ok = true;
    for (int j = 0; j <= h.n && ok; ++j) {
      if (j == h.k) continue;
      if (x.face(c, j) != h.faces[static_cast<size_t>(j)]) ok = false;
    }
    if (ok) out.push_back(c);
  }
  return out;
}

std::vector<BoundaryMap> enumerate_boundary_maps(const TruncatedSSet& x,
                                                 int n) {
  if (n < 1 || n > x.cap)
    fail(errc::dim_over_cap, "boundary dimension outside the cap");
  std::vector<int> slots;
  for (int j = 0; j <= n; ++j) slots.push_back(j);
  FaceTable ft = build_face_table(x, n - 1);
  std::vector<BoundaryMap> out;
  for (const auto& tuple : enumerate_tuples(x, n, slots)) {
    BoundaryMap b;
    b.n = n;
    for (int j = 0; j <= n; ++j)
      b.faces.push_back(ft.cells[static_cast<size_t>(tuple[static_cast<size_t>(j)])]);
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<CellRef> boundary_fillers(const TruncatedSSet& x,
                                      const BoundaryMap& b) {
  std::vector<CellRef> out;
  for (const CellRef& c : x.all_cells(b.n)) {
    bool ok = true;
    for (int j = 0; j <= b.n && ok; ++j)
      if (x.face(c, j) != b.faces[static_cast<size_t>(j)]) ok = false;
    if (ok) out.push_back(c);
  }
  return out;
}

namespace {

// Filler multiplicities per face tuple over the listed slots, streamed
// through extend_tuple so the tuples are never materialized. Face tuples are
// flattened to fixed arrays of face-table indices and kept sorted, which
// stays compact when the complex has millions of cells.
template <class Count>
Count count_tuples(const TruncatedSSet& x, int n,
                   const std::vector<int>& slots, Count init) {
  constexpr size_t kSlots = 8;
  if (slots.size() > kSlots) fail(errc::dim_over_cap, "too many face slots");
  FaceTable ft = build_face_table(x, n - 1);
  std::map<CellRef, int> dense;
  for (size_t t = 0; t < ft.cells.size(); ++t)
    dense[ft.cells[t]] = static_cast<int>(t);
  using Key = std::array<int, kSlots>;
  std::vector<Key> keys;
  for (const CellRef& c : x.all_cells(n)) {
    Key k;
    k.fill(-1);
    for (size_t e = 0; e < slots.size(); ++e) {
      auto it = dense.find(x.face(c, slots[e]));
      if (it == dense.end()) fail(errc::invalid, "face outside its dimension");
      k[e] = it->second;
    }
    keys.push_back(k);
  }
  std::sort(keys.begin(), keys.end());
  long roots = static_cast<long>(ft.cells.size());
  std::vector<Count> local(static_cast<size_t>(roots), init);
  par_for(roots, [&](long r) {
    Count& acc = local[static_cast<size_t>(r)];
    std::vector<int> chosen{static_cast<int>(r)};
    extend_tuple(ft, slots, 1, chosen, [&](const std::vector<int>& t) {
      Key k;
      k.fill(-1);
      for (size_t e = 0; e < slots.size(); ++e) k[e] = t[e];
      auto range = std::equal_range(keys.begin(), keys.end(), k);
      long m = range.second - range.first;
      acc.compatible++;
      if (m == 0)
        acc.zero++;
      else if (m == 1)
        acc.one++;
      else
        acc.many++;
    });
  });
  Count out = init;
  for (const Count& c : local) {
    out.compatible += c.compatible;
    out.zero += c.zero;
    out.one += c.one;
    out.many += c.many;
  }
  return out;
}

}  // namespace

HornCount count_horn_fillers(const TruncatedSSet& x, int n, int k) {
  if (n < 1 || n > x.cap)
    fail(errc::dim_over_cap, "horn dimension outside the cap");
  if (k < 0 || k > n) fail(errc::index_range, "horn index outside dimension");
  std::vector<int> slots;
  for (int j = 0; j <= n; ++j)
    if (j != k) slots.push_back(j);
  HornCount init;
  init.n = n;
  init.k = k;
  return count_tuples(x, n, slots, init);
}

BoundaryCount count_boundary_fillers(const TruncatedSSet& x, int n) {
  if (n < 1 || n > x.cap)
    fail(errc::dim_over_cap, "boundary dimension outside the cap");
  std::vector<int> slots;
  for (int j = 0; j <= n; ++j) slots.push_back(j);
  BoundaryCount init;
  init.n = n;
  return count_tuples(x, n, slots, init);
}

N1Report check_n1_property(const TruncatedSSet& x, int n_max) {
  N1Report rep;
  for (int n = 2; n <= std::min(n_max, x.cap); ++n) {
    for (int k = 0; k <= n; ++k)
      rep.horns.push_back(count_horn_fillers(x, n, k));
    rep.boundaries.push_back(count_boundary_fillers(x, n));
  }
  return rep;
}

}  // namespace spancalc
