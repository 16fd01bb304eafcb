// Arrow-span cells over the base complex: validation, projection, cartesian
// structure, bounded lifting problems with a generic search engine, and the
// probe battery that classifies cartesian edges.
#include "spancalc/fibration.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "cell_detail.hpp"
#include "spancalc/parallel.hpp"

namespace spancalc {

namespace {

using detail::assemble_cell;
using detail::iv_count;
using detail::iv_index;
using detail::two_cell;

using Key = std::pair<int, int>;

FinSet one_set() { return make_set(1); }

SetMap to_point(int dom) { return constant_map(dom, 1, 0); }

SetMap empty_to(int cod) { return make_map(0, cod, {}); }

SetMap select(int value, int cod) { return constant_map(1, cod, value); }

std::vector<std::vector<int>> map_fibers(const SetMap& f) {
  std::vector<std::vector<int>> fib(static_cast<size_t>(f.cod));
  for (int x = 0; x < f.dom; ++x)
    fib[static_cast<size_t>(f.values[static_cast<size_t>(x)])].push_back(x);
  return fib;
}

// Runs fn on every value table with entries drawn from the per-element
// candidate lists; stops early when fn returns false.
bool for_each_table(const std::vector<std::vector<int>>& allowed,
                    const std::function<bool(const std::vector<int>&)>& fn) {
  for (const auto& a : allowed)
    if (a.empty()) return true;
  std::vector<int> pick(allowed.size(), 0);
  std::vector<int> vals(allowed.size());
  while (true) {
    for (size_t i = 0; i < allowed.size(); ++i)
      vals[i] = allowed[i][static_cast<size_t>(pick[i])];
    if (!fn(vals)) return false;
    size_t i = 0;
    for (; i < allowed.size(); ++i) {
      if (++pick[i] < static_cast<int>(allowed[i].size())) break;
      pick[i] = 0;
    }
    if (i == allowed.size()) return true;
  }
}

std::vector<Key> path_steps(int n, int i, int j, int a, int b) {
  std::vector<Key> st;
  for (int t = j; t > b; --t)
    st.push_back({iv_index(n, i, t), iv_index(n, i, t - 1)});
  for (int s = i; s < a; ++s)
    st.push_back({iv_index(n, s, b), iv_index(n, s + 1, b)});
  return st;
}

std::vector<int> encode_arr(const ArrSpanCell& c) {
  std::vector<int> e = encode_cell(c.top_cell);
  std::vector<int> eb = encode_cell(c.bottom_cell);
  e.push_back(-1);
  e.insert(e.end(), eb.begin(), eb.end());
  e.push_back(-1);
  for (const auto& m : c.components) {
    e.push_back(m.dom);
    e.push_back(m.cod);
    e.insert(e.end(), m.values.begin(), m.values.end());
  }
  return e;
}

bool try_make_arr(SpanCell top, SpanCell bottom, std::vector<SetMap> comps,
                  ArrSpanCell& out) {
  out.top_cell = std::move(top);
  out.bottom_cell = std::move(bottom);
  out.components = std::move(comps);
  return validate_arr_cell(out);
}

// Named pieces of a dimension-1 cell.
struct EdgeParts {
  FinSet T0, U, T1, B0, S, B1;
  Span1 ts, bs;
  SetMap lt, rt, lb, rb, c0, cu, c1;
};

EdgeParts parts(const ArrSpanCell& e) {
  EdgeParts ep;
  ep.ts = span_from_cell(e.top_cell);
  ep.bs = span_from_cell(e.bottom_cell);
  ep.T0 = ep.ts.left_foot;
  ep.U = ep.ts.apex;
  ep.T1 = ep.ts.right_foot;
  ep.B0 = ep.bs.left_foot;
  ep.S = ep.bs.apex;
  ep.B1 = ep.bs.right_foot;
  ep.lt = ep.ts.lmap;
  ep.rt = ep.ts.rmap;
  ep.lb = ep.bs.lmap;
  ep.rb = ep.bs.rmap;
  ep.c0 = e.components[0];
  ep.cu = e.components[1];
  ep.c1 = e.components[2];
  return ep;
}

// The base cell shared by all shape-1 probes: a unit chain feeding the
// bottom span of the edge under test.
SpanCell tower_base(const EdgeParts& ep) {
  int b0 = ep.B0.size, s = ep.S.size;
  std::vector<FinSet> sets(static_cast<size_t>(iv_count(3)));
  auto at = [&](int lo, int hi) -> FinSet& {
    return sets[static_cast<size_t>(iv_index(3, lo, hi))];
  };
  at(0, 0) = one_set();
  at(1, 1) = one_set();
  at(2, 2) = ep.B0;
  at(3, 3) = ep.B1;
  at(0, 1) = one_set();
  at(1, 2) = ep.B0;
  at(2, 3) = ep.S;
  at(0, 2) = ep.B0;
  at(1, 3) = ep.S;
  at(0, 3) = ep.S;
  std::vector<SetMap> rd(sets.size()), ld(sets.size());
  auto put = [&](int lo, int hi, SetMap r, SetMap l) {
    rd[static_cast<size_t>(iv_index(3, lo, hi))] = std::move(r);
    ld[static_cast<size_t>(iv_index(3, lo, hi))] = std::move(l);
  };
  put(0, 1, identity_map(1), identity_map(1));
  put(1, 2, to_point(b0), identity_map(b0));
  put(2, 3, ep.lb, ep.rb);
  put(0, 2, to_point(b0), identity_map(b0));
  put(1, 3, ep.lb, identity_map(s));
  put(0, 3, ep.lb, identity_map(s));
  return assemble_cell(3, sets, rd, ld);
}

}  // namespace

bool operator==(const ArrObj& a, const ArrObj& b) {
  return a.top == b.top && a.bottom == b.bottom && a.arrow == b.arrow;
}

bool operator==(const ArrSpanCell& a, const ArrSpanCell& b) {
  return a.top_cell == b.top_cell && a.bottom_cell == b.bottom_cell &&
         a.components == b.components;
}

bool operator<(const ArrSpanCell& a, const ArrSpanCell& b) {
  if (!(a.top_cell == b.top_cell)) return a.top_cell < b.top_cell;
  if (!(a.bottom_cell == b.bottom_cell)) return a.bottom_cell < b.bottom_cell;
  return a.components < b.components;
}

int arr_dim(const ArrSpanCell& c) { return c.top_cell.n; }

bool validate_arr_cell(const ArrSpanCell& c) {
  int n = c.top_cell.n;
  if (c.bottom_cell.n != n) return false;
  size_t nc = static_cast<size_t>(iv_count(n));
  if (c.components.size() != nc) return false;
  if (!validate_cell(c.top_cell) || !validate_cell(c.bottom_cell)) return false;
  for (size_t t = 0; t < nc; ++t) {
    if (c.components[t].dom != c.top_cell.sets[t].size) return false;
    if (c.components[t].cod != c.bottom_cell.sets[t].size) return false;
  }
  for (const auto& [key, top_map] : c.top_cell.maps) {
    const SetMap& bot_map = c.bottom_cell.maps.at(key);
    size_t from = static_cast<size_t>(key.first);
    size_t to = static_cast<size_t>(key.second);
    if (compose_maps(c.components[to], top_map) !=
        compose_maps(bot_map, c.components[from]))
      return false;
  }
  return true;
}

SpanCell project(const ArrSpanCell& c) { return c.bottom_cell; }

ArrObj arr_vertex(const ArrSpanCell& c, int i) {
  ArrObj o;
  o.top = cell_set(c.top_cell, {i, i});
  o.bottom = cell_set(c.bottom_cell, {i, i});
  o.arrow = c.components[static_cast<size_t>(iv_index(c.top_cell.n, i, i))];
  return o;
}

ArrSpanCell arr_from_obj(const ArrObj& x) {
  if (x.arrow.dom != x.top.size || x.arrow.cod != x.bottom.size)
    fail(errc::invalid, "object arrow does not match its sets");
  ArrSpanCell c;
  c.top_cell = cell_from_point(x.top);
  c.bottom_cell = cell_from_point(x.bottom);
  c.components = {x.arrow};
  return c;
}

ArrSpanCell make_arr_edge(const Span1& top, const Span1& bottom,
                          const SetMap& c0, const SetMap& cmid,
                          const SetMap& c1) {
  ArrSpanCell c;
  if (!try_make_arr(cell_from_span(top), cell_from_span(bottom),
                    {c0, cmid, c1}, c))
    fail(errc::invalid, "edge data is not a natural cell of maps");
  return c;
}

ArrSpanCell arr_face(const ArrSpanCell& c, int i) {
  int n = c.top_cell.n;
  ArrSpanCell r;
  r.top_cell = face(c.top_cell, i);
  r.bottom_cell = face(c.bottom_cell, i);
  r.components.resize(static_cast<size_t>(iv_count(n - 1)));
  for (int a = 0; a <= n - 1; ++a)
    for (int b = a; b <= n - 1; ++b) {
      int da = a < i ? a : a + 1;
      int db = b < i ? b : b + 1;
      r.components[static_cast<size_t>(iv_index(n - 1, a, b))] =
          c.components[static_cast<size_t>(iv_index(n, da, db))];
    }
  return r;
}

ArrSpanCell arr_degeneracy(const ArrSpanCell& c, int i) {
  int n = c.top_cell.n;
  ArrSpanCell r;
  r.top_cell = degeneracy(c.top_cell, i);
  r.bottom_cell = degeneracy(c.bottom_cell, i);
  r.components.resize(static_cast<size_t>(iv_count(n + 1)));
  auto sig = [&](int v) { return v <= i ? v : v - 1; };
  for (int a = 0; a <= n + 1; ++a)
    for (int b = a; b <= n + 1; ++b)
      r.components[static_cast<size_t>(iv_index(n + 1, a, b))] =
          c.components[static_cast<size_t>(iv_index(n, sig(a), sig(b)))];
  return r;
}

ArrSpanCell last_arr_edge(const ArrSpanCell& c) {
  ArrSpanCell r = c;
  while (arr_dim(r) > 1) r = arr_face(r, 0);
  if (arr_dim(r) != 1) fail(errc::dim, "cell has no final edge");
  return r;
}

bool is_cartesian_structural(const ArrSpanCell& e) {
  if (arr_dim(e) != 1) fail(errc::dim, "cartesian test needs dimension 1");
  if (!validate_arr_cell(e)) fail(errc::invalid, "not a cell of maps");
  EdgeParts ep = parts(e);
  return is_bijection(ep.lt) &&
         is_pullback_square(ep.cu, ep.rt, ep.rb, ep.c1);
}

ArrSpanCell cartesian_lift(const Span1& base, const ArrObj& fiber) {
  if (fiber.bottom != base.right_foot)
    fail(errc::mismatch, "fiber does not sit over the base target");
  PullbackSquare pb = pullback(base.rmap, fiber.arrow);
  Span1 top = make_span(pb.apex, pb.apex, fiber.top, identity_map(pb.apex.size),
                        pb.right);
  return make_arr_edge(top, base, compose_maps(base.lmap, pb.left), pb.left,
                       fiber.arrow);
}

ArrSpanCell inner_horn_fill_spantimes(const ArrSpanCell& e01,
                                      const ArrSpanCell& e12) {
  if (arr_dim(e01) != 1 || arr_dim(e12) != 1)
    fail(errc::dim, "horn filling needs two edges");
  if (!(arr_vertex(e01, 1) == arr_vertex(e12, 0)))
    fail(errc::foot_mismatch, "edges do not share the middle vertex");
  Span1 s = span_from_cell(e01.top_cell), t = span_from_cell(e12.top_cell);
  Span1 sb = span_from_cell(e01.bottom_cell),
        tb = span_from_cell(e12.bottom_cell);
  SpanCell top2 = compose_via_cell(s, t);
  SpanCell bot2 = compose_via_cell(sb, tb);
  PullbackSquare pbt = pullback(s.rmap, t.lmap);
  PullbackSquare pbb = pullback(sb.rmap, tb.lmap);
  std::vector<std::vector<int>> idx(
      static_cast<size_t>(sb.apex.size),
      std::vector<int>(static_cast<size_t>(tb.apex.size), -1));
  for (int q = 0; q < pbb.apex.size; ++q)
    idx[static_cast<size_t>(pbb.left.values[static_cast<size_t>(q)])]
       [static_cast<size_t>(pbb.right.values[static_cast<size_t>(q)])] = q;
  const SetMap& cu1 = e01.components[1];
  const SetMap& cu2 = e12.components[1];
  std::vector<int> vals(static_cast<size_t>(pbt.apex.size));
  for (int p = 0; p < pbt.apex.size; ++p) {
    int u1 = pbt.left.values[static_cast<size_t>(p)];
    int u2 = pbt.right.values[static_cast<size_t>(p)];
    int v = idx[static_cast<size_t>(cu1.values[static_cast<size_t>(u1)])]
               [static_cast<size_t>(cu2.values[static_cast<size_t>(u2)])];
    if (v < 0)
      fail(errc::no_natural_map, "components miss the base pullback");
    vals[static_cast<size_t>(p)] = v;
  }
  SetMap c02 = make_map(pbt.apex.size, pbb.apex.size, std::move(vals));
  ArrSpanCell r;
  if (!try_make_arr(std::move(top2), std::move(bot2),
                    {e01.components[0], e01.components[1], std::move(c02),
                     e01.components[2], e12.components[1], e12.components[2]},
                    r))
    fail(errc::no_natural_map, "induced component is not natural");
  return r;
}

namespace {

bool problem_ok(const LiftingProblem& p) {
  if (p.m < 0 || p.m > 3) return false;
  if (arr_dim(p.edge) != 1 || !validate_arr_cell(p.edge)) return false;
  size_t want_sides = p.m == 0 ? 0 : static_cast<size_t>(p.m) + 1;
  if (p.sides.size() != want_sides) return false;
  if (arr_dim(p.cap) != p.m + 1 || !validate_arr_cell(p.cap)) return false;
  if (p.base.n != p.m + 2 || !validate_cell(p.base)) return false;
  for (const auto& s : p.sides) {
    if (arr_dim(s) != p.m + 1 || !validate_arr_cell(s)) return false;
    if (!(last_arr_edge(s) == p.edge)) return false;
  }
  if (!(arr_vertex(p.cap, p.m + 1) == arr_vertex(p.edge, 1))) return false;
  for (size_t k = 0; k < p.sides.size(); ++k)
    for (size_t j = 0; j < k; ++j)
      if (!(arr_face(p.sides[k], static_cast<int>(j)) ==
            arr_face(p.sides[j], static_cast<int>(k) - 1)))
        return false;
  for (size_t j = 0; j < p.sides.size(); ++j) {
    if (!(arr_face(p.cap, static_cast<int>(j)) == arr_face(p.sides[j], p.m)))
      return false;
    if (!(project(p.sides[j]) == face(p.base, static_cast<int>(j))))
      return false;
  }
  if (!(project(p.cap) == face(p.base, p.m + 1))) return false;
  SpanCell base_last = p.base;
  for (int i = 0; i < p.m + 1; ++i) base_last = face(base_last, 0);
  return base_last == p.edge.bottom_cell;
}

// Search state for one lifting problem: levels, prescribed structure maps,
// and components of the sought cell, with the free slots listed.
struct Solver {
  int n = 0;
  int bound = 0;
  const SpanCell* bottom = nullptr;
  std::vector<int> lev;
  std::map<Key, SetMap> given;
  std::vector<char> comp_known;
  std::vector<SetMap> comp;
  std::vector<int> free_levels;
  std::vector<Key> free_steps;
  std::vector<int> free_comps;
  std::map<Key, SetMap> cur;
  // Prescribed composites and pullback splits used for early pruning,
  // listed with the interval pair they constrain.
  struct Given {
    Key target;
    int src_iv;
    std::vector<Key> path;
  };
  std::vector<Given> checks;
  struct Split {
    int a, b, c;
    std::vector<Key> leg_l, leg_r;
  };
  std::vector<Split> splits;
  // One-step commuting squares with at least one free side, checked as soon
  // as all four maps are known: dropping ends in either order must agree.
  std::vector<std::array<Key, 4>> squares;
  long tried = 0;
  bool found = false;
  ArrSpanCell witness;

  const SetMap* step_map(const Key& k) const {
    auto it = given.find(k);
    if (it != given.end()) return &it->second;
    auto jt = cur.find(k);
    if (jt != cur.end()) return &jt->second;
    return nullptr;
  }

  bool compose_path(const std::vector<Key>& st, int src_iv, SetMap& out) const {
    out = identity_map(lev[static_cast<size_t>(src_iv)]);
    for (const Key& k : st) {
      const SetMap* m = step_map(k);
      if (!m) return false;
      out = compose_maps(*m, out);
    }
    return true;
  }
};

void absorb(Solver& sv, const SpanCell& top, const std::vector<SetMap>& comps,
            const std::vector<int>& vm) {
  int cn = top.n;
  for (int a = 0; a <= cn; ++a)
    for (int b = a; b <= cn; ++b) {
      size_t src = static_cast<size_t>(iv_index(cn, a, b));
      size_t dst = static_cast<size_t>(iv_index(sv.n, vm[static_cast<size_t>(a)],
                                                vm[static_cast<size_t>(b)]));
      int sz = top.sets[src].size;
      if (sv.lev[dst] >= 0 && sv.lev[dst] != sz)
        fail(errc::invalid, "problem data disagrees on a level");
      sv.lev[dst] = sz;
      if (sv.comp_known[dst]) {
        if (sv.comp[dst] != comps[src])
          fail(errc::invalid, "problem data disagrees on a component");
      } else {
        sv.comp_known[dst] = 1;
        sv.comp[dst] = comps[src];
      }
    }
  for (const auto& [key, m] : top.maps) {
    // Recover the intervals from the source cell's own indexing.
    int fi = -1, fj = -1, ti = -1, tj = -1;
    for (int a = 0; a <= cn && fi < 0; ++a)
      for (int b = a; b <= cn; ++b)
        if (iv_index(cn, a, b) == key.first) {
          fi = a;
          fj = b;
          break;
        }
    for (int a = 0; a <= cn && ti < 0; ++a)
      for (int b = a; b <= cn; ++b)
        if (iv_index(cn, a, b) == key.second) {
          ti = a;
          tj = b;
          break;
        }
    Key dst = {iv_index(sv.n, vm[static_cast<size_t>(fi)],
                        vm[static_cast<size_t>(fj)]),
               iv_index(sv.n, vm[static_cast<size_t>(ti)],
                        vm[static_cast<size_t>(tj)])};
    auto it = sv.given.find(dst);
    if (it != sv.given.end()) {
      if (it->second != m)
        fail(errc::invalid, "problem data disagrees on a structure map");
    } else {
      sv.given.emplace(dst, m);
    }
  }
}

// Evaluates every prescribed composite and pullback split whose inputs are
// now known and mentions one of the given keys; returns false on violation.
bool run_ready_checks(const Solver& sv, const Key& just_set) {
  for (const auto& g : sv.checks) {
    bool involves = false;
    for (const Key& k : g.path)
      if (k == just_set) {
        involves = true;
        break;
      }
    if (!involves) continue;
    SetMap got;
    if (!sv.compose_path(g.path, g.src_iv, got)) continue;
    if (got != sv.given.at(g.target)) return false;
  }
  for (const auto& sq : sv.squares) {
    bool involves = false;
    for (const Key& k : sq)
      if (k == just_set) involves = true;
    if (!involves) continue;
    const SetMap* m0 = sv.step_map(sq[0]);
    const SetMap* m1 = sv.step_map(sq[1]);
    const SetMap* m2 = sv.step_map(sq[2]);
    const SetMap* m3 = sv.step_map(sq[3]);
    if (!m0 || !m1 || !m2 || !m3) continue;
    if (compose_maps(*m1, *m0) != compose_maps(*m3, *m2)) return false;
  }
  for (const auto& s : sv.splits) {
    bool involves = false;
    for (const Key& k : s.leg_l)
      if (k == just_set) involves = true;
    for (const Key& k : s.leg_r)
      if (k == just_set) involves = true;
    if (!involves) continue;
    SetMap fl, fr;
    if (!sv.compose_path(s.leg_l, iv_index(sv.n, s.a, s.b), fl)) continue;
    if (!sv.compose_path(s.leg_r, iv_index(sv.n, s.b, s.c), fr)) continue;
    long want = sv.lev[static_cast<size_t>(iv_index(sv.n, s.a, s.c))];
    long count = 0;
    for (int u = 0; u < fl.dom; ++u)
      for (int v = 0; v < fr.dom; ++v)
        if (fl.values[static_cast<size_t>(u)] ==
            fr.values[static_cast<size_t>(v)])
          ++count;
    if (count != want) return false;
  }
  return true;
}

// Per-element candidate lists for a free one-step map, narrowed by every
// prescribed composite factoring through it with the rest of its path known
// and by naturality squares whose components are known.
std::vector<std::vector<int>> step_candidates(const Solver& sv, const Key& slot,
                                              int dom_sz, int cod_sz) {
  std::vector<std::vector<int>> allowed(static_cast<size_t>(dom_sz));
  std::vector<int> full(static_cast<size_t>(cod_sz));
  std::iota(full.begin(), full.end(), 0);
  for (auto& a : allowed) a = full;
  auto restrict_to = [&](int x, const std::vector<char>& ok) {
    auto& a = allowed[static_cast<size_t>(x)];
    a.erase(std::remove_if(a.begin(), a.end(),
                           [&](int v) { return !ok[static_cast<size_t>(v)]; }),
            a.end());
  };
  for (const auto& g : sv.checks) {
    size_t pos = g.path.size();
    bool rest_known = true;
    for (size_t i = 0; i < g.path.size(); ++i) {
      if (g.path[i] == slot) {
        pos = i;
      } else if (!sv.step_map(g.path[i])) {
        rest_known = false;
      }
    }
    if (pos == g.path.size() || !rest_known) continue;
    SetMap pre, post;
    std::vector<Key> pre_path(g.path.begin(),
                              g.path.begin() + static_cast<long>(pos));
    std::vector<Key> post_path(g.path.begin() + static_cast<long>(pos) + 1,
                               g.path.end());
    if (!sv.compose_path(pre_path, g.src_iv, pre)) continue;
    post = identity_map(cod_sz);
    bool post_ok = true;
    for (const Key& k : post_path) {
      const SetMap* m = sv.step_map(k);
      if (!m) {
        post_ok = false;
        break;
      }
      post = compose_maps(*m, post);
    }
    if (!post_ok) continue;
    const SetMap& target = sv.given.at(g.target);
    for (int e = 0; e < pre.dom; ++e) {
      int x = pre.values[static_cast<size_t>(e)];
      int want = target.values[static_cast<size_t>(e)];
      std::vector<char> ok(static_cast<size_t>(cod_sz), 0);
      for (int v = 0; v < cod_sz; ++v)
        if (post.values[static_cast<size_t>(v)] == want)
          ok[static_cast<size_t>(v)] = 1;
      restrict_to(x, ok);
    }
  }
  size_t from = static_cast<size_t>(slot.first);
  size_t to = static_cast<size_t>(slot.second);
  if (sv.comp_known[from] && sv.comp_known[to]) {
    const SetMap& bot = sv.bottom->maps.at(slot);
    for (int x = 0; x < dom_sz; ++x) {
      int want = bot.values[static_cast<size_t>(
          sv.comp[from].values[static_cast<size_t>(x)])];
      std::vector<char> ok(static_cast<size_t>(cod_sz), 0);
      for (int v = 0; v < cod_sz; ++v)
        if (sv.comp[to].values[static_cast<size_t>(v)] == want)
          ok[static_cast<size_t>(v)] = 1;
      restrict_to(x, ok);
    }
  }
  return allowed;
}

bool enum_comps(Solver& sv, size_t idx, const SpanCell& top);

bool finish_comps(Solver& sv, const SpanCell& top) {
  ++sv.tried;
  ArrSpanCell z;
  z.top_cell = top;
  z.bottom_cell = *sv.bottom;
  z.components = sv.comp;
  if (!validate_arr_cell(z)) return true;
  sv.found = true;
  sv.witness = std::move(z);
  return false;
}

// Enumerates the free components against the finished top table.
bool enum_comps(Solver& sv, size_t idx, const SpanCell& top) {
  if (idx == sv.free_comps.size()) return finish_comps(sv, top);
  size_t t = static_cast<size_t>(sv.free_comps[idx]);
  int dom_sz = top.sets[t].size;
  int cod_sz = sv.bottom->sets[t].size;
  std::vector<std::vector<int>> allowed(static_cast<size_t>(dom_sz));
  std::vector<int> full(static_cast<size_t>(cod_sz));
  std::iota(full.begin(), full.end(), 0);
  for (auto& a : allowed) a = full;
  for (const auto& [key, tm] : top.maps) {
    const SetMap& bm = sv.bottom->maps.at(key);
    size_t from = static_cast<size_t>(key.first);
    size_t to = static_cast<size_t>(key.second);
    if (from == t && sv.comp_known[to]) {
      for (int x = 0; x < dom_sz; ++x) {
        int want = sv.comp[to].values[static_cast<size_t>(
            tm.values[static_cast<size_t>(x)])];
        auto& a = allowed[static_cast<size_t>(x)];
        a.erase(std::remove_if(a.begin(), a.end(),
                               [&](int v) {
                                 return bm.values[static_cast<size_t>(v)] !=
                                        want;
                               }),
                a.end());
      }
    } else if (to == t && sv.comp_known[from]) {
      for (int e = 0; e < tm.dom; ++e) {
        int x = tm.values[static_cast<size_t>(e)];
        int want = bm.values[static_cast<size_t>(
            sv.comp[from].values[static_cast<size_t>(e)])];
        auto& a = allowed[static_cast<size_t>(x)];
        a.erase(std::remove_if(a.begin(), a.end(),
                               [&](int v) { return v != want; }),
                a.end());
      }
    }
  }
  return for_each_table(allowed, [&](const std::vector<int>& vals) {
    sv.comp[t] = make_map(dom_sz, cod_sz, vals);
    sv.comp_known[t] = 1;
    bool keep = enum_comps(sv, idx + 1, top);
    sv.comp_known[t] = 0;
    return keep;
  });
}

bool assemble_and_finish(Solver& sv) {
  size_t nc = static_cast<size_t>(iv_count(sv.n));
  std::vector<FinSet> sets(nc);
  for (size_t t = 0; t < nc; ++t) sets[t] = make_set(sv.lev[t]);
  std::vector<SetMap> rd(nc), ld(nc);
  for (int i = 0; i <= sv.n; ++i)
    for (int j = i + 1; j <= sv.n; ++j) {
      size_t t = static_cast<size_t>(iv_index(sv.n, i, j));
      rd[t] = *sv.step_map({iv_index(sv.n, i, j), iv_index(sv.n, i, j - 1)});
      ld[t] = *sv.step_map({iv_index(sv.n, i, j), iv_index(sv.n, i + 1, j)});
    }
  SpanCell top = assemble_cell(sv.n, sets, rd, ld);
  for (const auto& [key, m] : sv.given)
    if (top.maps.at(key) != m) return true;
  if (!validate_cell(top)) return true;
  return enum_comps(sv, 0, top);
}

bool enum_steps(Solver& sv, size_t idx) {
  if (idx == sv.free_steps.size()) return assemble_and_finish(sv);
  const Key slot = sv.free_steps[idx];
  int dom_sz = sv.lev[static_cast<size_t>(slot.first)];
  int cod_sz = sv.lev[static_cast<size_t>(slot.second)];
  auto allowed = step_candidates(sv, slot, dom_sz, cod_sz);
  return for_each_table(allowed, [&](const std::vector<int>& vals) {
    auto it = sv.cur.emplace(slot, make_map(dom_sz, cod_sz, vals)).first;
    bool keep = true;
    if (run_ready_checks(sv, slot)) keep = enum_steps(sv, idx + 1);
    sv.cur.erase(it);
    return keep;
  });
}

bool enum_levels(Solver& sv, size_t idx) {
  if (idx == sv.free_levels.size()) {
    // With all levels fixed, reject data whose fully prescribed composites
    // or splits already disagree.
    for (const auto& g : sv.checks) {
      SetMap got;
      if (!sv.compose_path(g.path, g.src_iv, got)) continue;
      if (got != sv.given.at(g.target)) return true;
    }
    for (const auto& s : sv.splits) {
      SetMap fl, fr;
      if (!sv.compose_path(s.leg_l, iv_index(sv.n, s.a, s.b), fl)) continue;
      if (!sv.compose_path(s.leg_r, iv_index(sv.n, s.b, s.c), fr)) continue;
      long count = 0;
      for (int u = 0; u < fl.dom; ++u)
        for (int v = 0; v < fr.dom; ++v)
          if (fl.values[static_cast<size_t>(u)] ==
              fr.values[static_cast<size_t>(v)])
            ++count;
      if (count != sv.lev[static_cast<size_t>(iv_index(sv.n, s.a, s.c))])
        return true;
    }
    return enum_steps(sv, 0);
  }
  size_t t = static_cast<size_t>(sv.free_levels[idx]);
  for (int sz = 0; sz <= sv.bound; ++sz) {
    sv.lev[t] = sz;
    if (!enum_levels(sv, idx + 1)) {
      sv.lev[t] = -1;
      return false;
    }
  }
  sv.lev[t] = -1;
  return true;
}

LiftResult solve_trusted(const LiftingProblem& p, int search_bound) {
  Solver sv;
  sv.n = p.m + 2;
  sv.bound = search_bound;
  sv.bottom = &p.base;
  size_t nc = static_cast<size_t>(iv_count(sv.n));
  sv.lev.assign(nc, -1);
  sv.comp_known.assign(nc, 0);
  sv.comp.assign(nc, SetMap{});
  absorb(sv, p.edge.top_cell, p.edge.components, {sv.n - 1, sv.n});
  auto skip_vm = [&](int skip, int verts) {
    std::vector<int> vm(static_cast<size_t>(verts));
    for (int v = 0; v < verts; ++v)
      vm[static_cast<size_t>(v)] = v < skip ? v : v + 1;
    return vm;
  };
  for (size_t j = 0; j < p.sides.size(); ++j)
    absorb(sv, p.sides[j].top_cell, p.sides[j].components,
           skip_vm(static_cast<int>(j), sv.n));
  absorb(sv, p.cap.top_cell, p.cap.components, skip_vm(p.m + 1, sv.n));
  for (size_t t = 0; t < nc; ++t) {
    if (sv.lev[t] < 0) sv.free_levels.push_back(static_cast<int>(t));
    if (!sv.comp_known[t]) sv.free_comps.push_back(static_cast<int>(t));
  }
  for (int i = 0; i <= sv.n; ++i)
    for (int j = i + 1; j <= sv.n; ++j) {
      Key r = {iv_index(sv.n, i, j), iv_index(sv.n, i, j - 1)};
      Key l = {iv_index(sv.n, i, j), iv_index(sv.n, i + 1, j)};
      if (!sv.given.count(r)) sv.free_steps.push_back(r);
      if (!sv.given.count(l)) sv.free_steps.push_back(l);
    }
  std::sort(sv.free_steps.begin(), sv.free_steps.end(),
            [](const Key& a, const Key& b) {
              if (a.first != b.first) return a.first < b.first;
              return a.second > b.second;
            });
  // Index the prescribed composites and the pullback splits once.
  for (int i = 0; i <= sv.n; ++i)
    for (int j = i; j <= sv.n; ++j)
      for (int a = i; a <= j; ++a)
        for (int b = a; b <= j; ++b) {
          Key key = {iv_index(sv.n, i, j), iv_index(sv.n, a, b)};
          if (!sv.given.count(key)) continue;
          auto path = path_steps(sv.n, i, j, a, b);
          if (path.size() < 2) continue;
          sv.checks.push_back({key, key.first, std::move(path)});
        }
  for (int a = 0; a <= sv.n; ++a)
    for (int b = a + 1; b <= sv.n; ++b)
      for (int c = b + 1; c <= sv.n; ++c)
        sv.splits.push_back({a, b, c, path_steps(sv.n, a, b, b, b),
                             path_steps(sv.n, b, c, b, b)});
  for (int i = 0; i <= sv.n; ++i)
    for (int j = i + 2; j <= sv.n; ++j) {
      std::array<Key, 4> sq = {
          Key{iv_index(sv.n, i, j), iv_index(sv.n, i, j - 1)},
          Key{iv_index(sv.n, i, j - 1), iv_index(sv.n, i + 1, j - 1)},
          Key{iv_index(sv.n, i, j), iv_index(sv.n, i + 1, j)},
          Key{iv_index(sv.n, i + 1, j), iv_index(sv.n, i + 1, j - 1)}};
      bool has_free = false;
      for (const Key& k : sq)
        if (!sv.given.count(k)) has_free = true;
      if (has_free) sv.squares.push_back(sq);
    }
  enum_levels(sv, 0);
  LiftResult res;
  res.found = sv.found;
  res.tried = sv.tried;
  if (sv.found) res.witness = std::move(sv.witness);
  return res;
}

}  // namespace

void validate_problem(const LiftingProblem& p) {
  if (!problem_ok(p))
    fail(errc::invalid, "lifting problem data is not coherent");
}

LiftResult solve_lifting(const LiftingProblem& p, int search_bound) {
  validate_problem(p);
  return solve_trusted(p, search_bound);
}

std::vector<LiftingProblem> probe_comparison_surjective(const ArrSpanCell& e) {
  EdgeParts ep = parts(e);
  std::vector<LiftingProblem> out;
  for (int y = 0; y < ep.S.size; ++y)
    for (int t = 0; t < ep.T1.size; ++t) {
      if (ep.rb.values[static_cast<size_t>(y)] !=
          ep.c1.values[static_cast<size_t>(t)])
        continue;
      LiftingProblem p;
      p.m = 0;
      p.edge = e;
      p.cap = make_arr_edge(
          make_span(one_set(), one_set(), ep.T1, identity_map(1),
                    select(t, ep.T1.size)),
          make_span(one_set(), ep.S, ep.B1, to_point(ep.S.size), ep.rb),
          identity_map(1), select(y, ep.S.size), ep.c1);
      p.base = two_cell(
          make_span(one_set(), ep.B0, ep.B0, to_point(ep.B0.size),
                    identity_map(ep.B0.size)),
          ep.bs, ep.S, ep.lb, identity_map(ep.S.size));
      out.push_back(std::move(p));
    }
  return out;
}

std::vector<LiftingProblem> probe_left_leg_surjective(const ArrSpanCell& e) {
  EdgeParts ep = parts(e);
  SpanCell bt = tower_base(ep);
  auto fib = map_fibers(ep.lt);
  std::vector<LiftingProblem> out;
  for (int x = 0; x < ep.T0.size; ++x) {
    if (!fib[static_cast<size_t>(x)].empty()) continue;
    LiftingProblem p;
    p.m = 1;
    p.edge = e;
    p.base = bt;
    ArrSpanCell v0, v1, cap;
    bool ok = true;
    ok = ok && try_make_arr(
                   two_cell(make_span(one_set(), make_set(0), ep.T0,
                                      empty_to(1), empty_to(ep.T0.size)),
                            ep.ts, make_set(0), empty_to(0),
                            empty_to(ep.U.size)),
                   face(bt, 0),
                   {identity_map(1), empty_to(ep.B0.size), empty_to(ep.S.size),
                    ep.c0, ep.cu, ep.c1},
                   v0);
    ok = ok && try_make_arr(
                   two_cell(make_span(one_set(), one_set(), ep.T0,
                                      identity_map(1), select(x, ep.T0.size)),
                            ep.ts, make_set(0), empty_to(1),
                            empty_to(ep.U.size)),
                   face(bt, 1),
                   {identity_map(1),
                    select(ep.c0.values[static_cast<size_t>(x)], ep.B0.size),
                    empty_to(ep.S.size), ep.c0, ep.cu, ep.c1},
                   v1);
    ok = ok && try_make_arr(
                   two_cell(make_span(one_set(), one_set(), one_set(),
                                      identity_map(1), identity_map(1)),
                            make_span(one_set(), make_set(0), ep.T1,
                                      empty_to(1), empty_to(ep.T1.size)),
                            make_set(0), empty_to(1), empty_to(0)),
                   face(bt, 2),
                   {identity_map(1), identity_map(1), empty_to(ep.S.size),
                    identity_map(1), empty_to(ep.S.size), ep.c1},
                   cap);
    if (!ok) fail(errc::invalid, "probe construction failed");
    p.sides = {std::move(v0), std::move(v1)};
    p.cap = std::move(cap);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<LiftingProblem> probe_left_leg_injective(const ArrSpanCell& e) {
  EdgeParts ep = parts(e);
  SpanCell bt = tower_base(ep);
  auto fib = map_fibers(ep.lt);
  std::vector<LiftingProblem> out;
  for (int x = 0; x < ep.T0.size; ++x) {
    const auto& px = fib[static_cast<size_t>(x)];
    int q = static_cast<int>(px.size());
    if (q < 2) continue;
    SetMap inc = make_map(q, ep.U.size, px);
    SetMap ci = compose_maps(ep.cu, inc);
    SetMap ri = compose_maps(ep.rt, inc);
    std::vector<int> perm(static_cast<size_t>(q));
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin(), perm.end())) {
      SetMap alpha = make_map(q, q, perm);
      // Coherent horn data needs the permutation to preserve both composite
      // legs out of the fiber; the missing composite still disagrees.
      if (compose_maps(ci, alpha) != ci) continue;
      if (compose_maps(ri, alpha) != ri) continue;
      LiftingProblem p;
      p.m = 1;
      p.edge = e;
      p.base = bt;
      ArrSpanCell v0, v1, cap;
      SetMap sel = select(ep.c0.values[static_cast<size_t>(x)], ep.B0.size);
      SpanCell side_top =
          two_cell(make_span(one_set(), one_set(), ep.T0, identity_map(1),
                             select(x, ep.T0.size)),
                   ep.ts, make_set(q), to_point(q), inc);
      bool ok = true;
      ok = ok && try_make_arr(side_top, face(bt, 0),
                              {identity_map(1), sel, ci, ep.c0, ep.cu, ep.c1},
                              v0);
      ok = ok && try_make_arr(side_top, face(bt, 1),
                              {identity_map(1), sel, ci, ep.c0, ep.cu, ep.c1},
                              v1);
      ok = ok &&
           try_make_arr(
               two_cell(make_span(one_set(), one_set(), one_set(),
                                  identity_map(1), identity_map(1)),
                        make_span(one_set(), make_set(q), ep.T1, to_point(q),
                                  compose_maps(ep.rt, inc)),
                        make_set(q), to_point(q), alpha),
               face(bt, 2),
               {identity_map(1), identity_map(1), ci, identity_map(1), ci,
                ep.c1},
               cap);
      if (!ok) fail(errc::invalid, "probe construction failed");
      p.sides = {std::move(v0), std::move(v1)};
      p.cap = std::move(cap);
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<LiftingProblem> probe_comparison_injective(const ArrSpanCell& e) {
  EdgeParts ep = parts(e);
  SpanCell bt = tower_base(ep);
  auto fib = map_fibers(ep.lt);
  std::vector<LiftingProblem> out;
  for (int y = 0; y < ep.S.size; ++y)
    for (int t = 0; t < ep.T1.size; ++t) {
      if (ep.rb.values[static_cast<size_t>(y)] !=
          ep.c1.values[static_cast<size_t>(t)])
        continue;
      std::vector<int> pre;
      for (int u = 0; u < ep.U.size; ++u)
        if (ep.cu.values[static_cast<size_t>(u)] == y &&
            ep.rt.values[static_cast<size_t>(u)] == t)
          pre.push_back(u);
      for (size_t ia = 0; ia < pre.size(); ++ia)
        for (size_t ib = ia + 1; ib < pre.size(); ++ib) {
          int a = pre[ia], a2 = pre[ib];
          int xa = ep.lt.values[static_cast<size_t>(a)];
          int xa2 = ep.lt.values[static_cast<size_t>(a2)];
          if (fib[static_cast<size_t>(xa)].size() != 1 ||
              fib[static_cast<size_t>(xa2)].size() != 1)
            continue;
          LiftingProblem p;
          p.m = 1;
          p.edge = e;
          p.base = bt;
          ArrSpanCell v0, v1, cap;
          auto side = [&](int u, int x, const SpanCell& bcell,
                          ArrSpanCell& outc) {
            return try_make_arr(
                two_cell(make_span(one_set(), one_set(), ep.T0,
                                   identity_map(1), select(x, ep.T0.size)),
                         ep.ts, one_set(), identity_map(1),
                         select(u, ep.U.size)),
                bcell,
                {identity_map(1),
                 select(ep.c0.values[static_cast<size_t>(x)], ep.B0.size),
                 select(y, ep.S.size), ep.c0, ep.cu, ep.c1},
                outc);
          };
          bool ok = side(a, xa, face(bt, 0), v0) &&
                    side(a2, xa2, face(bt, 1), v1);
          ok = ok &&
               try_make_arr(
                   two_cell(make_span(one_set(), one_set(), one_set(),
                                      identity_map(1), identity_map(1)),
                            make_span(one_set(), one_set(), ep.T1,
                                      identity_map(1), select(t, ep.T1.size)),
                            one_set(), identity_map(1), identity_map(1)),
                   face(bt, 2),
                   {identity_map(1), identity_map(1), select(y, ep.S.size),
                    identity_map(1), select(y, ep.S.size), ep.c1},
                   cap);
          if (!ok) fail(errc::invalid, "probe construction failed");
          p.sides = {std::move(v0), std::move(v1)};
          p.cap = std::move(cap);
          out.push_back(std::move(p));
        }
    }
  return out;
}

namespace {

// Stable relabeling of the free sets of a shape-0 problem, used to merge
// isomorphic problems in the sweep memo. Only genuinely isomorphic data can
// normalize to the same key.
std::vector<int> sweep0_key(int k, const SetMap& lm, const SetMap& rm,
                            const SetMap& rmb, const SetMap& cc,
                            const SetMap& mapc, const SetMap& rd,
                            const SetMap& ld) {
  int at = lm.dom, ab = rmb.dom, cs = mapc.dom;
  std::vector<int> oat(static_cast<size_t>(at));
  std::iota(oat.begin(), oat.end(), 0);
  std::stable_sort(oat.begin(), oat.end(), [&](int x, int yv) {
    auto key = [&](int z) {
      return std::array<int, 3>{lm.values[static_cast<size_t>(z)],
                                rm.values[static_cast<size_t>(z)],
                                cc.values[static_cast<size_t>(z)]};
    };
    return key(x) < key(yv);
  });
  std::vector<int> pat(static_cast<size_t>(at));
  for (int i = 0; i < at; ++i) pat[static_cast<size_t>(oat[static_cast<size_t>(i)])] = i;
  std::vector<int> oc(static_cast<size_t>(cs));
  std::iota(oc.begin(), oc.end(), 0);
  std::stable_sort(oc.begin(), oc.end(), [&](int x, int yv) {
    return mapc.values[static_cast<size_t>(x)] <
           mapc.values[static_cast<size_t>(yv)];
  });
  std::vector<int> pc(static_cast<size_t>(cs));
  for (int i = 0; i < cs; ++i) pc[static_cast<size_t>(oc[static_cast<size_t>(i)])] = i;
  std::vector<int> oab(static_cast<size_t>(ab));
  std::iota(oab.begin(), oab.end(), 0);
  std::stable_sort(oab.begin(), oab.end(), [&](int x, int yv) {
    auto key = [&](int z) {
      return std::array<int, 3>{rmb.values[static_cast<size_t>(z)],
                                ld.values[static_cast<size_t>(z)],
                                pc[static_cast<size_t>(
                                    rd.values[static_cast<size_t>(z)])]};
    };
    return key(x) < key(yv);
  });
  std::vector<int> pab(static_cast<size_t>(ab));
  for (int i = 0; i < ab; ++i) pab[static_cast<size_t>(oab[static_cast<size_t>(i)])] = i;
  std::vector<std::vector<int>> kin(static_cast<size_t>(k));
  for (int x = 0; x < at; ++x)
    kin[static_cast<size_t>(lm.values[static_cast<size_t>(x)])].push_back(
        pat[static_cast<size_t>(x)]);
  for (auto& v : kin) std::sort(v.begin(), v.end());
  std::vector<int> ok_(static_cast<size_t>(k));
  std::iota(ok_.begin(), ok_.end(), 0);
  std::stable_sort(ok_.begin(), ok_.end(), [&](int x, int yv) {
    return kin[static_cast<size_t>(x)] < kin[static_cast<size_t>(yv)];
  });
  std::vector<int> pk(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) pk[static_cast<size_t>(ok_[static_cast<size_t>(i)])] = i;
  std::vector<int> key = {k, at, ab, cs, -2};
  for (int i = 0; i < at; ++i) {
    int x = oat[static_cast<size_t>(i)];
    key.push_back(pk[static_cast<size_t>(lm.values[static_cast<size_t>(x)])]);
    key.push_back(rm.values[static_cast<size_t>(x)]);
    key.push_back(pab[static_cast<size_t>(cc.values[static_cast<size_t>(x)])]);
  }
  key.push_back(-2);
  for (int i = 0; i < ab; ++i) {
    int x = oab[static_cast<size_t>(i)];
    key.push_back(rmb.values[static_cast<size_t>(x)]);
    key.push_back(ld.values[static_cast<size_t>(x)]);
    key.push_back(pc[static_cast<size_t>(rd.values[static_cast<size_t>(x)])]);
  }
  key.push_back(-2);
  for (int i = 0; i < cs; ++i)
    key.push_back(mapc.values[static_cast<size_t>(oc[static_cast<size_t>(i)])]);
  return key;
}

// Bounded sweep of every shape-0 lifting problem whose test data stays
// within the bound, over the split test objects. The middle of the base is
// taken to be the actual pullback of its legs; any other choice is a
// relabeling of one of these, which the memo merges anyway.
bool sweep_shape0(const ArrSpanCell& e, int bound, long& problems,
                  std::string* why) {
  EdgeParts ep = parts(e);
  std::map<std::vector<int>, bool> memo;
  for (int cs = 0; cs <= bound; ++cs)
    for (const SetMap& mapc : all_maps(cs, ep.B0.size)) {
      PullbackSquare pbb = pullback(mapc, ep.lb);
      int ab = pbb.apex.size;
      if (ab > bound) continue;
      const SetMap& rd = pbb.left;
      const SetMap& ld = pbb.right;
      SetMap rmb = compose_maps(ep.rb, ld);
      SpanCell base =
          two_cell(make_span(one_set(), make_set(cs), ep.B0, to_point(cs),
                             mapc),
                   ep.bs, make_set(ab), rd, ld);
      if (!validate_cell(base)) continue;
      Span1 capb =
          make_span(one_set(), make_set(ab), ep.B1, to_point(ab), rmb);
      for (int k = 0; k <= bound; ++k)
        for (int at = 0; at <= bound; ++at)
          for (const SetMap& lm : all_maps(at, k))
            for (const SetMap& rm : all_maps(at, ep.T1.size)) {
              std::vector<std::vector<int>> cand(static_cast<size_t>(at));
              for (int x = 0; x < at; ++x) {
                int want = ep.c1.values[static_cast<size_t>(
                    rm.values[static_cast<size_t>(x)])];
                for (int v = 0; v < ab; ++v)
                  if (rmb.values[static_cast<size_t>(v)] == want)
                    cand[static_cast<size_t>(x)].push_back(v);
              }
              bool go = for_each_table(cand, [&](const std::vector<int>& cv) {
                SetMap cc = make_map(at, ab, cv);
                auto key = sweep0_key(k, lm, rm, rmb, cc, mapc, rd, ld);
                auto it = memo.find(key);
                bool okp;
                if (it != memo.end()) {
                  okp = it->second;
                  ++problems;
                } else {
                  ArrSpanCell capc;
                  if (!try_make_arr(
                          cell_from_span(make_span(make_set(k), make_set(at),
                                                   ep.T1, lm, rm)),
                          cell_from_span(capb), {to_point(k), cc, ep.c1},
                          capc))
                    return true;
                  LiftingProblem p;
                  p.m = 0;
                  p.edge = e;
                  p.cap = std::move(capc);
                  p.base = base;
                  if (!problem_ok(p)) return true;
                  ++problems;
                  okp = solve_trusted(p, bound).found;
                  memo.emplace(std::move(key), okp);
                }
                if (!okp && why) {
                  std::ostringstream os;
                  os << "shape-0 sweep failure at test object " << k
                     << " -> 1";
                  *why = os.str();
                }
                return okp;
              });
              if (!go) return false;
            }
    }
  return true;
}

// Bounded sweep of shape-1 lifting problems over the unit test tower. Both
// side middles are taken to be actual pullbacks against the top left leg;
// any other cone is a relabeling of one of these.
bool sweep_shape1(const ArrSpanCell& e, int bound, long& problems,
                  std::string* why) {
  EdgeParts ep = parts(e);
  SpanCell bt = tower_base(ep);
  for (int p12 = 0; p12 <= bound; ++p12)
    for (const SetMap& w : all_maps(p12, ep.T0.size)) {
      PullbackSquare q = pullback(w, ep.lt);
      int e13 = q.apex.size;
      if (e13 > bound) continue;
      ArrSpanCell v0;
      if (!try_make_arr(
              two_cell(make_span(one_set(), make_set(p12), ep.T0,
                                 to_point(p12), w),
                       ep.ts, q.apex, q.left, q.right),
              face(bt, 0),
              {identity_map(1), compose_maps(ep.c0, w),
               compose_maps(ep.cu, q.right), ep.c0, ep.cu, ep.c1},
              v0))
        continue;
      SetMap cap_rt = compose_maps(ep.rt, q.right);
      SetMap cu_ldq = compose_maps(ep.cu, q.right);
      for (int e02 = 0; e02 <= bound; ++e02)
        for (const SetMap& k2 : all_maps(e02, ep.T0.size)) {
          PullbackSquare q2 = pullback(k2, ep.lt);
          if (q2.apex.size != e13) continue;
          ArrSpanCell v1;
          SetMap cu_g23 = compose_maps(ep.cu, q2.right);
          if (!try_make_arr(
                  two_cell(make_span(one_set(), make_set(e02), ep.T0,
                                     to_point(e02), k2),
                           ep.ts, q2.apex, q2.left, q2.right),
                  face(bt, 1),
                  {identity_map(1), compose_maps(ep.c0, k2), cu_g23, ep.c0,
                   ep.cu, ep.c1},
                  v1))
            continue;
          std::vector<int> perm(static_cast<size_t>(e13));
          std::iota(perm.begin(), perm.end(), 0);
          do {
            SetMap ld3 = make_map(e13, e13, perm);
            if (cu_g23 != compose_maps(cu_ldq, ld3)) continue;
            ArrSpanCell cap;
            if (!try_make_arr(
                    two_cell(make_span(one_set(), one_set(), one_set(),
                                       identity_map(1), identity_map(1)),
                             make_span(one_set(), q.apex, ep.T1,
                                       to_point(e13), cap_rt),
                             q2.apex, to_point(e13), ld3),
                    face(bt, 2),
                    {identity_map(1), identity_map(1), cu_g23,
                     identity_map(1), cu_ldq, ep.c1},
                    cap))
              continue;
            LiftingProblem p;
            p.m = 1;
            p.edge = e;
            p.sides = {v0, v1};
            p.cap = std::move(cap);
            p.base = bt;
            if (!problem_ok(p)) continue;
            ++problems;
            if (!solve_trusted(p, bound).found) {
              if (why) *why = "shape-1 sweep failure on the unit tower";
              return false;
            }
          } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
  return true;
}

}  // namespace

ProbeReport probe_battery(const ArrSpanCell& e, int universe_bound) {
  if (arr_dim(e) != 1) fail(errc::dim, "probe battery needs dimension 1");
  ProbeReport rep;
  std::vector<std::vector<LiftingProblem>> families = {
      probe_comparison_surjective(e), probe_left_leg_surjective(e),
      probe_left_leg_injective(e), probe_comparison_injective(e)};
  for (size_t f = 0; f < families.size(); ++f) {
    const auto& fam = families[f];
    std::vector<char> solved(fam.size(), 1);
    par_for(fam.size(), [&](size_t i) {
      solved[i] = solve_trusted(fam[i], universe_bound).found ? 1 : 0;
    });
    rep.problems += static_cast<long>(fam.size());
    for (size_t i = 0; i < fam.size(); ++i)
      if (!solved[i]) {
        rep.passed = false;
        rep.killer = static_cast<int>(f) + 1;
        std::ostringstream os;
        os << "probe family " << rep.killer << " instance " << i
           << " has no filler";
        rep.detail = os.str();
        return rep;
      }
  }
  std::string why;
  if (!sweep_shape0(e, universe_bound, rep.problems, &why) ||
      !sweep_shape1(e, universe_bound, rep.problems, &why)) {
    rep.passed = false;
    rep.killer = 5;
    rep.detail = why;
    return rep;
  }
  rep.passed = true;
  return rep;
}

std::vector<ArrSpanCell> enumerate_arr_edges(int size_bound) {
  std::vector<ArrSpanCell> out;
  for (int t0 = 0; t0 <= size_bound; ++t0)
    for (int t01 = 0; t01 <= size_bound; ++t01)
      for (int t1 = 0; t1 <= size_bound; ++t1)
        for (int b0 = 0; b0 <= size_bound; ++b0)
          for (int b01 = 0; b01 <= size_bound; ++b01)
            for (int b1 = 0; b1 <= size_bound; ++b1)
              for (const SetMap& lt : all_maps(t01, t0))
                for (const SetMap& rt : all_maps(t01, t1))
                  for (const SetMap& lb : all_maps(b01, b0))
                    for (const SetMap& rb : all_maps(b01, b1))
                      for (const SetMap& c0 : all_maps(t0, b0))
                        for (const SetMap& c1 : all_maps(t1, b1)) {
                          std::vector<std::vector<int>> cand(
                              static_cast<size_t>(t01));
                          for (int u = 0; u < t01; ++u) {
                            int wl = c0.values[static_cast<size_t>(
                                lt.values[static_cast<size_t>(u)])];
                            int wr = c1.values[static_cast<size_t>(
                                rt.values[static_cast<size_t>(u)])];
                            for (int s = 0; s < b01; ++s)
                              if (lb.values[static_cast<size_t>(s)] == wl &&
                                  rb.values[static_cast<size_t>(s)] == wr)
                                cand[static_cast<size_t>(u)].push_back(s);
                          }
                          for_each_table(
                              cand, [&](const std::vector<int>& cv) {
                                out.push_back(make_arr_edge(
                                    make_span(make_set(t0), make_set(t01),
                                              make_set(t1), lt, rt),
                                    make_span(make_set(b0), make_set(b01),
                                              make_set(b1), lb, rb),
                                    c0, make_map(t01, b01, cv), c1));
                                return true;
                              });
                        }
  return out;
}

namespace {

std::vector<std::vector<int>> perms_of(int n) {
  std::vector<int> p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

SetMap conj(const SetMap& m, const std::vector<int>& pd,
            const std::vector<int>& pc) {
  std::vector<int> vals(static_cast<size_t>(m.dom));
  for (int x = 0; x < m.dom; ++x)
    vals[static_cast<size_t>(pd[static_cast<size_t>(x)])] =
        pc[static_cast<size_t>(m.values[static_cast<size_t>(x)])];
  return make_map(m.dom, m.cod, vals);
}

std::vector<int> edge_class_key(const ArrSpanCell& e) {
  EdgeParts ep = parts(e);
  std::vector<int> best;
  auto pt0 = perms_of(ep.T0.size), pt01 = perms_of(ep.U.size),
       pt1 = perms_of(ep.T1.size), pb0 = perms_of(ep.B0.size),
       pb01 = perms_of(ep.S.size), pb1 = perms_of(ep.B1.size);
  for (const auto& a : pt0)
    for (const auto& b : pt01)
      for (const auto& c : pt1)
        for (const auto& d : pb0)
          for (const auto& f : pb01)
            for (const auto& g : pb1) {
              ArrSpanCell r = make_arr_edge(
                  make_span(ep.T0, ep.U, ep.T1, conj(ep.lt, b, a),
                            conj(ep.rt, b, c)),
                  make_span(ep.B0, ep.S, ep.B1, conj(ep.lb, f, d),
                            conj(ep.rb, f, g)),
                  conj(ep.c0, a, d), conj(ep.cu, b, f), conj(ep.c1, c, g));
              std::vector<int> k = encode_arr(r);
              if (best.empty() || k < best) best = std::move(k);
            }
  return best;
}

}  // namespace

ClassificationReport classify_cartesian_edges(int size_bound,
                                              int universe_bound) {
  ClassificationReport rep;
  std::vector<ArrSpanCell> edges = enumerate_arr_edges(size_bound);
  rep.cells = static_cast<long>(edges.size());
  std::map<std::vector<int>, std::vector<size_t>> classes;
  for (size_t i = 0; i < edges.size(); ++i)
    classes[edge_class_key(edges[i])].push_back(i);
  rep.classes = static_cast<long>(classes.size());
  std::ostringstream detail;
  for (const auto& [key, members] : classes) {
    const ArrSpanCell& repc = edges[members.front()];
    bool structural = is_cartesian_structural(repc);
    ProbeReport pr = probe_battery(repc, universe_bound);
    for (size_t idx : members) {
      bool st = is_cartesian_structural(edges[idx]);
      if (st) ++rep.structural;
      if (pr.passed) ++rep.battery_passed;
      if (st != structural || st != pr.passed) {
        ++rep.discrepancies;
        if (rep.discrepancies <= 3)
          detail << "disagreement on cell " << idx << " (structural "
                 << (st ? "yes" : "no") << ", battery "
                 << (pr.passed ? "yes" : "no") << "); ";
      }
    }
    if (!pr.passed)
      rep.killers[static_cast<size_t>(pr.killer)] +=
          static_cast<long>(members.size());
  }
  rep.passed = rep.discrepancies == 0;
  std::ostringstream os;
  os << rep.cells << " cells in " << rep.classes << " classes, "
     << rep.structural << " structural, " << rep.battery_passed
     << " pass the battery, killers";
  for (size_t i = 1; i < rep.killers.size(); ++i)
    os << " " << rep.killers[i];
  os << "; " << detail.str();
  rep.detail = os.str();
  return rep;
}

}  // namespace spancalc
