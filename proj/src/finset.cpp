#include "spancalc/finset.hpp"

#include <algorithm>
#include <string>

namespace spancalc {

const char* errc_name(errc c) {
  switch (c) {
    case errc::out_of_range: return "OUT_OF_RANGE";
    case errc::length_mismatch: return "LENGTH_MISMATCH";
    case errc::domain_mismatch: return "DOMAIN_MISMATCH";
    case errc::codomain_mismatch: return "CODOMAIN_MISMATCH";
    case errc::not_commuting: return "NOT_COMMUTING";
    case errc::foot_mismatch: return "FOOT_MISMATCH";
    case errc::mismatch: return "MISMATCH";
    case errc::shape_mismatch: return "SHAPE_MISMATCH";
    case errc::dim_over_cap: return "DIM_OVER_CAP";
    case errc::index_range: return "INDEX_RANGE";
    case errc::invalid_category: return "INVALID_CATEGORY";
    case errc::compatibility_fail: return "COMPATIBILITY_FAIL";
    case errc::not_invertible: return "NOT_INVERTIBLE";
    case errc::not_monotone: return "NOT_MONOTONE";
    case errc::index: return "INDEX";
    case errc::shape: return "SHAPE";
    case errc::dim: return "DIM";
    case errc::invalid: return "INVALID";
    case errc::no_natural_map: return "NO_NATURAL_MAP";
  }
  return "UNKNOWN";
}

error::error(errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what),
      code_(code) {}

void fail(errc code, const std::string& what) { throw error(code, what); }

bool operator==(const SetMap& a, const SetMap& b) {
  return a.dom == b.dom && a.cod == b.cod && a.values == b.values;
}

bool operator<(const SetMap& a, const SetMap& b) {
  if (a.dom != b.dom) return a.dom < b.dom;
  if (a.cod != b.cod) return a.cod < b.cod;
  return a.values < b.values;
}

FinSet make_set(int n) {
  if (n < 0) fail(errc::out_of_range, "set size must be nonnegative");
  return FinSet{n};
}

SetMap make_map(int dom, int cod, std::vector<int> values) {
  if (dom < 0 || cod < 0) fail(errc::out_of_range, "negative set size");
  if (static_cast<int>(values.size()) != dom)
    fail(errc::length_mismatch, "value table length does not match domain");
  for (int v : values)
    if (v < 0 || v >= cod)
      fail(errc::out_of_range, "map value outside codomain");
  return SetMap{dom, cod, std::move(values)};
}

SetMap identity_map(int n) {
  std::vector<int> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i;
  return SetMap{n, n, std::move(v)};
}

SetMap constant_map(int dom, int cod, int value) {
  if (value < 0 || value >= cod)
    fail(errc::out_of_range, "constant outside codomain");
  return SetMap{dom, cod, std::vector<int>(static_cast<size_t>(dom), value)};
}

SetMap compose_maps(const SetMap& g, const SetMap& f) {
  if (f.cod != g.dom)
    fail(errc::domain_mismatch, "codomain of inner map must equal domain of outer map");
  std::vector<int> v(f.values.size());
  for (size_t i = 0; i < f.values.size(); ++i)
    v[i] = g.values[static_cast<size_t>(f.values[i])];
  return SetMap{f.dom, g.cod, std::move(v)};
}

PullbackSquare pullback(const SetMap& f, const SetMap& g) {
  if (f.cod != g.cod)
    fail(errc::codomain_mismatch, "pullback needs a shared codomain");
  std::vector<int> lv, rv;
  for (int a = 0; a < f.dom; ++a)
    for (int b = 0; b < g.dom; ++b)
      if (f.values[static_cast<size_t>(a)] == g.values[static_cast<size_t>(b)]) {
        lv.push_back(a);
        rv.push_back(b);
      }
  int n = static_cast<int>(lv.size());
  PullbackSquare sq;
  sq.apex = FinSet{n};
  sq.left = SetMap{n, f.dom, std::move(lv)};
  sq.right = SetMap{n, g.dom, std::move(rv)};
  sq.f = f;
  sq.g = g;
  return sq;
}

Coproduct coproduct(FinSet a, FinSet b) {
  Coproduct c;
  c.sum = FinSet{a.size + b.size};
  std::vector<int> lv(static_cast<size_t>(a.size));
  for (int i = 0; i < a.size; ++i) lv[static_cast<size_t>(i)] = i;
  std::vector<int> rv(static_cast<size_t>(b.size));
  for (int j = 0; j < b.size; ++j) rv[static_cast<size_t>(j)] = a.size + j;
  c.inl = SetMap{a.size, c.sum.size, std::move(lv)};
  c.inr = SetMap{b.size, c.sum.size, std::move(rv)};
  return c;
}

namespace {

// Depth-first search for a section of f, trying candidate values in order.
bool find_section(const SetMap& f, std::vector<int>& section, int c) {
  if (c == f.cod) return true;
  for (int x = 0; x < f.dom; ++x) {
    if (f.values[static_cast<size_t>(x)] == c) {
      section[static_cast<size_t>(c)] = x;
      if (find_section(f, section, c + 1)) return true;
    }
  }
  return false;
}

}  // namespace

MapClass classify_map(const SetMap& f) {
  MapClass c;
  std::vector<int> hits(static_cast<size_t>(f.cod), 0);
  for (int v : f.values) hits[static_cast<size_t>(v)]++;
  c.mono = true;
  c.epi = true;
  for (int h : hits) {
    if (h > 1) c.mono = false;
    if (h == 0) c.epi = false;
  }
  c.iso = c.mono && c.epi && f.dom == f.cod;
  std::vector<int> section(static_cast<size_t>(f.cod), 0);
  c.split_epi = find_section(f, section, 0);
  return c;
}

bool is_bijection(const SetMap& f) { return classify_map(f).iso; }

SetMap invert(const SetMap& f) {
  if (!is_bijection(f)) fail(errc::not_invertible, "map is not a bijection");
  std::vector<int> v(f.values.size());
  for (size_t i = 0; i < f.values.size(); ++i)
    v[static_cast<size_t>(f.values[i])] = static_cast<int>(i);
  return SetMap{f.cod, f.dom, std::move(v)};
}

bool is_pullback_square(const SetMap& left, const SetMap& right,
                        const SetMap& f, const SetMap& g) {
  if (left.dom != right.dom || left.cod != f.dom || right.cod != g.dom ||
      f.cod != g.cod)
    fail(errc::shape_mismatch, "square maps do not fit together");
  if (compose_maps(f, left) != compose_maps(g, right))
    fail(errc::not_commuting, "square does not commute");
  // Canonical comparison into the set of matching pairs must be a bijection.
  PullbackSquare canon = pullback(f, g);
  std::vector<int> seen(static_cast<size_t>(canon.apex.size), 0);
  for (int z = 0; z < left.dom; ++z) {
    int a = left.values[static_cast<size_t>(z)];
    int b = right.values[static_cast<size_t>(z)];
    int idx = -1;
    for (int w = 0; w < canon.apex.size; ++w)
      if (canon.left.values[static_cast<size_t>(w)] == a &&
          canon.right.values[static_cast<size_t>(w)] == b) {
        idx = w;
        break;
      }
    if (idx < 0) return false;  // unreachable given commuting, kept for safety
    if (seen[static_cast<size_t>(idx)]++) return false;
  }
  return left.dom == canon.apex.size;
}

bool is_pullback_square(const PullbackSquare& sq) {
  return is_pullback_square(sq.left, sq.right, sq.f, sq.g);
}

std::vector<SetMap> all_maps(int dom, int cod) {
  std::vector<SetMap> out;
  if (dom == 0) {
    out.push_back(SetMap{0, cod, {}});
    return out;
  }
  if (cod == 0) return out;  // no maps from a nonempty set to the empty set
  std::vector<int> v(static_cast<size_t>(dom), 0);
  for (;;) {
    out.push_back(SetMap{dom, cod, v});
    int i = dom - 1;
    while (i >= 0 && v[static_cast<size_t>(i)] == cod - 1) {
      v[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    v[static_cast<size_t>(i)]++;
  }
  return out;
}

}  // namespace spancalc
