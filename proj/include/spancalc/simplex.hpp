// Truncated simplicial sets with explicit degeneracy bookkeeping, the
// interval poset and its cosimplicial structure, nerves of categories and of
// 2-categories with invertible 2-cells, horn and boundary filler analysis.
#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spancalc/finset.hpp"
#include "spancalc/spans.hpp"

namespace spancalc {

// Nonempty subintervals of [n] ordered by reverse inclusion.
struct Interval {
  int lo = 0;
  int hi = 0;
};

bool operator==(Interval a, Interval b);
bool operator<(Interval a, Interval b);
inline bool operator!=(Interval a, Interval b) { return !(a == b); }

struct IntervalPoset {
  int n = 0;
  std::vector<Interval> elements;  // (lo, hi) lexicographic
};

IntervalPoset interval_poset(int n);
int interval_index(const IntervalPoset& p, Interval iv);
// a <= b iff b is contained in a (reverse inclusion).
bool interval_leq(Interval a, Interval b);
bool check_monotone(const SetMap& phi);
// For monotone phi: [m] -> [n], the functor C_m -> C_n on element indices.
SetMap induced(const SetMap& phi);

// A possibly-degenerate cell: a degeneracy word applied to a nondegenerate
// cell. The word is strictly decreasing left to right, leftmost applied last.
struct CellRef {
  int base_dim = 0;
  int base_id = 0;
  std::vector<int> degens;

  int dim() const { return base_dim + static_cast<int>(degens.size()); }
};

bool operator==(const CellRef& a, const CellRef& b);
bool operator<(const CellRef& a, const CellRef& b);
inline bool operator!=(const CellRef& a, const CellRef& b) { return !(a == b); }

// s_i applied to c, renormalized.
CellRef apply_degeneracy(const CellRef& c, int i);

struct TruncatedSSet {
  int cap = 0;
  std::vector<int> counts;  // nondegenerate cells per dimension
  // face_tab[d][cell][i] = the i-th face of nondegenerate cell, d >= 1
  std::vector<std::vector<std::vector<CellRef>>> face_tab;
  std::vector<std::vector<std::string>> labels;

  CellRef face(const CellRef& c, int i) const;
  CellRef degenerate(const CellRef& c, int i) const;
  bool is_valid_ref(const CellRef& c) const;
  // All cells of dimension d including degenerate ones, sorted.
  std::vector<CellRef> all_cells(int d) const;
  std::string label(const CellRef& c) const;
};

// Checks the simplicial identities on every nondegenerate cell.
TruncatedSSet make_sset(int cap, std::vector<int> counts,
                        std::vector<std::vector<std::vector<CellRef>>> face_tab,
                        std::vector<std::vector<std::string>> labels);

struct Category {
  int n_objects = 0;
  std::vector<int> src, tgt;  // per morphism id
  std::vector<int> identity;  // per object
  std::vector<std::vector<int>> comp;  // comp[g][f] = g after f, -1 undefined
  std::vector<std::string> names;      // per morphism id
};

Category make_category(int n_objects, std::vector<int> src,
                       std::vector<int> tgt, std::vector<int> identity,
                       std::vector<std::vector<int>> comp,
                       std::vector<std::string> names = {});
Category group_z2_category();
Category chain_poset_category(int n);
// Objects u, v, w; morphisms g: u->v, p, q: v->w with pg = qg = r.
Category fork_category();

// Nondegenerate d-cells are identity-free composable chains.
TruncatedSSet nerve_category(const Category& c, int cap);

// A 2-category with invertible 2-cells, presented elementwise: every 1-cell
// carries a finite set, composites are matching pairs of carrier elements,
// and 2-cells are carrier bijections recognized by is_theta.
struct TwoCatAmbient {
  int n_objects = 0;
  std::vector<int> src, tgt;  // per 1-cell id
  std::vector<int> carrier;   // per 1-cell id
  std::vector<int> id1;       // identity 1-cell per object
  std::function<bool(int f, int g, int u, int v)> match;
  std::function<bool(int f, int g, int h, const SetMap& beta)> is_theta;
  std::vector<std::string> names;  // per 1-cell id
};

// Composable element pairs for the composite of f then g, lex order.
std::vector<std::pair<int, int>> match_pairs(const TwoCatAmbient& amb, int f,
                                             int g);
int pair_index(const std::vector<std::pair<int, int>>& pairs, int u, int v);

// One n-cell of the nerve: objects, 1-cells f_ij, and bijections
// theta_ijk from the matching pairs of (f_ij, f_jk) to the carrier of f_ik.
struct Nerve2Data {
  int n = 0;
  std::vector<int> objects;
  std::map<std::pair<int, int>, int> arrows;
  std::map<std::array<int, 3>, SetMap> thetas;
};

bool operator==(const Nerve2Data& a, const Nerve2Data& b);
bool operator<(const Nerve2Data& a, const Nerve2Data& b);

TwoCatAmbient ambient_from_category(const Category& c);
// All spans between the listed finite sets with apex at most max_apex;
// 2-cells are the bijections commuting with both legs.
TwoCatAmbient ambient_spans(const std::vector<FinSet>& objects, int max_apex);
// The 1-cell id of a concrete span in ambient_spans, by structural lookup.
int ambient_span_id(const TwoCatAmbient& amb,
                    const std::vector<FinSet>& objects, const Span1& s);
Span1 ambient_span_of(const TwoCatAmbient& amb,
                      const std::vector<FinSet>& objects, int one_cell);

// Structural validity plus the compatibility identity
// theta_ijl(u, theta_jkl(v, w)) = theta_ikl(theta_ijk(u, v), w).
void validate_nerve2(const TwoCatAmbient& amb, const Nerve2Data& d);
Nerve2Data nerve2_face(const Nerve2Data& d, int i);
Nerve2Data nerve2_degeneracy(const TwoCatAmbient& amb, const Nerve2Data& d,
                             int j);

// All valid n-cells, optionally enforcing only the listed compatibility
// quadruples (i, j, k, l); pass nullptr for all of them.
std::vector<Nerve2Data> enumerate_nerve2_cells(
    const TwoCatAmbient& amb, int n,
    const std::vector<std::array<int, 4>>* quads = nullptr);

TruncatedSSet nerve_2cat(const TwoCatAmbient& amb, int cap);

// Unique filler of an inner 2-horn of 3-simplex shape: the missing
// theta_023 is theta_013 (theta_123 * id) (id * theta_012^{-1}).
Nerve2Data filler_formula_21(const TwoCatAmbient& amb, const Nerve2Data& face0,
                             const Nerve2Data& face2, const Nerve2Data& face3);
// Symmetric variant filling the face opposite vertex 2: theta_013 is
// computed from theta_023, theta_012 and theta_123^{-1}.
Nerve2Data filler_formula_22(const TwoCatAmbient& amb, const Nerve2Data& face0,
                             const Nerve2Data& face1, const Nerve2Data& face3);

struct HornMap {
  int n = 0;
  int k = 0;
  std::vector<CellRef> faces;  // size n+1, entry k unused
};

struct BoundaryMap {
  int n = 0;
  std::vector<CellRef> faces;  // size n+1
};

bool horn_compatible(const TruncatedSSet& x, const HornMap& h);
std::vector<HornMap> enumerate_horn_maps(const TruncatedSSet& x, int n, int k);
std::vector<CellRef> fillers(const TruncatedSSet& x, const HornMap& h);
std::vector<BoundaryMap> enumerate_boundary_maps(const TruncatedSSet& x, int n);
std::vector<CellRef> boundary_fillers(const TruncatedSSet& x,
                                      const BoundaryMap& b);

struct HornCount {
  int n = 0;
  int k = 0;
  long compatible = 0;
  long zero = 0;
  long one = 0;
  long many = 0;
};

struct BoundaryCount {
  int n = 0;
  long compatible = 0;
  long zero = 0;
  long one = 0;
  long many = 0;
};

// Filler statistics computed by bucketing, without materializing the maps.
HornCount count_horn_fillers(const TruncatedSSet& x, int n, int k);
BoundaryCount count_boundary_fillers(const TruncatedSSet& x, int n);

struct N1Report {
  std::vector<HornCount> horns;        // all (n, k), 2 <= n <= n_max
  std::vector<BoundaryCount> boundaries;  // 2 <= n <= n_max
};

N1Report check_n1_property(const TruncatedSSet& x, int n_max);

}  // namespace spancalc
