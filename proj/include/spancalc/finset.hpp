// Finite sets {0..n-1}, maps between them, pullbacks and coproducts.
// All values are immutable; operations return fresh objects.
#pragma once

#include <vector>

#include "spancalc/error.hpp"

namespace spancalc {

struct FinSet {
  int size = 0;
};

inline bool operator==(FinSet a, FinSet b) { return a.size == b.size; }
inline bool operator!=(FinSet a, FinSet b) { return !(a == b); }

struct SetMap {
  int dom = 0;
  int cod = 0;
  std::vector<int> values;  // values[i] in [0, cod)
};

bool operator==(const SetMap& a, const SetMap& b);
bool operator<(const SetMap& a, const SetMap& b);
inline bool operator!=(const SetMap& a, const SetMap& b) { return !(a == b); }

struct MapClass {
  bool mono = false;
  bool epi = false;
  bool iso = false;
  bool split_epi = false;
};

struct PullbackSquare {
  FinSet apex;
  SetMap left;   // apex -> dom(f)
  SetMap right;  // apex -> dom(g)
  SetMap f;      // dom(f) -> C
  SetMap g;      // dom(g) -> C
};

struct Coproduct {
  FinSet sum;
  SetMap inl;
  SetMap inr;
};

FinSet make_set(int n);
SetMap make_map(int dom, int cod, std::vector<int> values);
SetMap identity_map(int n);
SetMap constant_map(int dom, int cod, int value);

// compose_maps(g, f) = g after f.
SetMap compose_maps(const SetMap& g, const SetMap& f);

// Apex elements are the pairs (a, b) with f(a) = g(b) in lexicographic order.
PullbackSquare pullback(const SetMap& f, const SetMap& g);

Coproduct coproduct(FinSet a, FinSet b);

MapClass classify_map(const SetMap& f);
bool is_bijection(const SetMap& f);
SetMap invert(const SetMap& f);

// True iff (left, right) exhibits their shared domain as the pullback of f
// against g, decided through the canonical comparison map. Throws
// not_commuting when the square does not even commute.
bool is_pullback_square(const SetMap& left, const SetMap& right,
                        const SetMap& f, const SetMap& g);
bool is_pullback_square(const PullbackSquare& sq);

// All maps dom -> cod in lexicographic order of their value tables.
std::vector<SetMap> all_maps(int dom, int cod);

}  // namespace spancalc
