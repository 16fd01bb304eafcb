// Interval posets, truncated simplicial sets, nerves, and horn counting.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "spancalc/simplex.hpp"

using namespace spancalc;

TEST_CASE("interval poset lists intervals lexicographically") {
  IntervalPoset p = interval_poset(2);
  CHECK(p.elements.size() == 6);
  CHECK(p.elements[0].lo == 0);
  CHECK(p.elements[0].hi == 0);
  CHECK(p.elements[2].lo == 0);
  CHECK(p.elements[2].hi == 2);
  CHECK(interval_index(p, Interval{1, 2}) == 4);
  CHECK(interval_leq(Interval{0, 2}, Interval{1, 2}));
  CHECK_FALSE(interval_leq(Interval{1, 2}, Interval{0, 2}));
}

TEST_CASE("degeneracy words stay strictly decreasing") {
  CellRef c{1, 0, {}};
  CellRef s0 = apply_degeneracy(c, 0);
  CHECK(s0.dim() == 2);
  CellRef s10 = apply_degeneracy(s0, 1);
  CHECK(s10.degens.size() == 2);
  CHECK(s10.degens[0] > s10.degens[1]);
}

TEST_CASE("categories have the expected morphism counts") {
  Category z2 = group_z2_category();
  CHECK(z2.n_objects == 1);
  CHECK(z2.src.size() == 2);
  Category chain = chain_poset_category(3);
  CHECK(chain.n_objects == 4);
  CHECK(chain.src.size() == 10);
  Category fork = fork_category();
  CHECK(fork.n_objects == 3);
  CHECK(fork.src.size() == 7);
}

TEST_CASE("nerve of the two element group") {
  TruncatedSSet x = nerve_category(group_z2_category(), 4);
  std::vector<size_t> totals;
  for (int d = 0; d <= 4; ++d) totals.push_back(x.all_cells(d).size());
  CHECK(totals == std::vector<size_t>{1, 2, 4, 8, 16});
  CHECK(x.counts == std::vector<int>{1, 1, 1, 1, 1});
}

TEST_CASE("nerve of the chain poset") {
  TruncatedSSet x = nerve_category(chain_poset_category(3), 4);
  std::vector<size_t> totals;
  for (int d = 0; d <= 4; ++d) totals.push_back(x.all_cells(d).size());
  CHECK(totals == std::vector<size_t>{4, 10, 20, 35, 56});
  CHECK(x.counts == std::vector<int>{4, 6, 4, 1, 0});
}

TEST_CASE("nerve of the fork category") {
  TruncatedSSet x = nerve_category(fork_category(), 3);
  std::vector<size_t> totals;
  for (int d = 0; d <= 3; ++d) totals.push_back(x.all_cells(d).size());
  CHECK(totals == std::vector<size_t>{3, 7, 13, 21});
}

TEST_CASE("group and poset nerves fill outer four horns uniquely") {
  for (const Category& c : {group_z2_category(), chain_poset_category(3)}) {
    TruncatedSSet x = nerve_category(c, 4);
    for (int k : {0, 4}) {
      HornCount hc = count_horn_fillers(x, 4, k);
      CHECK(hc.zero == 0);
      CHECK(hc.many == 0);
      CHECK(hc.one == hc.compatible);
    }
  }
}

TEST_CASE("fork nerve has outer three horns without fillers") {
  TruncatedSSet x = nerve_category(fork_category(), 3);
  HornCount hc = count_horn_fillers(x, 3, 0);
  CHECK(hc.compatible == 25);
  CHECK(hc.zero == 4);
  CHECK(hc.one == 21);
  CHECK(hc.many == 0);
}

TEST_CASE("bucketed horn counts match explicit filler enumeration") {
  TruncatedSSet x = nerve_category(fork_category(), 3);
  HornCount hc = count_horn_fillers(x, 3, 0);
  long zero = 0, one = 0, many = 0;
  std::vector<HornMap> horns = enumerate_horn_maps(x, 3, 0);
  CHECK(static_cast<long>(horns.size()) == hc.compatible);
  for (const HornMap& h : horns) {
    size_t n = fillers(x, h).size();
    zero += n == 0;
    one += n == 1;
    many += n > 1;
  }
  CHECK(zero == hc.zero);
  CHECK(one == hc.one);
  CHECK(many == hc.many);
}

TEST_CASE("poset nerve inner horns and boundaries") {
  TruncatedSSet x = nerve_category(chain_poset_category(3), 3);
  N1Report rep = check_n1_property(x, 3);
  for (const HornCount& hc : rep.horns)
    if (hc.k > 0 && hc.k < hc.n) {
      CHECK(hc.zero == 0);
      CHECK(hc.many == 0);
    }
  CHECK(rep.boundaries.size() >= 1);
}

TEST_CASE("span ambient nerve cell counts") {
  TwoCatAmbient amb = ambient_spans({make_set(1)}, 2);
  std::vector<size_t> totals;
  for (int n = 0; n <= 3; ++n)
    totals.push_back(enumerate_nerve2_cells(amb, n).size());
  CHECK(totals == std::vector<size_t>{1, 3, 10, 38});
  TruncatedSSet x = nerve_2cat(amb, 3);
  CHECK(x.counts == std::vector<int>{1, 2, 5, 16});
}

TEST_CASE("span ambient nerve fills inner horns uniquely") {
  TwoCatAmbient amb = ambient_spans({make_set(1)}, 2);
  TruncatedSSet x = nerve_2cat(amb, 3);
  for (int k : {1, 2}) {
    HornCount hc = count_horn_fillers(x, 3, k);
    CHECK(hc.compatible == 38);
    CHECK(hc.zero == 0);
    CHECK(hc.many == 0);
    CHECK(hc.one == 38);
  }
}

TEST_CASE("filler formulas reproduce every ambient three cell") {
  TwoCatAmbient amb = ambient_spans({make_set(1)}, 2);
  std::vector<Nerve2Data> cells = enumerate_nerve2_cells(amb, 3);
  CHECK(cells.size() == 38);
  for (const Nerve2Data& d : cells) {
    Nerve2Data via21 = filler_formula_21(amb, nerve2_face(d, 0),
                                         nerve2_face(d, 2), nerve2_face(d, 3));
    CHECK(via21 == d);
    Nerve2Data via22 = filler_formula_22(amb, nerve2_face(d, 0),
                                         nerve2_face(d, 1), nerve2_face(d, 3));
    CHECK(via22 == d);
  }
}

TEST_CASE("nerve2 faces and degeneracies satisfy the simplicial identity") {
  TwoCatAmbient amb = ambient_spans({make_set(1)}, 2);
  for (const Nerve2Data& d : enumerate_nerve2_cells(amb, 2)) {
    for (int j = 0; j <= 2; ++j) {
      Nerve2Data s = nerve2_degeneracy(amb, d, j);
      CHECK(nerve2_face(s, j) == d);
      CHECK(nerve2_face(s, j + 1) == d);
    }
  }
}

TEST_CASE("monotone map machinery") {
  SetMap phi = make_map(2, 4, {1, 3});
  CHECK(check_monotone(phi));
  CHECK_FALSE(check_monotone(make_map(2, 2, {1, 0})));
  SetMap ind = induced(phi);
  CHECK(ind.dom == 3);
  CHECK(ind.cod == 10);
}
