// Finite sets, maps, pullbacks, and coproducts.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "spancalc/finset.hpp"

using namespace spancalc;

TEST_CASE("map construction validates its data") {
  SetMap f = make_map(3, 2, {0, 1, 1});
  CHECK(f.dom == 3);
  CHECK(f.cod == 2);
  CHECK_THROWS_AS(make_map(2, 2, {0}), error);
  CHECK_THROWS_AS(make_map(2, 2, {0, 2}), error);
  CHECK_THROWS_AS(make_map(1, 0, {0}), error);
  CHECK(make_map(0, 0, {}).dom == 0);
}

TEST_CASE("identity and constant maps") {
  SetMap id3 = identity_map(3);
  CHECK(id3.values == std::vector<int>{0, 1, 2});
  SetMap c = constant_map(4, 2, 1);
  CHECK(c.values == std::vector<int>{1, 1, 1, 1});
  CHECK_THROWS_AS(constant_map(1, 2, 2), error);
}

TEST_CASE("composition acts on the right argument first") {
  SetMap f = make_map(2, 3, {2, 0});
  SetMap g = make_map(3, 2, {1, 0, 0});
  SetMap gf = compose_maps(g, f);
  CHECK(gf.dom == 2);
  CHECK(gf.cod == 2);
  CHECK(gf.values == std::vector<int>{0, 1});
  CHECK_THROWS_AS(compose_maps(f, f), error);
}

TEST_CASE("all maps are complete, valid, and strictly sorted") {
  std::vector<SetMap> maps = all_maps(2, 3);
  CHECK(maps.size() == 9);
  for (size_t i = 0; i < maps.size(); ++i) {
    CHECK(maps[i].dom == 2);
    CHECK(maps[i].cod == 3);
    if (i > 0) CHECK(maps[i - 1] < maps[i]);
  }
  CHECK(all_maps(0, 5).size() == 1);
  CHECK(all_maps(0, 0).size() == 1);
  CHECK(all_maps(2, 0).empty());
  CHECK(all_maps(3, 2).size() == 8);
}

TEST_CASE("pullback is the lexicographic pair set") {
  SetMap f = identity_map(2);
  SetMap g = make_map(3, 2, {0, 0, 1});
  PullbackSquare pb = pullback(f, g);
  CHECK(pb.apex.size == 3);
  CHECK(pb.left.values == std::vector<int>{0, 0, 1});
  CHECK(pb.right.values == std::vector<int>{0, 1, 2});
  CHECK(is_pullback_square(pb));
  CHECK(is_pullback_square(pb.left, pb.right, pb.f, pb.g));
}

TEST_CASE("pullback square test rejects a non-universal square") {
  SetMap f = constant_map(2, 1, 0);
  SetMap g = constant_map(2, 1, 0);
  PullbackSquare pb = pullback(f, g);
  CHECK(pb.apex.size == 4);
  // A proper subset of the pair set commutes but is not universal.
  SetMap left = make_map(2, 2, {0, 1});
  SetMap right = make_map(2, 2, {0, 1});
  CHECK_FALSE(is_pullback_square(left, right, f, g));
}

TEST_CASE("pullback throws on codomain mismatch") {
  CHECK_THROWS_AS(pullback(identity_map(2), identity_map(3)), error);
}

TEST_CASE("coproduct sizes and injections") {
  Coproduct cp = coproduct(make_set(2), make_set(3));
  CHECK(cp.sum.size == 5);
  CHECK(cp.inl.dom == 2);
  CHECK(cp.inr.dom == 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(cp.inl.values[static_cast<size_t>(i)] !=
            cp.inr.values[static_cast<size_t>(j)]);
}

TEST_CASE("bijection test and inversion") {
  SetMap s = make_map(3, 3, {2, 0, 1});
  CHECK(is_bijection(s));
  SetMap inv = invert(s);
  CHECK(compose_maps(inv, s) == identity_map(3));
  CHECK(compose_maps(s, inv) == identity_map(3));
  CHECK_FALSE(is_bijection(constant_map(2, 2, 0)));
  CHECK_THROWS_AS(invert(constant_map(2, 2, 0)), error);
}

TEST_CASE("pullback against an identity is a relabeling") {
  SetMap f = make_map(3, 2, {0, 1, 1});
  PullbackSquare pb = pullback(f, identity_map(2));
  CHECK(pb.apex.size == 3);
  CHECK(is_bijection(pb.left));
}

TEST_CASE("map classification") {
  MapClass inj = classify_map(make_map(2, 3, {0, 2}));
  CHECK(inj.mono);
  CHECK_FALSE(inj.epi);
  MapClass surj = classify_map(make_map(3, 2, {0, 1, 1}));
  CHECK(surj.epi);
  CHECK(surj.split_epi);
  CHECK_FALSE(surj.mono);
  MapClass iso = classify_map(identity_map(4));
  CHECK(iso.iso);
  CHECK(iso.mono);
  CHECK(iso.epi);
}
