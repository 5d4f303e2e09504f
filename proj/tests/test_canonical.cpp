#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "graphgame/canonical.hpp"
#include "oracles.hpp"

using namespace graphgame;

namespace {

ColoredBoard paint(ColoredBoard b, std::initializer_list<std::pair<int, int>> edges,
                   Colour c) {
  for (auto [u, v] : edges) b = apply_move(b, colex_index(u, v), c);
  return b;
}

std::set<std::vector<int>> as_sets(const OrbitPartition& p) {
  std::set<std::vector<int>> out;
  for (const auto& cls : p.classes) {
    std::vector<int> ids;
    for (EdgeId e : cls) ids.push_back(e.index);
    out.insert(ids);
  }
  return out;
}

}  // namespace

TEST(Canonical, EmptyTriangleUnderRelabelling) {
  const ColoredBoard k3 = complete_board(3);
  std::vector<int> perm{0, 1, 2};
  do {
    EXPECT_EQ(canonical_form(k3.permuted(perm)), canonical_form(k3));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(Canonical, RedPathsMatch) {
  const ColoredBoard a = paint(complete_board(4), {{0, 1}, {1, 2}}, Colour::Red);
  const ColoredBoard b = paint(complete_board(4), {{2, 3}, {3, 0}}, Colour::Red);
  // 0->2, 1->3, 2->0, 3->1 carries a onto b
  const std::vector<int> sigma{2, 3, 0, 1};
  EXPECT_EQ(oracle::relabelled(a, sigma), oracle::relabelled(b, oracle::identity(4)));
  EXPECT_EQ(canonical_form(a), canonical_form(b));
  EXPECT_TRUE(is_isomorphic(a, b));
}

TEST(Canonical, TriangleVersusStar) {
  const ColoredBoard tri = paint(complete_board(4), {{0, 1}, {1, 2}, {0, 2}}, Colour::Red);
  const ColoredBoard star = paint(complete_board(4), {{0, 1}, {0, 2}, {0, 3}}, Colour::Red);
  EXPECT_FALSE(oracle::isomorphic(tri, star));
  EXPECT_NE(canonical_form(tri), canonical_form(star));
}

TEST(Canonical, ColourMatters) {
  const ColoredBoard red = apply_move(complete_board(3), EdgeId{0}, Colour::Red);
  const ColoredBoard blue = apply_move(complete_board(3), EdgeId{0}, Colour::Blue);
  EXPECT_FALSE(is_isomorphic(red, blue));
}

TEST(Canonical, ColexNineRelabelled) {
  const ColoredBoard c9 = colex_board(9);
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    EXPECT_TRUE(is_isomorphic(c9, c9.permuted(oracle::random_perm(rng, 5))));
  }
}

TEST(Canonical, DimensionMismatch) {
  EXPECT_THROW(is_isomorphic(complete_board(3), complete_board(4)), DimensionError);
}

TEST(Canonical, PermutationInvariance) {
  std::mt19937 rng(2024);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 7;
    const ColoredBoard b = oracle::random_board(rng, n);
    const ColoredBoard c = b.permuted(oracle::random_perm(rng, n));
    violations += canonical_form(b) != canonical_form(c);
  }
  EXPECT_EQ(violations, 0);
}

TEST(Canonical, FormIsARelabellingFixedByEveryPermutation) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + trial % 4;
    const ColoredBoard b = oracle::random_board(rng, n);
    const auto key = canonical_key(b);
    const ColoredBoard canon = board_of_key(key, n);
    EXPECT_TRUE(oracle::isomorphic(canon, b)) << to_text(b);
    EXPECT_EQ(canonical_key(canon), key);
    // all n! relabellings share the key
    auto perm = oracle::identity(n);
    do {
      EXPECT_EQ(canonical_key(b.permuted(perm)), key) << to_text(b);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Canonical, SeparatesNonIsomorphic) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 3 + trial % 3;
    const ColoredBoard a = oracle::random_board(rng, n);
    const ColoredBoard b = trial % 2 ? a.permuted(oracle::random_perm(rng, n))
                                     : oracle::random_board(rng, n);
    EXPECT_EQ(is_isomorphic(a, b), oracle::isomorphic(a, b));
  }
}

TEST(Canonical, LabellingMapsOntoForm) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 8;
    const ColoredBoard b = oracle::random_board(rng, n);
    const CanonicalLabelling lab = canonical_labelling(b);
    std::vector<int> perm(lab.position.begin(), lab.position.begin() + n);
    EXPECT_EQ(key_of(b.permuted(perm)), lab.key);
  }
}

TEST(Canonical, K4ThreeRedThreeBlueClasses) {
  const ColoredBoard k4 = complete_board(4);
  std::vector<ColoredBoard> boards;
  for (unsigned mask = 0; mask < 64; ++mask) {
    if (__builtin_popcount(mask) != 3) continue;
    ColoredBoard b = k4;
    for (int e = 0; e < 6; ++e) {
      b = b.with(EdgeId{e}, (mask >> e & 1U) ? EdgeState::Red : EdgeState::Blue);
    }
    boards.push_back(b);
  }
  ASSERT_EQ(boards.size(), 20U);
  std::set<CanonicalForm> forms;
  for (const auto& b : boards) forms.insert(canonical_form(b));
  EXPECT_EQ(static_cast<int>(forms.size()), oracle::class_count(boards));
  EXPECT_EQ(forms.size(), 3U);
}

TEST(Orbits, CompleteGraphSingleOrbit) {
  for (int n = 2; n <= 7; ++n) {
    const OrbitPartition p = edge_orbits(complete_board(n));
    ASSERT_EQ(p.classes.size(), 1U);
    EXPECT_EQ(static_cast<int>(p.classes[0].size()), binom2(n));
  }
}

TEST(Orbits, ColexTwelveHasSingleton) {
  const OrbitPartition p = edge_orbits(colex_board(12));
  bool singleton = false;
  for (const auto& c : p.classes) singleton |= c.size() == 1;
  EXPECT_TRUE(singleton);
  EXPECT_EQ(as_sets(p), oracle::edge_orbits(colex_board(12)));
}

TEST(Orbits, OneRedEdgeOnK4) {
  const ColoredBoard b = apply_move(complete_board(4), colex_index(0, 1), Colour::Red);
  const OrbitPartition p = edge_orbits(b);
  const std::set<std::vector<int>> expect{
      {colex_index(0, 1).index},
      {colex_index(0, 2).index, colex_index(1, 2).index, colex_index(0, 3).index,
       colex_index(1, 3).index},
      {colex_index(2, 3).index}};
  EXPECT_EQ(as_sets(p), expect);
  EXPECT_EQ(as_sets(p), oracle::edge_orbits(b));
}

TEST(Orbits, ClassesOrderedByFirstEdge) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const OrbitPartition p = edge_orbits(oracle::random_board(rng, 2 + trial % 5));
    for (std::size_t i = 1; i < p.classes.size(); ++i) {
      EXPECT_LT(p.classes[i - 1].front(), p.classes[i].front());
    }
    for (const auto& c : p.classes) EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
  }
}

TEST(Orbits, MatchBruteForceUpToSixVertices) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 600; ++trial) {
    const int n = 2 + trial % 5;
    // few distinct states so that symmetric boards are common
    ColoredBoard b = complete_board(n);
    std::uniform_int_distribution<int> pick(0, 5);
    for (int e = 0; e < b.pair_count(); ++e) {
      const int r = pick(rng);
      if (r == 0) b = b.with(EdgeId{e}, EdgeState::Red);
      if (r == 1) b = b.with(EdgeId{e}, EdgeState::Blue);
      if (r == 2) b = b.with(EdgeId{e}, EdgeState::Absent);
    }
    EXPECT_EQ(as_sets(edge_orbits(b)), oracle::edge_orbits(b)) << to_text(b);
  }
}

TEST(Orbits, SameOrbitSameChild) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const ColoredBoard b = oracle::random_board(rng, 3 + trial % 4);
    for (const auto& cls : edge_orbits(b).classes) {
      if (b.state(cls.front()) != EdgeState::Uncolored) continue;
      const auto first = canonical_form(b.with(cls.front(), EdgeState::Red));
      for (EdgeId e : cls) {
        EXPECT_EQ(canonical_form(b.with(e, EdgeState::Red)), first);
      }
    }
  }
}

TEST(Orbits, MoveRepresentativesCoverEveryChild) {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const ColoredBoard b = oracle::random_board(rng, 2 + trial % 7);
    std::set<CanonicalForm> all, kept;
    for (EdgeId e : b.edges_in(EdgeState::Uncolored)) {
      all.insert(canonical_form(b.with(e, EdgeState::Blue)));
    }
    for (EdgeId e : move_representatives(b)) {
      EXPECT_EQ(b.state(e), EdgeState::Uncolored);
      kept.insert(canonical_form(b.with(e, EdgeState::Blue)));
    }
    EXPECT_EQ(all, kept);
  }
}

TEST(Canonical, RootedKeysSeeRoots) {
  // star centre versus leaf in an uncoloured K_{1,3}
  ColoredBoard star(4);
  for (int v = 1; v < 4; ++v) star = star.with(colex_index(0, v), EdgeState::Uncolored);
  const std::array<Vertex, 1> centre{0};
  const std::array<Vertex, 1> leaf{2};
  const std::array<Vertex, 1> leaf2{3};
  EXPECT_NE(rooted_canonical_key(star, centre), rooted_canonical_key(star, leaf));
  EXPECT_EQ(rooted_canonical_key(star, leaf), rooted_canonical_key(star, leaf2));
}
