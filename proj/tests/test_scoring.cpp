#include <gtest/gtest.h>

#include <random>

#include "graphgame/scoring.hpp"
#include "oracles.hpp"

using namespace graphgame;

namespace {

ColoredBoard paint(ColoredBoard b, std::initializer_list<std::pair<int, int>> edges,
                   Colour c) {
  for (auto [u, v] : edges) b = apply_move(b, colex_index(u, v), c);
  return b;
}

ColoredBoard all_red(int n) {
  ColoredBoard b = complete_board(n);
  for (EdgeId e : b.edges_in(EdgeState::Uncolored)) b = b.with(e, EdgeState::Red);
  return b;
}

// Every full colouring of `base` whose red set is `mask`.
ColoredBoard colouring(const ColoredBoard& base, unsigned mask) {
  ColoredBoard b = base;
  int i = 0;
  for (EdgeId e : base.edges_in(EdgeState::Uncolored)) {
    b = b.with(e, (mask >> i++ & 1U) ? EdgeState::Red : EdgeState::Blue);
  }
  return b;
}

}  // namespace

TEST(Clique, Basics) {
  EXPECT_EQ(clique_score(all_red(4), Colour::Red), 4);
  EXPECT_EQ(clique_score(complete_board(5), Colour::Red), 1);
  EXPECT_EQ(clique_score(all_red(4), Colour::Blue), 1);
  const ColoredBoard tri = paint(complete_board(5), {{0, 1}, {1, 2}, {0, 2}, {3, 4}}, Colour::Blue);
  EXPECT_EQ(clique_score(tri, Colour::Blue), 3);
}

TEST(Star, Basics) {
  const ColoredBoard star = paint(complete_board(5), {{0, 1}, {0, 2}, {0, 3}}, Colour::Red);
  EXPECT_EQ(star_score(star, Colour::Red), 3);
  EXPECT_EQ(star_score(star, Colour::Blue), 0);
}

TEST(VC, Basics) {
  EXPECT_EQ(vc_score(all_red(2)), (Outcome{2, 0}));
  // 4-cycle 0-1-2-3 coloured alternately: every vertex balanced
  ColoredBoard c4(4);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 3}, {3, 0}}) {
    c4 = c4.with(colex_index(u, v), EdgeState::Uncolored);
  }
  c4 = paint(c4, {{0, 1}, {2, 3}}, Colour::Red);
  c4 = paint(c4, {{1, 2}, {3, 0}}, Colour::Blue);
  EXPECT_EQ(vc_score(c4), (Outcome{0, 0}));
}

TEST(Colex, Basics) {
  EXPECT_EQ(colex_score(paint(complete_board(4), {{0, 1}}, Colour::Red), Colour::Red), 1);
  EXPECT_EQ(colex_score(paint(complete_board(4), {{0, 1}, {1, 2}}, Colour::Red), Colour::Red), 2);
  EXPECT_EQ(colex_score(complete_board(4), Colour::Red), 0);
  // triangle plus a pendant edge is C(4)
  const ColoredBoard b = paint(complete_board(5), {{0, 1}, {1, 2}, {0, 2}, {2, 3}}, Colour::Blue);
  EXPECT_EQ(colex_score(b, Colour::Blue), 4);
}

TEST(Scores, MatchBruteForceOnSmallBoards) {
  std::mt19937 rng(123);
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = 2 + trial % 6;
    ColoredBoard b = oracle::random_board(rng, n);
    // at most 8 coloured edges keeps the embedding oracle fast
    int coloured = 0;
    for (int e = 0; e < b.pair_count(); ++e) {
      const EdgeState s = b.state(EdgeId{e});
      if (s == EdgeState::Red || s == EdgeState::Blue) {
        if (++coloured > 8) b = b.with(EdgeId{e}, EdgeState::Uncolored);
      }
    }
    for (GameKind k : kAllKinds) {
      EXPECT_EQ(score(b, k), oracle::score(b, k)) << to_text(b) << " " << to_string(k);
    }
  }
}

TEST(Scores, CliqueAndColexAgreeOnK4K5) {
  for (int n : {4, 5}) {
    const ColoredBoard base = complete_board(n);
    const unsigned total = 1U << base.pair_count();
    for (unsigned mask = 0; mask < total; ++mask) {
      const ColoredBoard b = colouring(base, mask);
      for (Colour c : {Colour::Red, Colour::Blue}) {
        const int w = clique_score(b, c);
        const int col = colex_score(b, c);
        EXPECT_GE(col, binom2(w));
        int best = 1;
        for (int k = 2; k <= n; ++k) {
          if (col >= binom2(k)) best = k;
        }
        EXPECT_EQ(best, w);
      }
    }
  }
}

TEST(Scores, VCAtMostOrder) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + trial % 9;
    const ColoredBoard b = oracle::random_board(rng, n);
    const Outcome o = vc_score(b);
    EXPECT_LE(o.a + o.b, n);
  }
}

TEST(Scores, RangesByKind) {
  std::mt19937 rng(78);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + trial % 8;
    const ColoredBoard b = oracle::random_board(rng, n);
    for (GameKind k : kAllKinds) {
      const Outcome o = score(b, k);
      EXPECT_GE(o.a, 0);
      EXPECT_GE(o.b, 0);
      EXPECT_LE(o.a, score_bound(k, b));
      EXPECT_LE(o.b, score_bound(k, b));
    }
  }
}

TEST(Objective, Examples) {
  EXPECT_EQ(objective({0, 0}, 5), 0);
  EXPECT_EQ(objective({2, 1}, 3), 6);
  EXPECT_EQ(objective({1, 0}, 3), 5);
  EXPECT_GT(objective({2, 1}, 3), objective({1, 0}, 3));
  EXPECT_GT(objective({2, 2}, 5), objective({3, 4}, 5));
}

TEST(Objective, LexicographicExhaustive) {
  for (int n = 0; n <= 10; ++n) {
    for (int a1 = 0; a1 <= n; ++a1) {
      for (int b1 = 0; b1 <= n; ++b1) {
        const Value f1 = objective({a1, b1}, n);
        EXPECT_EQ(decode_objective(f1, n), (Outcome{a1, b1}));
        for (int a2 = 0; a2 <= n; ++a2) {
          for (int b2 = 0; b2 <= n; ++b2) {
            const Value f2 = objective({a2, b2}, n);
            const auto lhs = std::make_pair(a1 - b1, a1);
            const auto rhs = std::make_pair(a2 - b2, a2);
            EXPECT_EQ(f1 < f2, lhs < rhs);
            EXPECT_EQ(f1 == f2, lhs == rhs);
          }
        }
      }
    }
  }
}

TEST(Objective, DecodesLargeBounds) {
  for (int bound : {21, 28}) {
    for (int a = 0; a <= bound; ++a) {
      for (int b = 0; b <= bound; ++b) {
        EXPECT_EQ(decode_objective(objective({a, b}, bound), bound), (Outcome{a, b}));
      }
    }
  }
}

TEST(Winner, Conventions) {
  EXPECT_EQ(winner({3, 3}, {1, 1}), Winner::P2);
  EXPECT_EQ(winner({3, 2}, {1, 1}), Winner::P1);
  EXPECT_EQ(winner({2, 3}, {1, 3}), Winner::P2);
  EXPECT_EQ(winner({3, 2}, {1, 3}), Winner::P1);
  EXPECT_EQ(winner({3, 3}, {1, 3}), Winner::P1);
  EXPECT_EQ(winner({3, 3}, {2, 1}), Winner::P2);
  EXPECT_EQ(winner({3, 2}, {2, 1}), Winner::P1);
}
