#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <string_view>

#include "graphgame/graph.hpp"

namespace graphgame {

struct Outcome {
  int a = 0;  // player 1
  int b = 0;  // player 2

  int score() const { return a - b; }

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

enum class Winner : std::uint8_t { P1, P2 };

inline std::string_view to_string(Winner w) {
  return w == Winner::P1 ? "P1" : "P2";
}

using Value = std::int32_t;

namespace detail {

using Adjacency = std::array<std::uint16_t, kMaxOrder>;

inline Adjacency colour_adjacency(const ColoredBoard& b, Colour c) {
  return b.masks().mask[static_cast<int>(state_of(c))];
}

// Branch and bound over candidate bitsets with a greedy colouring bound.
inline void expand_clique(const Adjacency& adj, std::uint16_t candidates,
                          int size, int& best) {
  if (candidates == 0) {
    best = std::max(best, size);
    return;
  }
  // Colour classes of the candidates give an upper bound on what can be added.
  int colours = 0;
  for (std::uint16_t rest = candidates; rest != 0; ++colours) {
    std::uint16_t pool = rest;
    while (pool != 0) {
      const int v = std::countr_zero(pool);
      rest = static_cast<std::uint16_t>(rest & ~(1U << v));
      pool = static_cast<std::uint16_t>(pool & ~(1U << v) & ~adj[v]);
    }
  }
  if (size + colours <= best) return;
  while (candidates != 0) {
    if (size + std::popcount(static_cast<unsigned>(candidates)) <= best) return;
    const int v = std::countr_zero(candidates);
    candidates = static_cast<std::uint16_t>(candidates & ~(1U << v));
    expand_clique(adj, static_cast<std::uint16_t>(candidates & adj[v]),
                  size + 1, best);
  }
}

inline int clique_number(const Adjacency& adj, int n) {
  int best = n > 0 ? 1 : 0;
  expand_clique(adj, static_cast<std::uint16_t>((1U << n) - 1), 0, best);
  return best;
}

// Calls f(mask) for every clique of exactly `size` vertices.
template <class F>
void for_each_clique(const Adjacency& adj, std::uint16_t candidates,
                     std::uint16_t chosen, int size, F&& f) {
  if (size == 0) {
    f(chosen);
    return;
  }
  while (std::popcount(static_cast<unsigned>(candidates)) >= size) {
    const int v = std::countr_zero(candidates);
    candidates = static_cast<std::uint16_t>(candidates & ~(1U << v));
    for_each_clique(adj, static_cast<std::uint16_t>(candidates & adj[v]),
                    static_cast<std::uint16_t>(chosen | (1U << v)), size - 1,
                    f);
  }
}

}  // namespace detail

// Clique number of the spanning subgraph formed by colour c. A colour class
// without edges still spans single vertices, so the minimum is 1.
inline int clique_score(const ColoredBoard& b, Colour c) {
  return detail::clique_number(detail::colour_adjacency(b, c), b.order());
}

inline int star_score(const ColoredBoard& b, Colour c) {
  const auto adj = detail::colour_adjacency(b, c);
  int best = 0;
  for (int v = 0; v < b.order(); ++v) {
    best = std::max(best, std::popcount(static_cast<unsigned>(adj[v])));
  }
  return best;
}

// A vertex is captured by the colour holding strictly more of its edges.
inline Outcome vc_score(const ColoredBoard& b) {
  const StateMasks m = b.masks();
  Outcome o;
  for (int v = 0; v < b.order(); ++v) {
    const int red = std::popcount(static_cast<unsigned>(m.of(EdgeState::Red, v)));
    const int blue =
        std::popcount(static_cast<unsigned>(m.of(EdgeState::Blue, v)));
    o.a += red > blue;
    o.b += blue > red;
  }
  return o;
}

// Largest m such that the Colex graph C(m) = K_w plus a vertex joined to r < w
// clique vertices is a subgraph of colour c. With w the clique number, the
// answer is C(w,2) plus the best r over all w-cliques.
inline int colex_score(const ColoredBoard& b, Colour c) {
  const auto adj = detail::colour_adjacency(b, c);
  const int n = b.order();
  const int w = detail::clique_number(adj, n);
  if (w < 2) return 0;
  int extra = 0;
  const auto all = static_cast<std::uint16_t>((1U << n) - 1);
  detail::for_each_clique(adj, all, 0, w, [&](std::uint16_t clique) {
    for (std::uint16_t out = all & ~clique; out != 0; out &= out - 1) {
      const int v = std::countr_zero(out);
      extra = std::max(
          extra, std::popcount(static_cast<unsigned>(adj[v] & clique)));
    }
  });
  return binom2(w) + extra;
}

inline Outcome score(const ColoredBoard& b, GameKind kind) {
  switch (kind) {
    case GameKind::Clique:
      return {clique_score(b, Colour::Red), clique_score(b, Colour::Blue)};
    case GameKind::Star:
      return {star_score(b, Colour::Red), star_score(b, Colour::Blue)};
    case GameKind::VC:
      return vc_score(b);
    case GameKind::Colex:
      return {colex_score(b, Colour::Red), colex_score(b, Colour::Blue)};
  }
  return {};
}

// Largest score either player can reach on board b in the given game.
inline int score_bound(GameKind kind, const ColoredBoard& b) {
  return kind == GameKind::Colex ? b.present_count() : b.order();
}

// f = (C+1)a - Cb with C = bound+1: orders outcomes by s = a-b, then by a.
inline Value objective(const Outcome& o, int bound) {
  const Value c = bound + 1;
  return (c + 1) * o.a - c * o.b;
}

// Inverse of objective for 0 <= a <= bound.
inline Outcome decode_objective(Value f, int bound) {
  const Value c = bound + 1;
  Value s = f / c;
  if (f % c < 0) --s;  // floor division
  const Value a = f - c * s;
  return {a, a - s};
}

// Equal quotas: P1 needs a > b. Unequal quotas: the side with the larger
// quota needs to finish strictly ahead.
inline Winner winner(const Outcome& o, const Bias& bias) {
  if (bias.p == bias.q) return o.a > o.b ? Winner::P1 : Winner::P2;
  if (bias.q > bias.p) return o.b > o.a ? Winner::P2 : Winner::P1;
  return o.a > o.b ? Winner::P1 : Winner::P2;
}

}  // namespace graphgame
