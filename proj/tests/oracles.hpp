#pragma once

// Brute-force reference implementations. They only read boards through
// state(u, v) and never touch the library's search code.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "graphgame/graph.hpp"
#include "graphgame/scoring.hpp"

namespace oracle {

using graphgame::ColoredBoard;
using graphgame::Colour;
using graphgame::EdgeState;

// State codes in colex order after moving vertex v to perm[v].
inline std::vector<int> relabelled(const ColoredBoard& b,
                                   const std::vector<int>& perm) {
  const int n = b.order();
  std::vector<int> out(static_cast<std::size_t>(n * (n - 1) / 2));
  for (int u = 1; u < n; ++u) {
    for (int v = 0; v < u; ++v) {
      const int pu = std::max(perm[u], perm[v]);
      const int pv = std::min(perm[u], perm[v]);
      out[static_cast<std::size_t>(pu * (pu - 1) / 2 + pv)] =
          static_cast<int>(b.state(u, v));
    }
  }
  return out;
}

inline std::vector<int> identity(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool isomorphic(const ColoredBoard& a, const ColoredBoard& b) {
  if (a.order() != b.order()) return false;
  const auto target = relabelled(b, identity(b.order()));
  auto perm = identity(a.order());
  do {
    if (relabelled(a, perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Lexicographically least relabelled code vector.
inline std::vector<int> canonical_codes(const ColoredBoard& b) {
  auto perm = identity(b.order());
  std::vector<int> best = relabelled(b, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    best = std::min(best, relabelled(b, perm));
  }
  return best;
}

// Number of isomorphism classes by pairwise permutation search.
inline int class_count(const std::vector<ColoredBoard>& boards) {
  std::vector<ColoredBoard> reps;
  for (const auto& b : boards) {
    bool fresh = true;
    for (const auto& r : reps) {
      if (isomorphic(b, r)) {
        fresh = false;
        break;
      }
    }
    if (fresh) reps.push_back(b);
  }
  return static_cast<int>(reps.size());
}

inline std::vector<std::vector<int>> automorphisms(const ColoredBoard& b) {
  std::vector<std::vector<int>> out;
  const auto self = relabelled(b, identity(b.order()));
  auto perm = identity(b.order());
  do {
    if (relabelled(b, perm) == self) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Orbits of present pairs under the automorphism group, as sorted edge lists.
inline std::set<std::vector<int>> edge_orbits(const ColoredBoard& b) {
  const int n = b.order();
  const auto group = automorphisms(b);
  std::set<std::vector<int>> out;
  for (int u = 1; u < n; ++u) {
    for (int v = 0; v < u; ++v) {
      if (b.state(u, v) == EdgeState::Absent) continue;
      std::set<int> orbit;
      for (const auto& g : group) {
        const int a = std::max(g[u], g[v]);
        const int c = std::min(g[u], g[v]);
        orbit.insert(a * (a - 1) / 2 + c);
      }
      out.insert(std::vector<int>(orbit.begin(), orbit.end()));
    }
  }
  return out;
}

inline bool has_colour(const ColoredBoard& b, int u, int v, Colour c) {
  return b.state(u, v) == graphgame::state_of(c);
}

// Largest vertex subset with every pair in colour c; at least 1 for n >= 1.
inline int clique_number(const ColoredBoard& b, Colour c) {
  const int n = b.order();
  int best = n > 0 ? 1 : 0;
  for (unsigned mask = 1; mask < (1U << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool ok = true;
    for (int u = 0; u < n && ok; ++u) {
      for (int v = 0; v < u && ok; ++v) {
        if ((mask >> u & 1U) && (mask >> v & 1U)) ok = has_colour(b, u, v, c);
      }
    }
    if (ok) best = size;
  }
  return best;
}

inline int max_degree(const ColoredBoard& b, Colour c) {
  int best = 0;
  for (int u = 0; u < b.order(); ++u) {
    int d = 0;
    for (int v = 0; v < b.order(); ++v) d += u != v && has_colour(b, u, v, c);
    best = std::max(best, d);
  }
  return best;
}

inline graphgame::Outcome captured(const ColoredBoard& b) {
  graphgame::Outcome o;
  for (int u = 0; u < b.order(); ++u) {
    int red = 0, blue = 0;
    for (int v = 0; v < b.order(); ++v) {
      if (u == v) continue;
      red += has_colour(b, u, v, Colour::Red);
      blue += has_colour(b, u, v, Colour::Blue);
    }
    o.a += red > blue;
    o.b += blue > red;
  }
  return o;
}

// Does the graph on the first m colex pairs embed (not necessarily induced)
// into colour c? Plain backtracking over injective vertex maps.
inline bool colex_embeds(const ColoredBoard& b, Colour c, int m) {
  int order = 2;
  while (order * (order - 1) / 2 < m) ++order;
  if (order > b.order()) return false;
  std::vector<std::pair<int, int>> pattern;
  for (int u = 1; u < order; ++u) {
    for (int v = 0; v < u; ++v) {
      if (static_cast<int>(pattern.size()) < m) pattern.emplace_back(u, v);
    }
  }
  // colex order lists pairs by larger endpoint, matching the loop above
  std::vector<int> image(static_cast<std::size_t>(order), -1);
  std::vector<bool> used(static_cast<std::size_t>(b.order()), false);
  auto place = [&](auto&& self, int k) -> bool {
    if (k == order) return true;
    for (int w = 0; w < b.order(); ++w) {
      if (used[w]) continue;
      bool ok = true;
      for (auto [u, v] : pattern) {
        if (u == k && !has_colour(b, w, image[v], c)) ok = false;
      }
      if (!ok) continue;
      used[w] = true;
      image[k] = w;
      if (self(self, k + 1)) return true;
      used[w] = false;
    }
    return false;
  };
  return place(place, 0);
}

inline int colex_number(const ColoredBoard& b, Colour c) {
  int edges = 0;
  for (int u = 1; u < b.order(); ++u) {
    for (int v = 0; v < u; ++v) edges += has_colour(b, u, v, c);
  }
  for (int m = edges; m >= 1; --m) {
    if (colex_embeds(b, c, m)) return m;
  }
  return 0;
}

inline graphgame::Outcome score(const ColoredBoard& b, graphgame::GameKind k) {
  using graphgame::GameKind;
  switch (k) {
    case GameKind::Clique:
      return {clique_number(b, Colour::Red), clique_number(b, Colour::Blue)};
    case GameKind::Star:
      return {max_degree(b, Colour::Red), max_degree(b, Colour::Blue)};
    case GameKind::VC:
      return captured(b);
    case GameKind::Colex:
      return {colex_number(b, Colour::Red), colex_number(b, Colour::Blue)};
  }
  return {};
}

// Random board: each pair absent / uncoloured / blue / red.
inline ColoredBoard random_board(std::mt19937& rng, int n) {
  ColoredBoard b(n);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int e = 0; e < b.pair_count(); ++e) {
    b = b.with(graphgame::EdgeId{e}, static_cast<EdgeState>(pick(rng)));
  }
  return b;
}

inline std::vector<int> random_perm(std::mt19937& rng, int n) {
  auto p = identity(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Present edges reach every vertex (depth-first search on a matrix).
inline bool connected_spanning(const ColoredBoard& b) {
  const int n = b.order();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      if (v != u && !seen[static_cast<std::size_t>(v)] &&
          b.state(u, v) != graphgame::EdgeState::Absent) {
        seen[static_cast<std::size_t>(v)] = true;
        stack.push_back(v);
      }
    }
  }
  return std::find(seen.begin(), seen.end(), false) == seen.end();
}

}  // namespace oracle
