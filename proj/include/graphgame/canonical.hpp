#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "graphgame/graph.hpp"

namespace graphgame {

// Canonical keys hold the 2-bit state codes of a relabelled board in colex
// order, pair 0 in the two most significant bits. Comparing keys as
// unsigned integers compares the code sequences lexicographically.
inline constexpr int key_shift(int edge) { return 126 - 2 * edge; }

inline Bits128 key_of(const ColoredBoard& b) {
  Bits128 key = 0;
  for (int e = 0; e < b.pair_count(); ++e) {
    key |= Bits128{static_cast<std::uint8_t>(b.state(EdgeId{e}))}
           << key_shift(e);
  }
  return key;
}

inline ColoredBoard board_of_key(Bits128 key, int n) {
  Bits128 codes = 0;
  for (int e = 0; e < binom2(n); ++e) {
    codes |= ((key >> key_shift(e)) & 3U) << (2 * e);
  }
  return ColoredBoard::from_codes(n, codes);
}

struct CanonicalForm {
  std::vector<std::uint8_t> bytes;

  friend auto operator<=>(const CanonicalForm&,
                          const CanonicalForm&) = default;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

struct CanonicalLabelling {
  Bits128 key = 0;
  // position[v] is the canonical label of vertex v.
  std::array<int, kMaxOrder> position{};
};

struct OrbitPartition {
  // Classes ordered by their smallest edge; members ascending.
  std::vector<std::vector<EdgeId>> classes;

  int class_of(EdgeId e) const {
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (std::binary_search(classes[i].begin(), classes[i].end(), e)) {
        return static_cast<int>(i);
      }
    }
    return -1;
  }
};

// Orders at which the search is guaranteed to stay fast; boards up to
// kMaxOrder still work.
inline constexpr int kCanonicalOrderBound = kMaxOrder;

namespace detail {

// Ordered vertex partition. Cells are vertex masks; while the leading cells
// are singletons, cell i sits at canonical position i.
struct Partition {
  std::array<std::uint16_t, kMaxOrder> cells{};
  int count = 0;
};

// Twin classes: u ~ w iff swapping u and w is an automorphism, i.e. they
// agree on every other vertex. Returns the smallest member per vertex.
inline std::array<std::int8_t, kMaxOrder> twin_classes(const StateMasks& m) {
  std::array<std::int8_t, kMaxOrder> rep{};
  for (int v = 0; v < m.n; ++v) rep[v] = static_cast<std::int8_t>(v);
  for (int u = 0; u < m.n; ++u) {
    if (rep[u] != u) continue;
    for (int w = u + 1; w < m.n; ++w) {
      if (rep[w] != w) continue;
      const auto drop = static_cast<std::uint16_t>(~((1U << u) | (1U << w)));
      bool same = true;
      for (int s = 0; s < 4 && same; ++s) {
        same = (m.mask[s][u] & drop) == (m.mask[s][w] & drop);
      }
      if (same) rep[w] = static_cast<std::int8_t>(u);
    }
  }
  return rep;
}

// Individualisation-refinement search for the lexicographically least code
// sequence over all relabellings compatible with the initial partition.
class CanonSearch {
 public:
  explicit CanonSearch(const ColoredBoard& b)
      : n_(b.order()), masks_(b.masks()), twin_(twin_classes(masks_)) {
    for (int u = 0; u < n_; ++u) {
      for (int v = 0; v < n_; ++v) {
        code_[u][v] = u == v ? 0 : static_cast<std::uint8_t>(b.state(u, v));
      }
    }
  }

  CanonicalLabelling run(Partition start) {
    have_best_ = false;
    search(start, 0, 0);
    CanonicalLabelling out;
    out.key = best_;
    for (int i = 0; i < n_; ++i) out.position[best_order_[i]] = i;
    return out;
  }

  static Partition unit_partition(int n) {
    Partition p;
    p.cells[0] = static_cast<std::uint16_t>((1U << n) - 1);
    p.count = 1;
    return p;
  }

 private:
  std::uint16_t signature(int v, std::uint16_t cell) const {
    const int c1 = std::popcount(
        static_cast<unsigned>(masks_.mask[1][v] & cell));
    const int c2 = std::popcount(
        static_cast<unsigned>(masks_.mask[2][v] & cell));
    const int c3 = std::popcount(
        static_cast<unsigned>(masks_.mask[3][v] & cell));
    return static_cast<std::uint16_t>(c1 | (c2 << 4) | (c3 << 8));
  }

  // Splits cells until every cell is uniform with respect to every cell.
  void refine(Partition& p) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int w = 0; w < p.count; ++w) {
        const std::uint16_t splitter = p.cells[w];
        for (int i = 0; i < p.count; ++i) {
          const std::uint16_t cell = p.cells[i];
          if (std::has_single_bit(cell)) continue;
          std::array<std::uint32_t, kMaxOrder> sig{};
          int k = 0;
          bool uniform = true;
          for (std::uint16_t c = cell; c != 0; c &= c - 1) {
            const int v = std::countr_zero(c);
            sig[k] = (std::uint32_t{signature(v, splitter)} << 8) |
                     static_cast<std::uint32_t>(v);
            if (k > 0 && (sig[k] >> 8) != (sig[0] >> 8)) uniform = false;
            ++k;
          }
          if (uniform) continue;
          std::sort(sig.begin(), sig.begin() + k);
          std::array<std::uint16_t, kMaxOrder> parts{};
          int groups = 0;
          for (int j = 0; j < k; ++j) {
            if (j == 0 || (sig[j] >> 8) != (sig[j - 1] >> 8)) ++groups;
            parts[groups - 1] |=
                static_cast<std::uint16_t>(1U << (sig[j] & 0xff));
          }
          for (int j = p.count - 1; j > i; --j) p.cells[j + groups - 1] = p.cells[j];
          for (int j = 0; j < groups; ++j) p.cells[i + j] = parts[j];
          p.count += groups - 1;
          i += groups - 1;
          changed = true;
        }
      }
    }
  }

  void search(Partition p, int known, Bits128 prefix) {
    refine(p);
    int j = known;
    while (j < p.count && std::has_single_bit(p.cells[j])) {
      const int v = std::countr_zero(p.cells[j]);
      order_[j] = v;
      const int base = binom2(j);
      for (int b = 0; b < j; ++b) {
        prefix |= Bits128{code_[v][order_[b]]} << key_shift(base + b);
      }
      ++j;
    }
    if (have_best_) {
      const int bits = 2 * binom2(j);
      const Bits128 mask = bits == 0 ? Bits128{0} : ~Bits128{0} << (128 - bits);
      const Bits128 mine = prefix & mask;
      const Bits128 theirs = best_ & mask;
      if (mine > theirs) return;
      if (j == n_) {
        if (mine < theirs) take(prefix);
        return;
      }
    } else if (j == n_) {
      take(prefix);
      return;
    }
    const std::uint16_t cell = p.cells[j];
    std::uint16_t tried = 0;
    for (std::uint16_t c = cell; c != 0; c &= c - 1) {
      const int v = std::countr_zero(c);
      const auto cls = static_cast<std::uint16_t>(1U << twin_[v]);
      if ((tried & cls) != 0) continue;
      tried |= cls;
      Partition q = p;
      for (int i = q.count - 1; i > j; --i) q.cells[i + 1] = q.cells[i];
      q.cells[j] = static_cast<std::uint16_t>(1U << v);
      q.cells[j + 1] = static_cast<std::uint16_t>(cell & ~(1U << v));
      ++q.count;
      search(q, j, prefix);
    }
  }

  void take(Bits128 key) {
    have_best_ = true;
    best_ = key;
    best_order_ = order_;
  }

  int n_;
  StateMasks masks_;
  std::array<std::int8_t, kMaxOrder> twin_;
  std::array<std::array<std::uint8_t, kMaxOrder>, kMaxOrder> code_{};
  std::array<int, kMaxOrder> order_{};
  std::array<int, kMaxOrder> best_order_{};
  Bits128 best_ = 0;
  bool have_best_ = false;
};

}  // namespace detail

inline CanonicalLabelling canonical_labelling(const ColoredBoard& b) {
  detail::CanonSearch search(b);
  return search.run(detail::CanonSearch::unit_partition(b.order()));
}

inline Bits128 canonical_key(const ColoredBoard& b) {
  return canonical_labelling(b).key;
}

// Canonical key of b with the listed vertices individualised in order.
inline Bits128 rooted_canonical_key(const ColoredBoard& b,
                                    std::span<const Vertex> roots) {
  detail::Partition p;
  std::uint16_t rest = static_cast<std::uint16_t>((1U << b.order()) - 1);
  for (Vertex v : roots) {
    p.cells[p.count++] = static_cast<std::uint16_t>(1U << v);
    rest = static_cast<std::uint16_t>(rest & ~(1U << v));
  }
  if (rest != 0) p.cells[p.count++] = rest;
  detail::CanonSearch search(b);
  return search.run(p).key;
}

inline CanonicalForm canonical_form(const ColoredBoard& b) {
  return CanonicalForm{encode(board_of_key(canonical_key(b), b.order()))};
}

inline bool is_isomorphic(const ColoredBoard& a, const ColoredBoard& b) {
  if (a.order() != b.order()) {
    throw DimensionError("boards of different order");
  }
  return canonical_key(a) == canonical_key(b);
}

// Exact edge orbits of the coloured board's automorphism group: two present
// edges share a class iff their rooted canonical forms coincide.
inline OrbitPartition edge_orbits(const ColoredBoard& b) {
  std::map<Bits128, std::size_t> slot;
  OrbitPartition out;
  for (int e = 0; e < b.pair_count(); ++e) {
    const EdgeId id{e};
    if (b.state(id) == EdgeState::Absent) continue;
    auto [u, v] = edge_endpoints(id);
    const std::array<Vertex, 2> fwd{u, v};
    const std::array<Vertex, 2> rev{v, u};
    const Bits128 key =
        std::min(rooted_canonical_key(b, fwd), rooted_canonical_key(b, rev));
    auto [it, fresh] = slot.try_emplace(key, out.classes.size());
    if (fresh) out.classes.emplace_back();
    out.classes[it->second].push_back(id);
  }
  return out;
}

// Uncoloured edges with at most one representative per pair of twin
// classes. Colouring two edges with the same twin-class pair gives
// isomorphic boards, so the rest can be skipped.
inline std::vector<EdgeId> move_representatives(const ColoredBoard& b) {
  const StateMasks m = b.masks();
  const auto twin = detail::twin_classes(m);
  std::array<std::array<bool, kMaxOrder>, kMaxOrder> seen{};
  std::vector<EdgeId> out;
  for (int e = 0; e < b.pair_count(); ++e) {
    if (b.state(EdgeId{e}) != EdgeState::Uncolored) continue;
    int a = twin[detail::kEdges.hi[e]];
    int c = twin[detail::kEdges.lo[e]];
    if (a < c) std::swap(a, c);
    if (seen[a][c]) continue;
    seen[a][c] = true;
    out.push_back(EdgeId{e});
  }
  return out;
}

}  // namespace graphgame
