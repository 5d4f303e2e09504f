#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <concepts>
#include <cstdint>
#include <exception>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "graphgame/graph.hpp"
#include "graphgame/scoring.hpp"
#include "graphgame/solver.hpp"

namespace graphgame {

struct TraceStep {
  Player mover = Player::P1;
  EdgeId edge;
  Colour colour = Colour::Red;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Counterexample {
  std::vector<TraceStep> trace;
  Outcome outcome;
  std::string reason;
};

struct StrategyReport {
  bool verified = false;
  std::uint64_t lines_checked = 0;
  std::optional<Counterexample> counterexample;
};

// One "P1 3 R" line per ply, then "outcome a=.. b=..".
inline std::string to_text(const Counterexample& c) {
  std::string out;
  for (const TraceStep& s : c.trace) {
    out += s.mover == Player::P1 ? "P1 " : "P2 ";
    out += std::to_string(s.edge.index);
    out += s.colour == Colour::Red ? " R\n" : " B\n";
  }
  out += "outcome a=" + std::to_string(c.outcome.a) +
         " b=" + std::to_string(c.outcome.b);
  if (!c.reason.empty()) out += " (" + c.reason + ")";
  out += "\n";
  return out;
}

enum class Phase : std::uint8_t { Initial, Finishing, Case1, Case2, Case3 };

// Bookkeeping for the (1,3) clique strategy. Labelled vertices other than
// the specials come in opposite pairs (v_i, v_{i+k}), stored as partners.
// Don't-care padding edges are remembered and never label a vertex.
struct StrategyMemory {
  int n = 0;
  std::array<int, kMaxOrder> partner{};
  std::uint16_t labelled = 0;
  std::uint64_t padding = 0;  // edge mask
  Phase phase = Phase::Initial;
  // Special vertices; -1 while unused.
  int x = -1;
  int y = -1;
  int a = -1;
  int b = -1;
  int c = -1;
  int ell = -1;  // Case 1: labelled endpoint of the transition edge

  explicit StrategyMemory(int order) : n(order) { partner.fill(-1); }

  bool is_labelled(Vertex v) const { return (labelled >> v) & 1U; }
  bool is_paired(Vertex v) const { return partner[v] >= 0; }
  bool is_abc(Vertex v) const { return v == a || v == b || v == c; }
  bool is_xy(Vertex v) const { return v == x || v == y; }

  void label(Vertex v) { labelled = static_cast<std::uint16_t>(labelled | (1U << v)); }

  void pair(Vertex v, Vertex w) {
    partner[v] = w;
    partner[w] = v;
    label(v);
    label(w);
  }

  std::vector<Vertex> unlabelled() const {
    std::vector<Vertex> out;
    for (int v = 0; v < n; ++v) {
      if (!is_labelled(v)) out.push_back(v);
    }
    return out;
  }
};

namespace detail {

// Prescribed response edges; skips pairs already coloured or listed.
class Response {
 public:
  explicit Response(const ColoredBoard& board) : board_(board) {}

  void add(Vertex u, Vertex v) {
    if (u < 0 || v < 0 || u == v) return;
    const EdgeId e = colex_index(u, v);
    if (board_.state(e) != EdgeState::Uncolored) return;
    if (std::find(edges_.begin(), edges_.end(), e) != edges_.end()) return;
    edges_.push_back(e);
  }

  bool empty() const { return edges_.empty(); }
  std::size_t size() const { return edges_.size(); }

  void keep_lowest(std::size_t count) {
    std::sort(edges_.begin(), edges_.end());
    if (edges_.size() > count) edges_.resize(count);
  }

  // Tops up with the lowest free edges until min(quota, free) edges.
  std::vector<EdgeId> padded(int quota) && {
    const int free_edges = board_.count(EdgeState::Uncolored);
    const auto want = static_cast<std::size_t>(std::min(quota, free_edges));
    for (int e = 0; e < board_.pair_count() && edges_.size() < want; ++e) {
      const EdgeId id{e};
      if (board_.state(id) == EdgeState::Uncolored &&
          std::find(edges_.begin(), edges_.end(), id) == edges_.end()) {
        edges_.push_back(id);
      }
    }
    if (edges_.size() > want) {
      throw ConsistencyError("strategy prescribed more edges than its quota");
    }
    return std::move(edges_);
  }

 private:
  const ColoredBoard& board_;
  std::vector<EdgeId> edges_;
};

// Vertices meeting a coloured edge outside `skip` (an edge mask).
inline std::uint16_t touched_vertices(const ColoredBoard& board,
                                      std::uint64_t skip) {
  std::uint16_t out = 0;
  for (int e = 0; e < board.pair_count(); ++e) {
    const EdgeState s = board.state(EdgeId{e});
    if (s != EdgeState::Red && s != EdgeState::Blue) continue;
    if ((skip >> e) & 1U) continue;
    auto [u, v] = edge_endpoints(EdgeId{e});
    out = static_cast<std::uint16_t>(out | (1U << u) | (1U << v));
  }
  return out;
}

// Alice took v_i v_j between labelled vertices: answer with the three edges
// mirroring it across the pairing.
inline void mirror(Response& r, const StrategyMemory& m, Vertex s, Vertex t) {
  r.add(s, m.partner[t]);
  r.add(m.partner[s], m.partner[t]);
  r.add(t, m.partner[s]);
}

// Colour {a,b,c} x {first}; when that is exhausted, {a,b,c} x {second}.
inline void abc_towards(Response& r, const StrategyMemory& m, Vertex first,
                        Vertex second) {
  r.add(m.a, first);
  r.add(m.b, first);
  r.add(m.c, first);
  if (r.empty()) {
    r.add(m.a, second);
    r.add(m.b, second);
    r.add(m.c, second);
  }
}

inline void lowest_two_others(const StrategyMemory& m, Vertex skip1,
                              Vertex skip2, Vertex& first, Vertex& second) {
  first = second = -1;
  for (int v = 0; v < m.n; ++v) {
    if (m.is_labelled(v) || v == skip1 || v == skip2) continue;
    if (first < 0) {
      first = v;
    } else {
      second = v;
      return;
    }
  }
}

[[noreturn]] inline void unexpected_edge(Vertex s, Vertex t) {
  throw ConsistencyError("strategy has no rule for edge (" + std::to_string(s) +
                         "," + std::to_string(t) + ")");
}

}  // namespace detail

// Bob's answer in the (1,3) clique game to Alice colouring `alice_edge`
// (already red on `board`). Even orders pair vertices up and finish on the
// last two; odd orders switch to one of three endgames on the last three or
// five unlabelled vertices. Updates `mem`.
inline std::vector<EdgeId> bob13_respond(StrategyMemory& mem,
                                         const ColoredBoard& board,
                                         EdgeId alice_edge) {
  if (board.order() != mem.n) {
    throw ConsistencyError("strategy memory is for another order");
  }
  if (board.state(alice_edge) != EdgeState::Red) {
    throw ConsistencyError("Alice's edge is not red on the board");
  }
  const std::uint16_t touched = detail::touched_vertices(
      board, mem.padding | (std::uint64_t{1} << alice_edge.index));
  if ((touched & ~mem.labelled) != 0) {
    throw ConsistencyError("coloured edge at an unlabelled vertex");
  }
  auto [s, t] = edge_endpoints(alice_edge);
  detail::Response r(board);
  const bool ls = mem.is_labelled(s);
  const bool lt = mem.is_labelled(t);

  switch (mem.phase) {
    case Phase::Initial: {
      const auto free = mem.unlabelled();
      const int count = static_cast<int>(free.size());
      const bool odd = mem.n % 2 == 1;
      if (odd && count == 3 && (!ls || !lt)) {
        auto others = [&](Vertex p, Vertex q) {
          std::vector<Vertex> rest;
          for (Vertex v : free) {
            if (v != p && v != q) rest.push_back(v);
          }
          return rest;
        };
        if (!ls && !lt) {
          mem.a = std::min(s, t);
          mem.b = std::max(s, t);
          mem.c = others(s, t).front();
          r.add(mem.a, mem.c);
          r.add(mem.b, mem.c);
          mem.phase = Phase::Case2;
        } else {
          mem.a = ls ? t : s;
          mem.ell = ls ? s : t;
          const auto rest = others(mem.a, -1);
          mem.b = rest[0];
          mem.c = rest[1];
          r.add(mem.a, mem.b);
          r.add(mem.a, mem.c);
          r.add(mem.b, mem.c);
          mem.phase = Phase::Case1;
        }
        for (Vertex v : free) mem.label(v);
      } else if (odd && count == 5 && !ls && !lt) {
        mem.x = std::min(s, t);
        mem.y = std::max(s, t);
        std::vector<Vertex> rest;
        for (Vertex v : free) {
          if (v != s && v != t) rest.push_back(v);
        }
        mem.a = rest[0];
        mem.b = rest[1];
        mem.c = rest[2];
        r.add(mem.a, mem.b);
        r.add(mem.a, mem.c);
        r.add(mem.b, mem.c);
        for (Vertex v : free) mem.label(v);
        mem.phase = Phase::Case3;
      } else if (!ls && !lt) {
        const Vertex lo = std::min(s, t);
        const Vertex hi = std::max(s, t);
        Vertex lo_mate = -1;
        Vertex hi_mate = -1;
        detail::lowest_two_others(mem, lo, hi, lo_mate, hi_mate);
        if (hi_mate < 0) throw ConsistencyError("too few unlabelled vertices");
        mem.pair(lo, lo_mate);
        mem.pair(hi, hi_mate);
        r.add(lo, lo_mate);
        r.add(lo_mate, hi_mate);
        r.add(hi, hi_mate);
      } else if (ls != lt) {
        const Vertex old = ls ? s : t;
        const Vertex fresh = ls ? t : s;
        Vertex mate = -1;
        Vertex unused = -1;
        detail::lowest_two_others(mem, fresh, -1, mate, unused);
        if (mate < 0) throw ConsistencyError("too few unlabelled vertices");
        mem.pair(fresh, mate);
        r.add(mem.partner[old], mate);
        r.add(fresh, mate);
      } else {
        detail::mirror(r, mem, s, t);
      }
      if (!odd && mem.phase == Phase::Initial) {
        const auto left = mem.unlabelled();
        if (left.size() == 2) {
          mem.x = left[0];
          mem.y = left[1];
          mem.label(mem.x);
          mem.label(mem.y);
          mem.phase = Phase::Finishing;
        }
      }
      break;
    }
    case Phase::Finishing: {
      if (mem.is_xy(s) && mem.is_xy(t)) {
        // xy: nothing prescribed.
      } else if (s == mem.x || t == mem.x) {
        const Vertex v = s == mem.x ? t : s;
        r.add(mem.x, mem.partner[v]);
        r.add(mem.y, v);
        r.add(mem.y, mem.partner[v]);
      } else if (s == mem.y || t == mem.y) {
        const Vertex v = s == mem.y ? t : s;
        r.add(mem.x, v);
        r.add(mem.x, mem.partner[v]);
        r.add(mem.y, mem.partner[v]);
      } else {
        detail::mirror(r, mem, s, t);
      }
      break;
    }
    case Phase::Case1: {
      if (mem.is_paired(s) && mem.is_paired(t)) {
        detail::mirror(r, mem, s, t);
      } else if (mem.is_abc(s) != mem.is_abc(t)) {
        const Vertex v = mem.is_abc(s) ? t : s;
        if (!mem.is_paired(v)) detail::unexpected_edge(s, t);
        if (v == mem.ell || v == mem.partner[mem.ell]) {
          // Optional answers; the lowest three at most.
          for (Vertex d : {mem.a, mem.b, mem.c}) {
            r.add(d, mem.ell);
            r.add(d, mem.partner[mem.ell]);
          }
          r.keep_lowest(3);
        } else {
          detail::abc_towards(r, mem, mem.partner[v], v);
        }
      } else {
        detail::unexpected_edge(s, t);
      }
      break;
    }
    case Phase::Case2: {
      if (mem.is_paired(s) && mem.is_paired(t)) {
        detail::mirror(r, mem, s, t);
      } else if (mem.is_abc(s) != mem.is_abc(t)) {
        const Vertex d = mem.is_abc(s) ? s : t;
        const Vertex v = d == s ? t : s;
        if (!mem.is_paired(v)) detail::unexpected_edge(s, t);
        const Vertex pv = mem.partner[v];
        if (d == mem.a) {
          r.add(mem.b, v);
          r.add(mem.b, pv);
          r.add(mem.c, pv);
        } else if (d == mem.b) {
          r.add(mem.a, v);
          r.add(mem.a, pv);
          r.add(mem.c, pv);
        } else {
          r.add(mem.a, pv);
          r.add(mem.b, pv);
          r.add(mem.c, pv);
        }
      } else {
        detail::unexpected_edge(s, t);
      }
      break;
    }
    case Phase::Case3: {
      if (mem.is_paired(s) && mem.is_paired(t)) {
        detail::mirror(r, mem, s, t);
      } else if ((mem.is_abc(s) && mem.is_paired(t)) ||
                 (mem.is_abc(t) && mem.is_paired(s))) {
        const Vertex v = mem.is_paired(s) ? s : t;
        detail::abc_towards(r, mem, mem.partner[v], v);
      } else if ((mem.is_xy(s) && mem.is_paired(t)) ||
                 (mem.is_xy(t) && mem.is_paired(s))) {
        const Vertex v = mem.is_paired(s) ? s : t;
        for (Vertex z : {mem.x, mem.y}) {
          r.add(z, v);
          r.add(z, mem.partner[v]);
        }
      } else if ((mem.is_abc(s) && mem.is_xy(t)) ||
                 (mem.is_abc(t) && mem.is_xy(s))) {
        const Vertex z = mem.is_xy(s) ? s : t;
        const Vertex other_z = z == mem.x ? mem.y : mem.x;
        detail::abc_towards(r, mem, other_z, z);
      } else {
        detail::unexpected_edge(s, t);
      }
      break;
    }
  }
  const std::size_t prescribed = r.size();
  auto out = std::move(r).padded(3);
  for (std::size_t i = prescribed; i < out.size(); ++i) {
    mem.padding |= std::uint64_t{1} << out[i].index;
  }
  return out;
}

// Bob's answer in the (1,2) games: the vertices are split into U, V, W of
// size k (plus x, y when n = 3k+1 or 3k+2), the edges into triples
// {u_i u_j, v_i v_j, w_i w_j}, {u_i v_i, u_i w_i, v_i w_i},
// {u_i v_j, v_i w_j, w_i u_j} and {z u_i, z v_i, z w_i} for z in {x, y};
// Bob takes the rest of the triple Alice touched. The edge xy belongs to no
// triple and gets don't-care answers.
inline std::vector<EdgeId> bob12_respond(const ColoredBoard& board,
                                         EdgeId alice_edge) {
  const int n = board.order();
  if (n < 3) throw PreconditionError("the (1,2) strategy needs n >= 3");
  if (board.state(alice_edge) != EdgeState::Red) {
    throw ConsistencyError("Alice's edge is not red on the board");
  }
  const int k = n / 3;
  struct Slot {
    int cls;  // 0,1,2 for U,V,W; 3 for x; 4 for y
    int idx;
  };
  auto slot = [&](Vertex v) {
    return v < 3 * k ? Slot{v / k, v % k} : Slot{3 + (v - 3 * k), 0};
  };
  auto vertex = [&](int cls, int idx) { return cls * k + idx; };
  auto [s, t] = edge_endpoints(alice_edge);
  Slot p = slot(s);
  Slot q = slot(t);
  std::vector<std::pair<Vertex, Vertex>> triple;
  if (p.cls < 3 && q.cls < 3) {
    if (p.cls == q.cls) {
      for (int c = 0; c < 3; ++c) {
        triple.emplace_back(vertex(c, p.idx), vertex(c, q.idx));
      }
    } else if (p.idx == q.idx) {
      triple = {{vertex(0, p.idx), vertex(1, p.idx)},
                {vertex(0, p.idx), vertex(2, p.idx)},
                {vertex(1, p.idx), vertex(2, p.idx)}};
    } else {
      if ((q.cls - p.cls + 3) % 3 != 1) std::swap(p, q);
      const int i = p.idx;
      const int j = q.idx;
      triple = {{vertex(0, i), vertex(1, j)},
                {vertex(1, i), vertex(2, j)},
                {vertex(2, i), vertex(0, j)}};
    }
  } else if (p.cls < 3 || q.cls < 3) {
    const Slot g = p.cls < 3 ? p : q;
    const Vertex z = p.cls < 3 ? t : s;
    for (int c = 0; c < 3; ++c) triple.emplace_back(z, vertex(c, g.idx));
  }
  // else: xy, no triple

  detail::Response r(board);
  bool covered = triple.empty();
  for (auto [u, v] : triple) {
    if (colex_index(u, v) == alice_edge) {
      covered = true;
      continue;
    }
    r.add(u, v);
  }
  if (!covered) throw ConsistencyError("edge is not covered by its triple");
  return std::move(r).padded(2);
}

template <class S>
concept Responder = std::copy_constructible<S> &&
    requires(S s, const ColoredBoard& b, EdgeId e) {
  { s.respond(b, e) } -> std::same_as<std::vector<EdgeId>>;
  { S::kQuota } -> std::convertible_to<int>;
};

class Bob13Strategy {
 public:
  static constexpr int kQuota = 3;

  explicit Bob13Strategy(int n) : mem_(n) {
    if (n < 4) throw PreconditionError("the (1,3) strategy needs n >= 4");
  }

  std::vector<EdgeId> respond(const ColoredBoard& b, EdgeId e) {
    return bob13_respond(mem_, b, e);
  }

  // Labelled vertices are exactly those with a coloured edge other than
  // padding, plus x and y once the even endgame starts; every pair is
  // joined by a blue edge.
  bool coherent(const ColoredBoard& b) const {
    std::uint16_t expect = detail::touched_vertices(b, mem_.padding);
    if (mem_.phase == Phase::Finishing) {
      expect = static_cast<std::uint16_t>(expect | (1U << mem_.x) | (1U << mem_.y));
    }
    if (expect != mem_.labelled) return false;
    for (int v = 0; v < mem_.n; ++v) {
      const int w = mem_.partner[v];
      if (w < 0) continue;
      if (mem_.partner[w] != v || b.state(v, w) != EdgeState::Blue) return false;
    }
    return true;
  }

  const StrategyMemory& memory() const { return mem_; }

 private:
  StrategyMemory mem_;
};

class Bob12Strategy {
 public:
  static constexpr int kQuota = 2;

  std::vector<EdgeId> respond(const ColoredBoard& b, EdgeId e) {
    return bob12_respond(b, e);
  }
};

// Bob's side of the mirror argument for VC(n), n = 1 mod 4: after Alice's
// first edge uv, play the remaining K_{n-2} as its first player using a
// solved sub-game, and answer ux/vx with the other edge of the pair.
class VcMirrorStrategy {
 public:
  static constexpr int kQuota = 1;

  explicit VcMirrorStrategy(int n) : n_(n) {
    if (n < 5 || n % 4 != 1) {
      throw PreconditionError("mirror strategy needs n = 1 mod 4, n >= 5");
    }
    GameSpec sub;
    sub.base = complete_board(n - 2);
    sub.kind = GameKind::VC;
    SolveOptions options;
    options.retain_layers = true;
    sub_ = std::make_shared<const SolvedLayers>(
        std::move(*solve(sub, options).solved));
  }

  std::vector<EdgeId> respond(const ColoredBoard& b, EdgeId e) {
    auto [s, t] = edge_endpoints(e);
    if (u_ < 0) {
      u_ = s;
      v_ = t;
      return {sub_move(b)};
    }
    if (s == u_ || s == v_ || t == u_ || t == v_) {
      const Vertex pole = (s == u_ || t == u_) ? u_ : v_;
      const Vertex other_pole = pole == u_ ? v_ : u_;
      const Vertex x = s == pole ? t : s;
      const EdgeId twin = colex_index(other_pole, x);
      if (b.state(twin) != EdgeState::Uncolored) {
        throw ConsistencyError("paired edge already coloured");
      }
      return {twin};
    }
    return {sub_move(b)};
  }

  const SolvedLayers& sub_game() const { return *sub_; }

 private:
  // Bob is the first player of the sub-game, so colours swap.
  EdgeId sub_move(const ColoredBoard& b) const {
    std::vector<Vertex> inner;
    for (int w = 0; w < n_; ++w) {
      if (w != u_ && w != v_) inner.push_back(w);
    }
    const int m = n_ - 2;
    ColoredBoard sub = complete_board(m);
    int coloured = 0;
    for (int i = 1; i < m; ++i) {
      for (int j = 0; j < i; ++j) {
        const EdgeState s = b.state(inner[i], inner[j]);
        if (s == EdgeState::Red) {
          sub = sub.with(colex_index(i, j), EdgeState::Blue);
          ++coloured;
        } else if (s == EdgeState::Blue) {
          sub = sub.with(colex_index(i, j), EdgeState::Red);
          ++coloured;
        }
      }
    }
    const EdgeId e = best_move(sub, coloured, *sub_);
    auto [i, j] = edge_endpoints(e);
    return colex_index(inner[i], inner[j]);
  }

  int n_;
  Vertex u_ = -1;
  Vertex v_ = -1;
  std::shared_ptr<const SolvedLayers> sub_;
};

namespace detail {

template <Responder S, class Win, class Check>
class Verifier {
 public:
  Verifier(const GameSpec& spec, Win win, Check check)
      : spec_(spec), win_(std::move(win)), check_(std::move(check)) {}

  StrategyReport run(const S& strategy) {
    walk(start_board(spec_), strategy);
    report_.verified = !report_.counterexample;
    return report_;
  }

  // Only the lines opening with Alice's edge `first`.
  StrategyReport run_first(const S& strategy, EdgeId first) {
    walk_move(start_board(spec_), strategy, first);
    report_.verified = !report_.counterexample;
    return report_;
  }

 private:
  void fail(const ColoredBoard& b, std::string reason) {
    Counterexample c;
    c.trace = trace_;
    c.outcome = score(b, spec_.kind);
    c.reason = std::move(reason);
    report_.counterexample = std::move(c);
  }

  void walk(const ColoredBoard& board, const S& strategy) {
    const auto free_edges = board.edges_in(EdgeState::Uncolored);
    if (free_edges.empty()) {
      ++report_.lines_checked;
      const Outcome o = score(board, spec_.kind);
      if (!win_(o)) {
        fail(board, "predicate failed");
      } else if constexpr (!std::is_same_v<Check, std::nullptr_t>) {
        if (!check_(board, strategy)) fail(board, "terminal check failed");
      }
      return;
    }
    for (EdgeId e : free_edges) {
      walk_move(board, strategy, e);
      if (report_.counterexample) return;
    }
  }

  void walk_move(const ColoredBoard& board, const S& strategy, EdgeId e) {
    ColoredBoard b = board.with(e, EdgeState::Red);
    trace_.push_back({Player::P1, e, Colour::Red});
    S next = strategy;
    std::vector<EdgeId> reply;
    try {
      reply = next.respond(b, e);
    } catch (const GameError& err) {
      fail(b, err.what());
      return;
    }
    const auto want = static_cast<std::size_t>(
        std::min(S::kQuota, b.count(EdgeState::Uncolored)));
    if (reply.size() != want) {
      fail(b, "reply has " + std::to_string(reply.size()) + " edges, quota " +
                  std::to_string(want));
      return;
    }
    for (EdgeId f : reply) {
      if (f.index < 0 || f.index >= b.pair_count() ||
          b.state(f) != EdgeState::Uncolored) {
        trace_.push_back({Player::P2, f, Colour::Blue});
        fail(b, "illegal reply edge " + std::to_string(f.index));
        return;
      }
      b = b.with(f, EdgeState::Blue);
      trace_.push_back({Player::P2, f, Colour::Blue});
    }
    if constexpr (requires { next.coherent(b); }) {
      if (!next.coherent(b)) {
        fail(b, "strategy memory out of step with the board");
        return;
      }
    }
    walk(b, next);
    if (report_.counterexample) return;
    trace_.resize(trace_.size() - 1 - reply.size());
  }

  const GameSpec& spec_;
  Win win_;
  Check check_;
  std::vector<TraceStep> trace_;
  StrategyReport report_;
};

}  // namespace detail

// Plays `strategy` as player 2 against every sequence of single-edge
// player 1 moves and checks `win` on every final outcome. `check`, when
// given, also sees each final board with the strategy state. With several
// threads each opening move is its own task; the reported counterexample is
// the one under the lowest failing opening either way.
template <Responder S, class Win, class Check = std::nullptr_t>
StrategyReport verify_strategy(const S& strategy, const GameSpec& spec, Win win,
                               Check check = nullptr, int threads = 1) {
  if (spec.bias.p != 1 || spec.bias.q != S::kQuota) {
    throw PreconditionError("strategy quota does not match the game bias");
  }
  if (threads <= 1) {
    detail::Verifier<S, Win, Check> verifier(spec, std::move(win),
                                             std::move(check));
    return verifier.run(strategy);
  }
  const auto openings = start_board(spec).edges_in(EdgeState::Uncolored);
  std::vector<StrategyReport> parts(openings.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < openings.size();) {
          detail::Verifier<S, Win, Check> verifier(spec, win, check);
          parts[i] = verifier.run_first(strategy, openings[i]);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
        next = openings.size();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  StrategyReport out;
  for (auto& part : parts) {
    out.lines_checked += part.lines_checked;
    if (part.counterexample) {
      out.counterexample = std::move(part.counterexample);
      break;
    }
  }
  out.verified = !out.counterexample;
  return out;
}

// The counting step behind the even-order clique strategy, on a final
// board: for every red clique V1 of r >= 2 paired vertices, at most r-1 red
// edges join V1 to its mirror image V2.
inline bool mirror_structure_holds(const ColoredBoard& board,
                                   const StrategyMemory& mem) {
  std::uint16_t paired = 0;
  for (int v = 0; v < mem.n; ++v) {
    if (mem.is_paired(v)) paired = static_cast<std::uint16_t>(paired | (1U << v));
  }
  const auto red = detail::colour_adjacency(board, Colour::Red);
  bool ok = true;
  for (int r = 2; r <= std::popcount(static_cast<unsigned>(paired)) && ok; ++r) {
    detail::for_each_clique(red, paired, 0, r, [&](std::uint16_t v1) {
      std::uint16_t v2 = 0;
      for (std::uint16_t c = v1; c != 0; c &= c - 1) {
        v2 = static_cast<std::uint16_t>(v2 | (1U << mem.partner[std::countr_zero(c)]));
      }
      int crossing = 0;
      for (std::uint16_t c = v1; c != 0; c &= c - 1) {
        crossing += std::popcount(static_cast<unsigned>(red[std::countr_zero(c)] & v2));
      }
      if ((v1 & v2) != 0 || crossing > r - 1) ok = false;
    });
  }
  return ok;
}

inline GameSpec biased_spec(int n, GameKind kind, Bias bias) {
  GameSpec spec;
  spec.base = complete_board(n);
  spec.kind = kind;
  spec.bias = bias;
  return spec;
}

// Exhaustive check of the mirror strategy on VC(n); Bob must never end
// behind. Only n = 5 is small enough to enumerate.
inline StrategyReport vc_mirror_report(int n) {
  if (n % 4 != 1 || n < 5) {
    throw PreconditionError("mirror strategy needs n = 1 mod 4, n >= 5");
  }
  if (n > 5) {
    throw CapacityError("exhaustive mirror verification is limited to n = 5");
  }
  return verify_strategy(VcMirrorStrategy(n),
                         biased_spec(n, GameKind::VC, Bias{1, 1}),
                         [](const Outcome& o) { return o.a <= o.b; });
}

inline bool verify_vc_mirror(int n) { return vc_mirror_report(n).verified; }

}  // namespace graphgame
