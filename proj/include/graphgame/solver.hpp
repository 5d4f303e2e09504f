#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "graphgame/canonical.hpp"
#include "graphgame/generator.hpp"
#include "graphgame/graph.hpp"
#include "graphgame/scoring.hpp"

namespace graphgame {

struct SolveOptions {
  int threads = 1;
  bool retain_layers = false;
  std::size_t max_states = GenerateOptions{}.max_states;
  std::function<void(int ply, std::size_t size)> on_layer;
};

// Every layer of a solved game with the objective value of each entry.
struct SolvedLayers {
  GameKind kind = GameKind::Clique;
  Schedule schedule;
  int bound = 0;
  std::vector<Layer> layers;
  std::vector<std::vector<Value>> values;

  std::optional<Value> value_of(const ColoredBoard& b, int ply) const {
    if (ply < 0 || ply >= static_cast<int>(layers.size())) return std::nullopt;
    const auto& layer = layers[static_cast<std::size_t>(ply)];
    const auto i = layer.find(canonical_key(b));
    if (!i) return std::nullopt;
    return values[static_cast<std::size_t>(ply)][*i];
  }
};

struct SolveResult {
  Outcome outcome;
  Winner winner = Winner::P2;
  Value value = 0;
  int bound = 0;
  std::vector<std::size_t> layer_sizes;
  std::optional<SolvedLayers> solved;
};

namespace detail {

using Stored = std::int16_t;

template <class Key>
std::vector<SolveResult> solve_layers(const GameSpec& spec,
                                      std::span<const GameKind> kinds,
                                      const SolveOptions& options) {
  GenerateOptions gen;
  gen.threads = options.threads;
  gen.max_states = options.max_states;
  gen.on_layer = options.on_layer;
  std::vector<BasicLayer<Key>> layers = generate_layers<Key>(spec, gen);
  const Schedule schedule{spec.bias.p, spec.bias.q};
  const std::size_t nk = kinds.size();
  std::vector<int> bounds;
  for (GameKind k : kinds) bounds.push_back(score_bound(k, spec.base));

  std::vector<std::size_t> sizes;
  for (const auto& l : layers) sizes.push_back(l.size());

  // values[t][k * size + i]
  std::vector<std::vector<Stored>> values(layers.size());
  const std::size_t last = layers.size() - 1;
  values[last].resize(layers[last].size() * nk);
  parallel_blocks(layers[last].size(), options.threads,
                  [&](std::size_t begin, std::size_t end, int) {
                    for (std::size_t i = begin; i < end; ++i) {
                      const ColoredBoard b = layers[last].board(i);
                      for (std::size_t k = 0; k < nk; ++k) {
                        values[last][k * layers[last].size() + i] =
                            static_cast<Stored>(
                                objective(score(b, kinds[k]), bounds[k]));
                      }
                    }
                  });

  std::vector<std::optional<SolvedLayers>> kept(nk);
  if (options.retain_layers) {
    for (std::size_t k = 0; k < nk; ++k) {
      kept[k].emplace();
      kept[k]->kind = kinds[k];
      kept[k]->schedule = schedule;
      kept[k]->bound = bounds[k];
      kept[k]->layers.resize(layers.size());
      kept[k]->values.resize(layers.size());
    }
  }
  auto keep = [&](std::size_t t) {
    if (!options.retain_layers) return;
    const auto& l = layers[t];
    for (std::size_t k = 0; k < nk; ++k) {
      Layer wide;
      wide.order = l.order;
      wide.ply = l.ply;
      wide.keys.reserve(l.size());
      for (Key key : l.keys) wide.keys.push_back(widen_key(key));
      kept[k]->layers[t] = std::move(wide);
      kept[k]->values[t].assign(values[t].begin() + static_cast<std::ptrdiff_t>(k * l.size()),
                                values[t].begin() + static_cast<std::ptrdiff_t>((k + 1) * l.size()));
    }
  };
  keep(last);

  for (std::size_t t = last; t-- > 0;) {
    const auto& here = layers[t];
    const auto& next = layers[t + 1];
    const bool maximise = mover_at(static_cast<int>(t), schedule) == Player::P1;
    const EdgeState colour =
        state_of(colour_of(mover_at(static_cast<int>(t), schedule)));
    values[t].resize(here.size() * nk);
    parallel_blocks(
        here.size(), options.threads,
        [&](std::size_t begin, std::size_t end, int) {
          std::vector<Stored> best(nk);
          for (std::size_t i = begin; i < end; ++i) {
            const ColoredBoard b = here.board(i);
            std::fill(best.begin(), best.end(),
                      maximise ? std::numeric_limits<Stored>::min()
                               : std::numeric_limits<Stored>::max());
            for (EdgeId e : move_representatives(b)) {
              const auto j =
                  next.find(narrow_key<Key>(canonical_key(b.with(e, colour))));
              if (!j) throw ConsistencyError("child missing from next layer");
              for (std::size_t k = 0; k < nk; ++k) {
                const Stored v = values[t + 1][k * next.size() + *j];
                best[k] = maximise ? std::max(best[k], v) : std::min(best[k], v);
              }
            }
            for (std::size_t k = 0; k < nk; ++k) {
              values[t][k * here.size() + i] = best[k];
            }
          }
        });
    keep(t);
    values[t + 1].clear();
    values[t + 1].shrink_to_fit();
    layers[t + 1].keys.clear();
    layers[t + 1].keys.shrink_to_fit();
  }

  std::vector<SolveResult> out(nk);
  for (std::size_t k = 0; k < nk; ++k) {
    out[k].value = values[0][k];
    out[k].bound = bounds[k];
    out[k].outcome = decode_objective(out[k].value, bounds[k]);
    out[k].winner = winner(out[k].outcome, spec.bias);
    out[k].layer_sizes = sizes;
    out[k].solved = std::move(kept[k]);
  }
  return out;
}

}  // namespace detail

// Solves the base/start/bias of `spec` for several scoring rules at once;
// the position layers are shared. spec.kind is ignored.
inline std::vector<SolveResult> solve_kinds(const GameSpec& spec,
                                            std::span<const GameKind> kinds,
                                            const SolveOptions& options = {}) {
  validate(spec);
  if (spec.base.present_count() == 0) {
    throw DegenerateBoardError("base graph has no edges");
  }
  if (spec.base.pair_count() <= kKeyPairs<std::uint64_t>) {
    return detail::solve_layers<std::uint64_t>(spec, kinds, options);
  }
  return detail::solve_layers<Bits128>(spec, kinds, options);
}

inline SolveResult solve(const GameSpec& spec,
                         const SolveOptions& options = {}) {
  const GameKind kinds[] = {spec.kind};
  return std::move(solve_kinds(spec, kinds, options).front());
}

// A value-preserving move for the side to move at `ply`. Ties go to the
// edge whose canonical image has the lowest index.
inline EdgeId best_move(const ColoredBoard& b, int ply,
                        const SolvedLayers& solved) {
  if (b.is_full()) throw PreconditionError("no move on a full board");
  const auto target = solved.value_of(b, ply);
  if (!target) throw ConsistencyError("position not found in solved layers");
  const CanonicalLabelling lab = canonical_labelling(b);
  std::vector<std::pair<int, EdgeId>> order;
  for (EdgeId e : b.edges_in(EdgeState::Uncolored)) {
    auto [u, v] = edge_endpoints(e);
    order.emplace_back(colex_index(lab.position[u], lab.position[v]).index, e);
  }
  std::sort(order.begin(), order.end());
  const EdgeState colour = state_of(colour_of(mover_at(ply, solved.schedule)));
  for (auto [image, e] : order) {
    const auto v = solved.value_of(b.with(e, colour), ply + 1);
    if (!v) throw ConsistencyError("child not found in solved layers");
    if (*v == *target) return e;
  }
  throw ConsistencyError("no child attains the position value");
}

inline constexpr int kNaiveMaxEdges = 16;

// Plain minimax over labelled boards with an exact-position memo: no
// isomorphism reduction and no layering.
inline Outcome naive_minimax(const GameSpec& spec) {
  const ColoredBoard root = start_board(spec);
  if (root.count(EdgeState::Uncolored) > kNaiveMaxEdges) {
    throw CapacityError("naive minimax is limited to " +
                        std::to_string(kNaiveMaxEdges) + " free edges");
  }
  const Schedule schedule{spec.bias.p, spec.bias.q};
  const int bound = score_bound(spec.kind, spec.base);
  const int start_coloured = static_cast<int>(spec.start.size());
  struct Hash {
    std::size_t operator()(Bits128 k) const {
      const auto lo = static_cast<std::uint64_t>(k);
      const auto hi = static_cast<std::uint64_t>(k >> 64);
      return std::hash<std::uint64_t>{}(lo * 0x9e3779b97f4a7c15ULL ^ hi);
    }
  };
  std::unordered_map<Bits128, Value, Hash> memo;
  std::function<Value(const ColoredBoard&)> value = [&](const ColoredBoard& b) {
    if (auto it = memo.find(b.codes()); it != memo.end()) return it->second;
    Value v;
    const auto free_edges = b.edges_in(EdgeState::Uncolored);
    if (free_edges.empty()) {
      v = objective(score(b, spec.kind), bound);
    } else {
      const int coloured = b.count(EdgeState::Red) + b.count(EdgeState::Blue);
      const Player p = mover_at(coloured - start_coloured, schedule);
      v = p == Player::P1 ? std::numeric_limits<Value>::min()
                          : std::numeric_limits<Value>::max();
      for (EdgeId e : free_edges) {
        const Value c = value(b.with(e, state_of(colour_of(p))));
        v = p == Player::P1 ? std::max(v, c) : std::min(v, c);
      }
    }
    memo.emplace(b.codes(), v);
    return v;
  };
  return decode_objective(value(root), bound);
}

}  // namespace graphgame
