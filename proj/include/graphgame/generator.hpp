#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstring>
#include <exception>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <thread>
#include <vector>

#include "graphgame/canonical.hpp"
#include "graphgame/graph.hpp"

namespace graphgame {

struct Schedule {
  int p = 1;
  int q = 1;
};

inline Player mover_at(int ply, const Schedule& s) {
  return ply % (s.p + s.q) < s.p ? Player::P1 : Player::P2;
}

// Keys are stored narrowed to 64 bits whenever the board has at most 32
// pairs (order 8 and below); the canonical key is top-aligned so the low
// half is then zero.
template <class Key>
inline constexpr int kKeyPairs = static_cast<int>(sizeof(Key)) * 4;

template <class Key>
Key narrow_key(Bits128 k) {
  if constexpr (sizeof(Key) == sizeof(Bits128)) {
    return k;
  } else {
    return static_cast<Key>(k >> 64);
  }
}

template <class Key>
Bits128 widen_key(Key k) {
  if constexpr (sizeof(Key) == sizeof(Bits128)) {
    return k;
  } else {
    return Bits128{k} << 64;
  }
}

// All non-isomorphic positions with a fixed number of coloured edges.
template <class Key>
struct BasicLayer {
  int order = 0;
  int ply = 0;
  std::vector<Key> keys;  // sorted canonical keys

  std::size_t size() const { return keys.size(); }

  ColoredBoard board(std::size_t i) const {
    return board_of_key(widen_key(keys[i]), order);
  }

  std::optional<std::size_t> find(Key k) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), k);
    if (it == keys.end() || *it != k) return std::nullopt;
    return static_cast<std::size_t>(it - keys.begin());
  }
};

using Layer = BasicLayer<Bits128>;

struct GenerateOptions {
  int threads = 1;
  // Upper bound on positions held across all layers.
  std::size_t max_states = 150'000'000;
  std::function<void(int ply, std::size_t size)> on_layer;
};

namespace detail {

// Runs body(begin, end) over [0, count) in blocks on `threads` workers.
template <class Body>
void parallel_blocks(std::size_t count, int threads, Body&& body) {
  constexpr std::size_t kBlock = 2048;
  if (threads <= 1 || count <= kBlock) {
    for (std::size_t b = 0; b < count; b += kBlock) {
      body(b, std::min(count, b + kBlock), 0);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (;;) {
          const std::size_t b = next.fetch_add(kBlock);
          if (b >= count) break;
          body(b, std::min(count, b + kBlock), t);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Sorted, duplicate-free accumulator that bounds its scratch buffer.
template <class Key>
class KeySet {
 public:
  void add(Key k) {
    pending_.push_back(k);
    if (pending_.size() >= kFlush) flush();
  }

  void absorb(KeySet& other) {
    other.flush();
    flush();
    merge_in(other.sorted_);
    other.sorted_.clear();
    other.sorted_.shrink_to_fit();
  }

  std::vector<Key> take() {
    flush();
    return std::move(sorted_);
  }

  std::size_t approx_size() const { return sorted_.size() + pending_.size(); }

 private:
  static constexpr std::size_t kFlush = std::size_t{1} << 22;

  void flush() {
    if (pending_.empty()) return;
    std::sort(pending_.begin(), pending_.end());
    pending_.erase(std::unique(pending_.begin(), pending_.end()),
                   pending_.end());
    merge_in(pending_);
    pending_.clear();
  }

  void merge_in(const std::vector<Key>& more) {
    if (sorted_.empty()) {
      sorted_ = more;
      return;
    }
    std::vector<Key> merged;
    merged.reserve(sorted_.size() + more.size());
    std::set_union(sorted_.begin(), sorted_.end(), more.begin(), more.end(),
                   std::back_inserter(merged));
    sorted_.swap(merged);
  }

  std::vector<Key> sorted_;
  std::vector<Key> pending_;
};

}  // namespace detail

// Children of b reached by one move of `mover`, one per isomorphism class.
// Each representative is a child in b's own labelling.
inline std::map<CanonicalForm, ColoredBoard> successors(const ColoredBoard& b,
                                                        Player mover) {
  std::map<CanonicalForm, ColoredBoard> out;
  const EdgeState colour = state_of(colour_of(mover));
  for (EdgeId e : b.edges_in(EdgeState::Uncolored)) {
    ColoredBoard child = b.with(e, colour);
    out.try_emplace(canonical_form(child), child);
  }
  return out;
}

// Layer t+1 from layer t: every move of the mover at ply t, deduplicated by
// canonical key.
template <class Key>
BasicLayer<Key> expand_layer(const BasicLayer<Key>& layer,
                             const Schedule& schedule, int threads) {
  const EdgeState colour = state_of(colour_of(mover_at(layer.ply, schedule)));
  const int workers = std::max(1, threads);
  std::vector<detail::KeySet<Key>> found(static_cast<std::size_t>(workers));
  detail::parallel_blocks(
      layer.size(), workers, [&](std::size_t begin, std::size_t end, int w) {
        auto& sink = found[static_cast<std::size_t>(w)];
        for (std::size_t i = begin; i < end; ++i) {
          const ColoredBoard b = layer.board(i);
          for (EdgeId e : move_representatives(b)) {
            sink.add(narrow_key<Key>(canonical_key(b.with(e, colour))));
          }
        }
      });
  for (std::size_t w = 1; w < found.size(); ++w) found[0].absorb(found[w]);
  BasicLayer<Key> next;
  next.order = layer.order;
  next.ply = layer.ply + 1;
  next.keys = found[0].take();
  return next;
}

template <class Key>
std::vector<BasicLayer<Key>> generate_layers(const GameSpec& spec,
                                             const GenerateOptions& options) {
  const ColoredBoard root = start_board(spec);
  if (root.pair_count() > kKeyPairs<Key>) {
    throw CapacityError("key type too narrow for this board");
  }
  const Schedule schedule{spec.bias.p, spec.bias.q};
  const int plies = root.count(EdgeState::Uncolored);
  std::vector<BasicLayer<Key>> layers;
  layers.reserve(static_cast<std::size_t>(plies) + 1);
  BasicLayer<Key> first;
  first.order = root.order();
  first.ply = 0;
  first.keys.push_back(narrow_key<Key>(canonical_key(root)));
  layers.push_back(std::move(first));
  if (options.on_layer) options.on_layer(0, 1);
  std::size_t total = 1;
  for (int t = 0; t < plies; ++t) {
    layers.push_back(expand_layer(layers.back(), schedule, options.threads));
    total += layers.back().size();
    if (options.on_layer) options.on_layer(t + 1, layers.back().size());
    if (total > options.max_states) {
      throw CapacityError("state budget of " +
                          std::to_string(options.max_states) +
                          " positions exceeded at ply " +
                          std::to_string(t + 1));
    }
  }
  return layers;
}

inline std::vector<Layer> build_layers(const GameSpec& spec,
                                       const GenerateOptions& options = {}) {
  return generate_layers<Bits128>(spec, options);
}

// Layer dump: "GGLAYER1", then little-endian u32 order, u32 ply, u64 count,
// then `count` records of encode(board), sorted by those bytes.
inline void write_layer_dump(std::ostream& out, const Layer& layer) {
  std::vector<std::vector<std::uint8_t>> records;
  records.reserve(layer.size());
  for (std::size_t i = 0; i < layer.size(); ++i) {
    records.push_back(encode(layer.board(i)));
  }
  std::sort(records.begin(), records.end());
  auto put = [&](std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) {
      out.put(static_cast<char>((v >> (8 * i)) & 0xff));
    }
  };
  out.write("GGLAYER1", 8);
  put(static_cast<std::uint64_t>(layer.order), 4);
  put(static_cast<std::uint64_t>(layer.ply), 4);
  put(records.size(), 8);
  for (const auto& r : records) {
    out.write(reinterpret_cast<const char*>(r.data()),
              static_cast<std::streamsize>(r.size()));
  }
}

inline Layer read_layer_dump(std::istream& in) {
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, "GGLAYER1", 8) != 0) {
    throw FormatError("not a layer dump");
  }
  auto get = [&](int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
      const int c = in.get();
      if (c == std::char_traits<char>::eof()) {
        throw FormatError("truncated layer dump header");
      }
      v |= static_cast<std::uint64_t>(c) << (8 * i);
    }
    return v;
  };
  Layer layer;
  layer.order = static_cast<int>(get(4));
  layer.ply = static_cast<int>(get(4));
  const std::uint64_t count = get(8);
  if (layer.order < 1 || layer.order > kMaxOrder) {
    throw FormatError("layer dump order out of range");
  }
  const std::size_t width =
      static_cast<std::size_t>((2 * binom2(layer.order) + 7) / 8);
  std::vector<std::uint8_t> record(width);
  layer.keys.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!in.read(reinterpret_cast<char*>(record.data()),
                 static_cast<std::streamsize>(width))) {
      throw FormatError("truncated layer dump");
    }
    layer.keys.push_back(key_of(decode(record, layer.order)));
  }
  std::sort(layer.keys.begin(), layer.keys.end());
  return layer;
}

}  // namespace graphgame
