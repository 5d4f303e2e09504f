#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <span>
#include <utility>
#include <vector>

#include "graphgame/errors.hpp"

namespace graphgame {

using Vertex = int;
using Bits128 = unsigned __int128;

// Largest supported order. 2 * C(11,2) = 110 bits, so a whole board fits in
// one 128-bit word.
inline constexpr int kMaxOrder = 11;

constexpr int binom2(int n) { return n < 2 ? 0 : n * (n - 1) / 2; }

inline constexpr int kMaxEdges = binom2(kMaxOrder);

// Colex position of an unordered vertex pair.
struct EdgeId {
  int index = 0;

  constexpr EdgeId() = default;
  constexpr explicit EdgeId(int i) : index(i) {}

  friend constexpr auto operator<=>(EdgeId, EdgeId) = default;
};

// The 2-bit codes double as enumerator values.
enum class EdgeState : std::uint8_t {
  Absent = 0b00,
  Uncolored = 0b01,
  Blue = 0b10,
  Red = 0b11,
};

enum class Colour : std::uint8_t { Red, Blue };

enum class Player : std::uint8_t { P1, P2 };

constexpr EdgeState state_of(Colour c) {
  return c == Colour::Red ? EdgeState::Red : EdgeState::Blue;
}

constexpr Colour colour_of(Player p) {
  return p == Player::P1 ? Colour::Red : Colour::Blue;
}

constexpr Player other(Player p) {
  return p == Player::P1 ? Player::P2 : Player::P1;
}

inline EdgeId colex_index(Vertex u, Vertex v) {
  if (u == v || u < 0 || v < 0) {
    throw InvalidEdgeError("invalid edge (" + std::to_string(u) + "," +
                           std::to_string(v) + ")");
  }
  if (u < v) std::swap(u, v);
  return EdgeId{binom2(u) + v};
}

// Inverse of colex_index, larger endpoint first.
constexpr std::pair<Vertex, Vertex> edge_endpoints(EdgeId e) {
  int hi = 1;
  while (binom2(hi + 1) <= e.index) ++hi;
  return {hi, e.index - binom2(hi)};
}

namespace detail {

struct EdgeTable {
  std::array<std::uint8_t, kMaxEdges> hi{};
  std::array<std::uint8_t, kMaxEdges> lo{};
  std::array<std::array<std::int8_t, kMaxOrder>, kMaxOrder> id{};

  constexpr EdgeTable() {
    for (int e = 0; e < kMaxEdges; ++e) {
      auto [u, v] = edge_endpoints(EdgeId{e});
      hi[e] = static_cast<std::uint8_t>(u);
      lo[e] = static_cast<std::uint8_t>(v);
    }
    for (int u = 0; u < kMaxOrder; ++u) {
      for (int v = 0; v < kMaxOrder; ++v) {
        id[u][v] = u == v ? -1
                          : static_cast<std::int8_t>(u > v ? binom2(u) + v
                                                           : binom2(v) + u);
      }
    }
  }
};

inline constexpr EdgeTable kEdges{};

}  // namespace detail

// Per-vertex adjacency masks, one set per edge state. Bit w of
// mask[s][v] is set iff the pair {v,w} is in state s (v itself excluded).
struct StateMasks {
  int n = 0;
  std::array<std::array<std::uint16_t, kMaxOrder>, 4> mask{};

  std::uint16_t of(EdgeState s, Vertex v) const {
    return mask[static_cast<int>(s)][v];
  }
};

// Dense board on vertices 0..n-1: every vertex pair carries one of the four
// edge states. Value type; moves produce new boards.
class ColoredBoard {
 public:
  ColoredBoard() = default;

  // All pairs Absent.
  explicit ColoredBoard(int n) : n_(static_cast<std::uint8_t>(n)) {
    if (n < 1 || n > kMaxOrder) {
      throw CapacityError("board order " + std::to_string(n) +
                          " outside 1.." + std::to_string(kMaxOrder));
    }
  }

  static ColoredBoard from_codes(int n, Bits128 codes) {
    ColoredBoard b(n);
    b.codes_ = codes;
    return b;
  }

  int order() const { return n_; }
  int pair_count() const { return binom2(n_); }
  Bits128 codes() const { return codes_; }

  EdgeState state(EdgeId e) const {
    return static_cast<EdgeState>((codes_ >> (2 * e.index)) & 3U);
  }
  EdgeState state(Vertex u, Vertex v) const {
    return state(EdgeId{detail::kEdges.id[u][v]});
  }

  ColoredBoard with(EdgeId e, EdgeState s) const {
    ColoredBoard b = *this;
    const int shift = 2 * e.index;
    b.codes_ = (b.codes_ & ~(Bits128{3} << shift)) |
               (Bits128{static_cast<std::uint8_t>(s)} << shift);
    return b;
  }

  int count(EdgeState s) const {
    int c = 0;
    for (int e = 0; e < pair_count(); ++e) c += state(EdgeId{e}) == s;
    return c;
  }
  int present_count() const { return pair_count() - count(EdgeState::Absent); }
  bool is_full() const { return count(EdgeState::Uncolored) == 0; }

  std::vector<EdgeId> edges_in(EdgeState s) const {
    std::vector<EdgeId> out;
    for (int e = 0; e < pair_count(); ++e) {
      if (state(EdgeId{e}) == s) out.push_back(EdgeId{e});
    }
    return out;
  }

  StateMasks masks() const {
    StateMasks m;
    m.n = n_;
    for (int e = 0; e < pair_count(); ++e) {
      const int s = static_cast<int>(state(EdgeId{e}));
      const int u = detail::kEdges.hi[e];
      const int v = detail::kEdges.lo[e];
      m.mask[s][u] |= static_cast<std::uint16_t>(1U << v);
      m.mask[s][v] |= static_cast<std::uint16_t>(1U << u);
    }
    return m;
  }

  // Board with vertex v moved to position perm[v].
  ColoredBoard permuted(std::span<const int> perm) const;

  friend bool operator==(const ColoredBoard&, const ColoredBoard&) = default;

 private:
  std::uint8_t n_ = 0;
  Bits128 codes_ = 0;
};

inline ColoredBoard ColoredBoard::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != n_) {
    throw DimensionError("permutation size does not match board order");
  }
  ColoredBoard b(n_);
  for (int e = 0; e < pair_count(); ++e) {
    const int u = perm[detail::kEdges.hi[e]];
    const int v = perm[detail::kEdges.lo[e]];
    b = b.with(EdgeId{detail::kEdges.id[u][v]}, state(EdgeId{e}));
  }
  return b;
}

inline ColoredBoard complete_board(int n) {
  ColoredBoard b(n);
  for (int e = 0; e < b.pair_count(); ++e) {
    b = b.with(EdgeId{e}, EdgeState::Uncolored);
  }
  return b;
}

// Board on the smallest order holding m pairs; the first m pairs in colex
// order are present.
inline ColoredBoard colex_board(int m) {
  if (m < 1) throw DegenerateBoardError("colex board needs at least one edge");
  int n = 2;
  while (binom2(n) < m) ++n;
  ColoredBoard b(n);
  for (int e = 0; e < m; ++e) b = b.with(EdgeId{e}, EdgeState::Uncolored);
  return b;
}

inline ColoredBoard apply_move(const ColoredBoard& b, EdgeId e, Colour c) {
  if (e.index < 0 || e.index >= b.pair_count()) {
    throw IllegalMoveError("edge " + std::to_string(e.index) +
                           " outside the board");
  }
  if (b.state(e) != EdgeState::Uncolored) {
    throw IllegalMoveError("edge " + std::to_string(e.index) +
                           " is not uncoloured");
  }
  return b.with(e, state_of(c));
}

// 2 bits per pair in colex order, pair i at bits 2i (low) and 2i+1 of a
// little-endian bit stream.
inline std::vector<std::uint8_t> encode(const ColoredBoard& b) {
  const int nbytes = (2 * b.pair_count() + 7) / 8;
  std::vector<std::uint8_t> out(static_cast<std::size_t>(nbytes));
  const Bits128 codes = b.codes();
  for (int i = 0; i < nbytes; ++i) {
    out[i] = static_cast<std::uint8_t>(codes >> (8 * i));
  }
  return out;
}

inline ColoredBoard decode(std::span<const std::uint8_t> bytes, int n) {
  ColoredBoard b(n);
  const int bits = 2 * b.pair_count();
  const std::size_t nbytes = static_cast<std::size_t>((bits + 7) / 8);
  if (bytes.size() != nbytes) {
    throw FormatError("expected " + std::to_string(nbytes) +
                      " bytes for order " + std::to_string(n) + ", got " +
                      std::to_string(bytes.size()));
  }
  Bits128 codes = 0;
  for (std::size_t i = 0; i < nbytes; ++i) {
    codes |= Bits128{bytes[i]} << (8 * i);
  }
  if (bits < 128 && (codes >> bits) != 0) {
    throw FormatError("padding bits are not zero");
  }
  return ColoredBoard::from_codes(n, codes);
}

// "n:hex" text form.
inline std::string to_text(const ColoredBoard& b) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s = std::to_string(b.order()) + ":";
  for (std::uint8_t byte : encode(b)) {
    s += kHex[byte >> 4];
    s += kHex[byte & 15];
  }
  return s;
}

inline ColoredBoard from_text(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw FormatError("board text must look like n:hex");
  }
  int n = 0;
  for (char c : text.substr(0, colon)) {
    if (c < '0' || c > '9') throw FormatError("bad order in board text");
    n = n * 10 + (c - '0');
    if (n > 1000) throw FormatError("bad order in board text");
  }
  const std::string_view hex = text.substr(colon + 1);
  if (hex.size() % 2 != 0) throw FormatError("odd number of hex digits");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw FormatError("board hex must be lowercase hexadecimal");
  };
  std::vector<std::uint8_t> bytes;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    bytes.push_back(
        static_cast<std::uint8_t>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  }
  if (n < 1 || n > kMaxOrder) {
    throw CapacityError("board order " + std::to_string(n) + " unsupported");
  }
  return decode(bytes, n);
}

// Base graph text: first line n, then one "u v" pair per line.
inline ColoredBoard read_base_graph(std::istream& in) {
  int n = 0;
  if (!(in >> n)) throw FormatError("base graph: missing vertex count");
  ColoredBoard b(n);
  std::string line;
  std::getline(in, line);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    int u = 0, v = 0;
    if (!(ls >> u)) continue;  // blank line
    if (!(ls >> v) || u < 0 || v < 0 || u >= n || v >= n || u == v) {
      throw FormatError("base graph: bad edge on line " +
                        std::to_string(lineno));
    }
    b = b.with(colex_index(u, v), EdgeState::Uncolored);
  }
  return b;
}

inline ColoredBoard read_base_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open base graph file " + path);
  return read_base_graph(in);
}

enum class GameKind : std::uint8_t { Clique, Star, VC, Colex };

inline constexpr std::array<GameKind, 4> kAllKinds = {
    GameKind::Clique, GameKind::Star, GameKind::VC, GameKind::Colex};

inline std::string_view to_string(GameKind k) {
  switch (k) {
    case GameKind::Clique: return "clique";
    case GameKind::Star: return "star";
    case GameKind::VC: return "vc";
    case GameKind::Colex: return "colex";
  }
  return "?";
}

inline GameKind parse_kind(std::string_view s) {
  for (GameKind k : kAllKinds) {
    if (to_string(k) == s) return k;
  }
  throw FormatError("unknown game kind '" + std::string(s) + "'");
}

struct Bias {
  int p = 1;
  int q = 1;

  friend bool operator==(const Bias&, const Bias&) = default;
};

struct StartMove {
  EdgeId edge;
  Colour colour = Colour::Red;

  friend bool operator==(const StartMove&, const StartMove&) = default;
};

struct GameSpec {
  ColoredBoard base;  // present pairs Uncolored
  std::vector<StartMove> start;
  GameKind kind = GameKind::Clique;
  Bias bias;
};

inline void validate(const GameSpec& spec) {
  if (spec.bias.p < 1 || spec.bias.q < 1) {
    throw PreconditionError("bias quotas must be positive");
  }
  for (int e = 0; e < spec.base.pair_count(); ++e) {
    const EdgeState s = spec.base.state(EdgeId{e});
    if (s != EdgeState::Absent && s != EdgeState::Uncolored) {
      throw PreconditionError("base graph must be uncoloured");
    }
  }
  std::vector<bool> seen(static_cast<std::size_t>(spec.base.pair_count()));
  for (const StartMove& m : spec.start) {
    if (m.edge.index < 0 || m.edge.index >= spec.base.pair_count() ||
        spec.base.state(m.edge) != EdgeState::Uncolored) {
      throw PreconditionError("start edge " + std::to_string(m.edge.index) +
                              " is not in the base graph");
    }
    if (seen[m.edge.index]) {
      throw PreconditionError("start edge " + std::to_string(m.edge.index) +
                              " listed twice");
    }
    seen[m.edge.index] = true;
  }
}

inline ColoredBoard start_board(const GameSpec& spec) {
  validate(spec);
  ColoredBoard b = spec.base;
  for (const StartMove& m : spec.start) b = apply_move(b, m.edge, m.colour);
  return b;
}

}  // namespace graphgame
