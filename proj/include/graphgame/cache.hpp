#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "graphgame/graph.hpp"
#include "graphgame/scoring.hpp"

namespace graphgame {

// Full description of a solved instance: kind, bias, base board, start list.
inline std::string cache_key(const GameSpec& spec) {
  std::string key = std::string(to_string(spec.kind));
  key += '|' + std::to_string(spec.bias.p) + ',' + std::to_string(spec.bias.q);
  key += '|' + to_text(spec.base) + '|';
  for (std::size_t i = 0; i < spec.start.size(); ++i) {
    if (i > 0) key += ',';
    key += std::to_string(spec.start[i].edge.index);
    key += spec.start[i].colour == Colour::Red ? 'R' : 'B';
  }
  return key;
}

inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct CachedResult {
  Outcome outcome;
  Winner winner = Winner::P2;
  double seconds = 0;
};

// Append-only TSV: fingerprint, key, a, b, winner, seconds. Lookups compare
// the full key, so fingerprint collisions are harmless.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path path) : path_(std::move(path)) {}

  // --cache wins over GRAPHGAME_CACHE; empty when neither is set.
  static std::optional<ResultCache> locate(const std::string& flag) {
    if (!flag.empty()) return ResultCache(flag);
    if (const char* env = std::getenv("GRAPHGAME_CACHE"); env && *env) {
      return ResultCache(env);
    }
    return std::nullopt;
  }

  const std::filesystem::path& path() const { return path_; }

  std::optional<CachedResult> find(const GameSpec& spec) const {
    std::ifstream in(path_);
    if (!in) return std::nullopt;
    const std::string key = cache_key(spec);
    const std::string fp = fingerprint(key);
    std::optional<CachedResult> hit;
    for (std::string line; std::getline(in, line);) {
      if (line.compare(0, fp.size(), fp) != 0) continue;
      std::istringstream row(line);
      std::string f, k, w;
      CachedResult r;
      if (!std::getline(row, f, '\t') || !std::getline(row, k, '\t')) continue;
      if (f != fp || k != key) continue;
      if (!(row >> r.outcome.a >> r.outcome.b >> w >> r.seconds)) continue;
      r.winner = w == "P1" ? Winner::P1 : Winner::P2;
      hit = r;
    }
    return hit;
  }

  void append(const GameSpec& spec, const CachedResult& r) const {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw GameError("cannot write cache file " + path_.string());
    const std::string key = cache_key(spec);
    out << fingerprint(key) << '\t' << key << '\t' << r.outcome.a << '\t'
        << r.outcome.b << '\t' << to_string(r.winner) << '\t' << r.seconds
        << '\n';
  }

 private:
  static std::string fingerprint(const std::string& key) {
    std::ostringstream s;
    s << std::hex;
    s.width(16);
    s.fill('0');
    s << fnv1a(key);
    return s.str();
  }

  std::filesystem::path path_;
};

}  // namespace graphgame
