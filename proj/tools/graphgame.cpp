// graphgame: command-line front end for the score-game solver.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "graphgame/cache.hpp"
#include "graphgame/generator.hpp"
#include "graphgame/graph.hpp"
#include "graphgame/solver.hpp"
#include "graphgame/strategies.hpp"

namespace gg = graphgame;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct GameFlags {
  std::string game = "clique";
  std::string base;
  std::string bias = "1,1";
  std::string start;
};

void add_game_flags(CLI::App* cmd, GameFlags& f, bool need_game) {
  auto* g = cmd->add_option("--game", f.game, "clique|star|vc|colex");
  if (need_game) g->required();
  cmd->add_option("--base", f.base, "Kn, Cm or file:PATH")->required();
  cmd->add_option("--bias", f.bias, "quotas p,q");
  cmd->add_option("--start", f.start, "pre-coloured edges, e.g. 0-1:R,2-3:B");
}

gg::ColoredBoard parse_base(const std::string& text) {
  if (text.rfind("file:", 0) == 0) return gg::read_base_graph_file(text.substr(5));
  if (text.size() >= 2 && (text[0] == 'K' || text[0] == 'C')) {
    int value = 0;
    try {
      std::size_t used = 0;
      value = std::stoi(text.substr(1), &used);
      if (used != text.size() - 1) throw std::invalid_argument(text);
    } catch (const std::logic_error&) {
      throw gg::FormatError("bad --base '" + text + "'");
    }
    return text[0] == 'K' ? gg::complete_board(value) : gg::colex_board(value);
  }
  throw gg::FormatError("bad --base '" + text + "' (want Kn, Cm or file:PATH)");
}

gg::Bias parse_bias(const std::string& text) {
  gg::Bias b;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> b.p >> comma >> b.q) || comma != ',' || !in.eof()) {
    throw gg::FormatError("bad --bias '" + text + "' (want p,q)");
  }
  return b;
}

std::vector<gg::StartMove> parse_start(const std::string& text) {
  std::vector<gg::StartMove> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    int u = 0, v = 0;
    char dash = 0, colon = 0, colour = 0;
    std::istringstream one(item);
    if (!(one >> u >> dash >> v >> colon >> colour) || dash != '-' ||
        colon != ':' || (colour != 'R' && colour != 'B')) {
      throw gg::FormatError("bad --start item '" + item + "' (want u-v:R|B)");
    }
    out.push_back({gg::colex_index(u, v),
                   colour == 'R' ? gg::Colour::Red : gg::Colour::Blue});
  }
  return out;
}

gg::GameSpec make_spec(const GameFlags& f) {
  gg::GameSpec spec;
  spec.base = parse_base(f.base);
  spec.kind = gg::parse_kind(f.game);
  spec.bias = parse_bias(f.bias);
  spec.start = parse_start(f.start);
  gg::validate(spec);
  return spec;
}

int default_threads() {
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void print_result(const gg::Outcome& o, gg::Winner w) {
  std::cout << "a=" << o.a << " b=" << o.b << " s=" << o.score()
            << " winner=" << gg::to_string(w) << "\n";
}

int cmd_solve(const GameFlags& f, int threads, const std::string& cache_flag,
              std::size_t max_states) {
  const gg::GameSpec spec = make_spec(f);
  const auto cache = gg::ResultCache::locate(cache_flag);
  if (cache) {
    if (auto hit = cache->find(spec)) {
      print_result(hit->outcome, hit->winner);
      return kExitOk;
    }
  }
  gg::SolveOptions options;
  options.threads = threads;
  options.max_states = max_states;
  const auto t0 = std::chrono::steady_clock::now();
  const gg::SolveResult r = gg::solve(spec, options);
  const double secs = seconds_since(t0);
  print_result(r.outcome, r.winner);
  if (cache) cache->append(spec, {r.outcome, r.winner, secs});
  return kExitOk;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  int lo = 0, hi = 0;
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text);
    } else {
      lo = std::stoi(text.substr(0, dots));
      hi = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::logic_error&) {
    throw gg::FormatError("bad --m-range '" + text + "' (want LO..HI)");
  }
  if (lo < 1 || hi < lo) throw gg::FormatError("bad --m-range '" + text + "'");
  return {lo, hi};
}

// Table columns: colex, star (max degree) and VC outcomes on C(m).
int cmd_table(const std::string& range, const std::string& games, int threads,
              const std::string& cache_flag, std::size_t max_states) {
  const auto [lo, hi] = parse_range(range);
  std::vector<gg::GameKind> kinds;
  std::istringstream in(games);
  for (std::string g; std::getline(in, g, ',');) {
    const gg::GameKind k = gg::parse_kind(g);
    if (k == gg::GameKind::Clique) {
      throw gg::FormatError("table covers colex, star and vc only");
    }
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) kinds.push_back(k);
  }
  if (kinds.empty()) throw gg::FormatError("--games is empty");
  const auto cache = gg::ResultCache::locate(cache_flag);
  std::cout << "m,col_a,col_b,delta_a,delta_b,svc,vc_a,vc_b\n";
  for (int m = lo; m <= hi; ++m) {
    gg::GameSpec spec;
    gg::SolveOptions options;
    options.threads = threads;
    options.max_states = max_states;
    std::map<gg::GameKind, gg::Outcome> found;
    std::vector<gg::GameKind> missing;
    try {
      spec.base = gg::colex_board(m);
      for (gg::GameKind k : kinds) {
        spec.kind = k;
        const auto hit = cache ? cache->find(spec) : std::nullopt;
        if (hit) {
          found[k] = hit->outcome;
        } else {
          missing.push_back(k);
        }
      }
      if (!missing.empty()) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto results = gg::solve_kinds(spec, missing, options);
        const double secs = seconds_since(t0);
        for (std::size_t i = 0; i < missing.size(); ++i) {
          found[missing[i]] = results[i].outcome;
          spec.kind = missing[i];
          if (cache) cache->append(spec, {results[i].outcome, results[i].winner, secs});
        }
      }
    } catch (const gg::CapacityError&) {
      std::cout << m << ",skipped\n" << std::flush;
      continue;
    }
    auto pick = [&](gg::GameKind k) -> std::optional<gg::Outcome> {
      const auto it = found.find(k);
      if (it == found.end()) return std::nullopt;
      return it->second;
    };
    std::ostringstream row;
    row << m;
    for (gg::GameKind k : {gg::GameKind::Colex, gg::GameKind::Star}) {
      if (auto o = pick(k)) {
        row << ',' << o->a << ',' << o->b;
      } else {
        row << ",,";
      }
    }
    if (auto o = pick(gg::GameKind::VC)) {
      row << ',' << o->score() << ',' << o->a << ',' << o->b;
    } else {
      row << ",,,";
    }
    std::cout << row.str() << "\n" << std::flush;
  }
  return kExitOk;
}

int cmd_generate(const GameFlags& f, int threads, const std::string& dump_dir,
                 std::size_t max_states) {
  const gg::GameSpec spec = make_spec(f);
  gg::GenerateOptions options;
  options.threads = threads;
  options.max_states = max_states;
  const auto layers = gg::build_layers(spec, options);
  std::size_t total = 0;
  for (const auto& layer : layers) {
    std::cout << "ply " << layer.ply << ": " << layer.size() << "\n";
    total += layer.size();
    if (!dump_dir.empty()) {
      std::filesystem::create_directories(dump_dir);
      const auto path = std::filesystem::path(dump_dir) /
                        ("layer_" + std::to_string(layer.ply) + ".bin");
      std::ofstream out(path, std::ios::binary);
      if (!out) throw gg::GameError("cannot write " + path.string());
      gg::write_layer_dump(out, layer);
    }
  }
  std::cout << "total: " << total << "\n";
  return kExitOk;
}

int report(const std::string& label, const gg::StrategyReport& r) {
  std::cout << label << ": " << (r.verified ? "VERIFIED" : "FAILED")
            << " lines=" << r.lines_checked << "\n";
  if (r.counterexample) std::cout << gg::to_text(*r.counterexample);
  return r.verified ? kExitOk : kExitFailed;
}

int cmd_verify(const std::string& strategy, int n, int threads) {
  const auto p2_ahead = [](const gg::Outcome& o) { return o.b > o.a; };
  if (strategy == "bob13") {
    return report("bob13 clique(1,3) K" + std::to_string(n),
                  gg::verify_strategy(gg::Bob13Strategy(n),
                                      gg::biased_spec(n, gg::GameKind::Clique, {1, 3}),
                                      p2_ahead, nullptr, threads));
  }
  if (strategy == "bob12") {
    int code = kExitOk;
    for (gg::GameKind k : {gg::GameKind::Star, gg::GameKind::VC}) {
      const int c = report(
          "bob12 " + std::string(gg::to_string(k)) + "(1,2) K" + std::to_string(n),
          gg::verify_strategy(gg::Bob12Strategy(), gg::biased_spec(n, k, {1, 2}),
                              p2_ahead, nullptr, threads));
      code = std::max(code, c);
    }
    return code;
  }
  if (strategy == "vc-mirror") {
    return report("vc-mirror K" + std::to_string(n), gg::vc_mirror_report(n));
  }
  throw gg::FormatError("unknown strategy '" + strategy + "'");
}

void show_board(const gg::ColoredBoard& b) {
  for (int e = 0; e < b.pair_count(); ++e) {
    const gg::EdgeState s = b.state(gg::EdgeId{e});
    if (s == gg::EdgeState::Red || s == gg::EdgeState::Blue) {
      auto [u, v] = gg::edge_endpoints(gg::EdgeId{e});
      std::cout << " " << v << "-" << u << (s == gg::EdgeState::Red ? ":R" : ":B");
    }
  }
  std::cout << "\n";
}

int cmd_play(const GameFlags& f, const std::string& human, int threads,
             std::size_t max_states) {
  if (human != "alice" && human != "bob") {
    throw gg::FormatError("--human must be alice or bob");
  }
  const gg::GameSpec spec = make_spec(f);
  gg::SolveOptions options;
  options.threads = threads;
  options.max_states = max_states;
  options.retain_layers = true;
  const gg::SolveResult solved = gg::solve(spec, options);
  const gg::Player me = human == "alice" ? gg::Player::P1 : gg::Player::P2;
  const gg::Schedule schedule{spec.bias.p, spec.bias.q};
  std::cout << "solved value: ";
  print_result(solved.outcome, solved.winner);
  gg::ColoredBoard board = gg::start_board(spec);
  for (int ply = 0; !board.is_full(); ++ply) {
    const gg::Player mover = gg::mover_at(ply, schedule);
    const gg::Colour colour = gg::colour_of(mover);
    std::cout << "board:";
    show_board(board);
    if (mover == me) {
      for (;;) {
        std::cout << "your edge (u v): " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line)) {
          std::cout << "\ninput closed\n";
          return kExitFailed;
        }
        std::istringstream in(line);
        int u = 0, v = 0;
        if (!(in >> u >> v)) {
          std::cout << "enter two vertex numbers\n";
          continue;
        }
        try {
          board = gg::apply_move(board, gg::colex_index(u, v), colour);
          break;
        } catch (const gg::GameError& e) {
          std::cout << "illegal: " << e.what() << "\n";
        }
      }
    } else {
      const gg::EdgeId e = gg::best_move(board, ply, *solved.solved);
      auto [u, v] = gg::edge_endpoints(e);
      std::cout << "engine plays " << v << " " << u << "\n";
      board = gg::apply_move(board, e, colour);
    }
  }
  std::cout << "board:";
  show_board(board);
  const gg::Outcome o = gg::score(board, spec.kind);
  std::cout << "final: ";
  print_result(o, gg::winner(o, spec.bias));
  return kExitOk;
}

// Solver against plain minimax on every small Colex board.
int cmd_selftest(int threads) {
  int failures = 0;
  int checked = 0;
  for (int m = 1; m <= 9; ++m) {
    for (gg::GameKind k : gg::kAllKinds) {
      gg::GameSpec spec;
      spec.base = gg::colex_board(m);
      spec.kind = k;
      gg::SolveOptions options;
      options.threads = threads;
      const gg::Outcome fast = gg::solve(spec, options).outcome;
      const gg::Outcome slow = gg::naive_minimax(spec);
      ++checked;
      if (!(fast == slow)) {
        ++failures;
        std::cout << "mismatch C(" << m << ") " << gg::to_string(k) << ": solver ("
                  << fast.a << "," << fast.b << ") minimax (" << slow.a << ","
                  << slow.b << ")\n";
      }
    }
  }
  std::cout << (failures == 0 ? "PASS" : "FAIL") << " " << checked - failures
            << "/" << checked << " oracle comparisons\n";
  return failures == 0 ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for edge-colouring score games"};
  app.require_subcommand(1);
  int threads = default_threads();
  std::size_t max_states = gg::GenerateOptions{}.max_states;
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--max-states", max_states, "position budget before giving up");

  GameFlags solve_flags;
  std::string cache_flag;
  auto* solve = app.add_subcommand("solve", "solve one game");
  add_game_flags(solve, solve_flags, true);
  solve->add_option("--cache", cache_flag, "result cache file");

  std::string range;
  std::string games = "colex,star,vc";
  auto* table = app.add_subcommand("table", "outcomes on Colex graphs as CSV");
  table->add_option("--m-range", range, "LO..HI")->required();
  table->add_option("--games", games, "subset of colex,star,vc");
  table->add_option("--cache", cache_flag, "result cache file");

  GameFlags gen_flags;
  std::string dump_dir;
  auto* generate = app.add_subcommand("generate", "print layer sizes");
  add_game_flags(generate, gen_flags, false);
  generate->add_option("--dump-dir", dump_dir, "write binary layer dumps here");

  std::string strategy;
  int order = 0;
  auto* verify = app.add_subcommand("verify-strategy", "exhaustively check a Bob strategy");
  verify->add_option("--strategy", strategy, "bob13|bob12|vc-mirror")->required();
  verify->add_option("--n", order, "order of the complete graph")->required();

  GameFlags play_flags;
  std::string human = "alice";
  auto* play = app.add_subcommand("play", "play against the solved engine");
  add_game_flags(play, play_flags, true);
  play->add_option("--human", human, "alice|bob");

  auto* selftest = app.add_subcommand("selftest", "solver against plain minimax");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(solve_flags, threads, cache_flag, max_states);
    if (*table) return cmd_table(range, games, threads, cache_flag, max_states);
    if (*generate) return cmd_generate(gen_flags, threads, dump_dir, max_states);
    if (*verify) return cmd_verify(strategy, order, threads);
    if (*play) return cmd_play(play_flags, human, threads, max_states);
    if (*selftest) return cmd_selftest(threads);
  } catch (const gg::CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const gg::FormatError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gg::InvalidEdgeError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gg::PreconditionError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gg::DegenerateBoardError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gg::GameError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}
