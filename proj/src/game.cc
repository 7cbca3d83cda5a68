#include "pisg/game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "pisg/errors.h"

namespace pisg {

std::string_view ErrorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kRowSumError: return "RowSumError";
    case ErrorCode::kNegativeProbability: return "NegativeProbability";
    case ErrorCode::kPerfectInfoViolation: return "PerfectInfoViolation";
    case ErrorCode::kMissingEntry: return "MissingEntry";
    case ErrorCode::kDuplicateEntry: return "DuplicateEntry";
    case ErrorCode::kInvalidStrategy: return "InvalidStrategy";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kNumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::kBadWeights: return "BadWeights";
    case ErrorCode::kDegenerateExtraction: return "DegenerateExtraction";
    case ErrorCode::kObjectiveMismatch: return "ObjectiveMismatch";
    case ErrorCode::kIterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kSizeLimit: return "SizeLimit";
    case ErrorCode::kNoPureSaddle: return "NoPureSaddle";
  }
  return "Error";
}

std::string_view PlayerName(Player p) {
  return p == Player::kOne ? "P1" : "P2";
}

namespace {

// Diagnostics use the 1-indexed labels of the file format.
std::string Where(int s, int action) {
  std::ostringstream out;
  out << "state=" << s + 1 << " action=" << action + 1;
  return out.str();
}

}  // namespace

StochasticGame ValidateGame(const RawGame& raw) {
  const int n = raw.num_states;
  if (n <= 0) {
    throw Error(ErrorCode::kSyntaxError, "states must be a positive integer");
  }
  if (static_cast<int>(raw.controller.size()) != n) {
    throw Error(ErrorCode::kSyntaxError,
                "controller must list one player per state");
  }

  std::vector<int> max_a1(n, 0), max_a2(n, 0);
  for (const RawEntry& e : raw.entries) {
    if (e.state < 0 || e.state >= n) {
      throw Error(ErrorCode::kSyntaxError,
                  "entry state " + std::to_string(e.state + 1) + " out of range");
    }
    const int a1 = e.a1.value_or(0), a2 = e.a2.value_or(0);
    if (a1 < 0 || a2 < 0) {
      throw Error(ErrorCode::kSyntaxError,
                  "negative action label in state " + std::to_string(e.state + 1));
    }
    max_a1[e.state] = std::max(max_a1[e.state], a1);
    max_a2[e.state] = std::max(max_a2[e.state], a2);
    if (static_cast<int>(e.next.size()) != n) {
      throw Error(ErrorCode::kSyntaxError,
                  "next must have " + std::to_string(n) + " probabilities (" +
                      Where(e.state, std::max(a1, a2)) + ")");
    }
    if (!std::isfinite(e.reward)) {
      throw Error(ErrorCode::kSyntaxError,
                  "non-finite reward (" + Where(e.state, std::max(a1, a2)) + ")");
    }
  }

  StochasticGame game;
  game.controller_ = raw.controller;
  game.actions_p1_.resize(n);
  game.actions_p2_.resize(n);
  game.cells_.resize(n);
  for (int s = 0; s < n; ++s) {
    const int na = max_a1[s] + 1, nb = max_a2[s] + 1;
    if ((na > 1 && nb > 1) ||
        (raw.controller[s] == Player::kOne && nb > 1) ||
        (raw.controller[s] == Player::kTwo && na > 1)) {
      throw Error(ErrorCode::kPerfectInfoViolation,
                  "state=" + std::to_string(s + 1) + " controller=" +
                      std::string(PlayerName(raw.controller[s])) +
                      " |A|=" + std::to_string(na) +
                      " |B|=" + std::to_string(nb));
    }
    game.actions_p1_[s] = na;
    game.actions_p2_[s] = nb;
    game.cells_[s].resize(std::max(na, nb));
  }

  std::vector<std::vector<bool>> seen(n);
  for (int s = 0; s < n; ++s) seen[s].assign(game.cells_[s].size(), false);
  for (const RawEntry& e : raw.entries) {
    const int k = std::max(e.a1.value_or(0), e.a2.value_or(0));
    if (seen[e.state][k]) {
      throw Error(ErrorCode::kDuplicateEntry, Where(e.state, k));
    }
    seen[e.state][k] = true;
    game.cells_[e.state][k] = Cell{e.reward, e.next};
  }
  for (int s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < seen[s].size(); ++k) {
      if (!seen[s][k]) {
        throw Error(ErrorCode::kMissingEntry, Where(s, static_cast<int>(k)));
      }
    }
  }

  for (int s = 0; s < n; ++s) {
    for (int k = 0; k < game.num_moves(s); ++k) {
      double sum = 0.0;
      for (double p : game.cells_[s][k].next) {
        if (!(p >= 0.0)) {
          throw Error(ErrorCode::kNegativeProbability, Where(s, k));
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance) {
        std::ostringstream detail;
        detail.precision(17);
        detail << Where(s, k) << " sum=" << sum;
        throw Error(ErrorCode::kRowSumError, detail.str());
      }
    }
  }
  return game;
}

RawGame ToRaw(const StochasticGame& game) {
  RawGame raw;
  raw.num_states = game.num_states();
  for (int s = 0; s < game.num_states(); ++s) {
    raw.controller.push_back(game.controller(s));
    for (int k = 0; k < game.num_moves(s); ++k) {
      RawEntry e;
      e.state = s;
      // The dummy's action dimension is omitted.
      if (game.controller(s) == Player::kOne) {
        e.a1 = k;
      } else {
        e.a2 = k;
      }
      e.reward = game.move(s, k).reward;
      e.next = game.move(s, k).next;
      raw.entries.push_back(std::move(e));
    }
  }
  return raw;
}

void ValidateStrategy(const StochasticGame& game,
                      const PureStationaryStrategy& strategy) {
  if (static_cast<int>(strategy.choice.size()) != game.num_states()) {
    throw Error(ErrorCode::kInvalidStrategy,
                "expected " + std::to_string(game.num_states()) +
                    " choices, got " + std::to_string(strategy.choice.size()));
  }
  for (int s = 0; s < game.num_states(); ++s) {
    const int c = strategy.choice[s];
    if (c < 0 || c >= game.num_actions(strategy.player, s)) {
      throw Error(ErrorCode::kInvalidStrategy,
                  std::string(PlayerName(strategy.player)) + " " +
                      Where(s, c) + " has only " +
                      std::to_string(game.num_actions(strategy.player, s)) +
                      " action(s)");
    }
  }
}

std::uint64_t CountPureStrategies(const StochasticGame& game, Player player) {
  std::uint64_t count = 1;
  for (int s = 0; s < game.num_states(); ++s) {
    const auto k = static_cast<std::uint64_t>(game.num_actions(player, s));
    if (count > std::numeric_limits<std::uint64_t>::max() / k) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    count *= k;
  }
  return count;
}

std::vector<PureStationaryStrategy> EnumeratePureStrategies(
    const StochasticGame& game, Player player) {
  const int n = game.num_states();
  std::vector<PureStationaryStrategy> out;
  PureStationaryStrategy current{player, std::vector<int>(n, 0)};
  while (true) {
    out.push_back(current);
    // Odometer increment, last state fastest.
    int s = n - 1;
    for (; s >= 0; --s) {
      if (++current.choice[s] < game.num_actions(player, s)) break;
      current.choice[s] = 0;
    }
    if (s < 0) break;
  }
  return out;
}

PureStationaryStrategy ParseStrategy(const StochasticGame& game, Player player,
                                     std::string_view text) {
  PureStationaryStrategy strategy{player, {}};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item(text.substr(pos, comma - pos));
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    std::size_t used = 0;
    int label = 0;
    try {
      label = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) {
      throw Error(ErrorCode::kInvalidStrategy,
                  "cannot parse action label '" + item + "'");
    }
    strategy.choice.push_back(label - 1);
    pos = comma + 1;
  }
  ValidateStrategy(game, strategy);
  return strategy;
}

std::string FormatStrategy(const PureStationaryStrategy& strategy) {
  std::string out;
  for (std::size_t s = 0; s < strategy.choice.size(); ++s) {
    if (s) out += ',';
    out += std::to_string(strategy.choice[s] + 1);
  }
  return out;
}

StochasticGame RandomGame(const RandomGameOptions& options,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform_int = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  RawGame raw;
  raw.num_states = uniform_int(options.min_states, options.max_states);
  const int n = raw.num_states;
  for (int s = 0; s < n; ++s) {
    const Player who = uniform_int(0, 1) == 0 ? Player::kOne : Player::kTwo;
    raw.controller.push_back(who);
    const int moves = uniform_int(1, options.max_actions);
    for (int k = 0; k < moves; ++k) {
      RawEntry e;
      e.state = s;
      if (who == Player::kOne) {
        e.a1 = k;
      } else {
        e.a2 = k;
      }
      double r = std::uniform_real_distribution<double>(
          -options.reward_bound, options.reward_bound)(rng);
      if (options.reward_grid > 0) {
        r = std::round(r * options.reward_grid) / options.reward_grid;
      }
      e.reward = r;
      std::vector<int> weight(n, 0);
      const int support = uniform_int(1, std::min(n, options.max_support));
      for (int t = 0; t < support; ++t) {
        weight[uniform_int(0, n - 1)] += uniform_int(1, options.max_weight);
      }
      int total = 0;
      for (int w : weight) total += w;
      e.next.resize(n);
      for (int t = 0; t < n; ++t) {
        e.next[t] = static_cast<double>(weight[t]) / total;
      }
      raw.entries.push_back(std::move(e));
    }
  }
  return ValidateGame(raw);
}

}  // namespace pisg
