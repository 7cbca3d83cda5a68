#ifndef PISG_GAME_H_
#define PISG_GAME_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pisg {

// Probability rows must sum to one within this tolerance.
inline constexpr double kRowSumTolerance = 1e-12;

enum class Player { kOne, kTwo };

inline Player Opponent(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}
std::string_view PlayerName(Player p);  // "P1" / "P2"

// Reward to player I and the law of the next state for one admissible
// triplet (s, i, j).
struct Cell {
  double reward = 0.0;
  std::vector<double> next;

  bool operator==(const Cell&) const = default;
};

// One record of an unvalidated game description. States and actions are
// 0-indexed here; the file reader normalizes 1-indexed labels. A missing
// action index means the player is a dummy in that state.
struct RawEntry {
  int state = 0;
  std::optional<int> a1;
  std::optional<int> a2;
  double reward = 0.0;
  std::vector<double> next;
};

struct RawGame {
  int num_states = 0;
  std::vector<Player> controller;
  std::vector<RawEntry> entries;
};

// A zero-sum two-person perfect-information stochastic game under the
// limiting-average criterion. In every state exactly one player (the
// controller) may have more than one action; the other is a dummy whose only
// action has index 0. Instances are immutable and can only be obtained from
// ValidateGame (or the readers built on top of it).
class StochasticGame {
 public:
  int num_states() const { return static_cast<int>(controller_.size()); }
  Player controller(int s) const { return controller_[s]; }
  int num_actions(Player p, int s) const {
    return p == Player::kOne ? actions_p1_[s] : actions_p2_[s];
  }
  // Actions of whoever moves in s.
  int num_moves(int s) const { return static_cast<int>(cells_[s].size()); }

  const Cell& cell(int s, int a1, int a2) const {
    return cells_[s][controller_[s] == Player::kOne ? a1 : a2];
  }
  const Cell& move(int s, int k) const { return cells_[s][k]; }

  bool operator==(const StochasticGame&) const = default;

 private:
  friend StochasticGame ValidateGame(const RawGame& raw);

  std::vector<Player> controller_;
  std::vector<int> actions_p1_;
  std::vector<int> actions_p2_;
  // cells_[s][k]: k indexes the controller's action in s.
  std::vector<std::vector<Cell>> cells_;
};

// Checks every structural invariant and builds the game. Throws pisg::Error
// with one of kRowSumError, kNegativeProbability, kPerfectInfoViolation,
// kMissingEntry, kDuplicateEntry, or kSyntaxError for malformed shapes.
StochasticGame ValidateGame(const RawGame& raw);

RawGame ToRaw(const StochasticGame& game);

// A deterministic stationary strategy: choice[s] is the action index used in
// state s. States where the player is a dummy always carry 0.
struct PureStationaryStrategy {
  Player player = Player::kOne;
  std::vector<int> choice;

  auto operator<=>(const PureStationaryStrategy&) const = default;
};

// Throws kInvalidStrategy when the strategy does not fit the game.
void ValidateStrategy(const StochasticGame& game,
                      const PureStationaryStrategy& strategy);

// Every pure stationary strategy of `player`, lexicographic in the per-state
// choice vector (the last state varies fastest).
std::vector<PureStationaryStrategy> EnumeratePureStrategies(
    const StochasticGame& game, Player player);

// Number of pure stationary strategies of `player`, saturating at UINT64_MAX.
std::uint64_t CountPureStrategies(const StochasticGame& game, Player player);

// "1,2,1" style, 1-indexed, one label per state.
PureStationaryStrategy ParseStrategy(const StochasticGame& game, Player player,
                                     std::string_view text);
std::string FormatStrategy(const PureStationaryStrategy& strategy);

// Game file reader/writer (JSON, 1-indexed by default). See docs/game_format.md.
StochasticGame ParseGame(std::string_view text);
// Throws std::system_error when the file cannot be opened.
StochasticGame LoadGame(const std::string& path);
std::string SerializeGame(const StochasticGame& game);

// Accepts "0.25", "1/4", "1". Throws kSyntaxError.
double ParseProbability(std::string_view text);
// Shortest decimal string that reads back to the same double.
std::string FormatDouble(double value);

struct RandomGameOptions {
  int min_states = 1;
  int max_states = 5;
  int max_actions = 3;
  // Each transition row gets between 1 and max_support successors.
  int max_support = 3;
  // Integer weights in [1, max_weight] are normalized into probabilities.
  int max_weight = 4;
  double reward_bound = 10.0;
  // Rewards are rounded to this many steps per unit (0 keeps them real).
  int reward_grid = 2;
};

StochasticGame RandomGame(const RandomGameOptions& options, std::uint64_t seed);

}  // namespace pisg

#endif  // PISG_GAME_H_
