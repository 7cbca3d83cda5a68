#ifndef PISG_MDP_H_
#define PISG_MDP_H_

#include <vector>

#include "pisg/game.h"
#include "pisg/lp.h"
#include "pisg/markov.h"

namespace pisg {

struct MdpAction {
  double reward = 0.0;
  std::vector<double> next;
};

// A finite MDP under the limiting-average criterion. `orientation` says
// whether the decision maker maximizes (player I) or minimizes (player II)
// the reward stream.
struct MarkovDecisionProcess {
  std::vector<std::vector<MdpAction>> actions;  // per state
  Sense orientation = Sense::kMaximize;
  // Game player that owns the decisions, when the MDP came from a game.
  Player decision_maker = Player::kOne;

  int num_states() const { return static_cast<int>(actions.size()); }
};

// A stationary deterministic MDP policy: one action index per state.
using MdpPolicy = std::vector<int>;

// Freezes `frozen` and returns the opponent's MDP. In states controlled by
// the free player every game action carries over; elsewhere the only action
// is the frozen player's choice.
MarkovDecisionProcess ReduceToMdp(const StochasticGame& game,
                                  const PureStationaryStrategy& frozen);

// Converts an MDP policy of ReduceToMdp(game, frozen) back into the free
// player's game strategy, and the reverse.
PureStationaryStrategy PolicyToStrategy(const StochasticGame& game,
                                        Player player, const MdpPolicy& policy);
MdpPolicy StrategyToPolicy(const StochasticGame& game,
                           const PureStationaryStrategy& strategy);

InducedChain PolicyChain(const MarkovDecisionProcess& mdp,
                         const MdpPolicy& policy);

// Gain vector of a policy: limiting-average reward per initial state.
std::vector<double> PolicyGain(const MarkovDecisionProcess& mdp,
                               const MdpPolicy& policy);

std::vector<double> UniformWeights(int num_states);

// The occupation-measure LP for average optimality in multichain MDPs:
//
//   opt  sum_{s,a} r(s,a) w_sa
//   s.t. sum_{s,a} (delta(s,t) - q(t|s,a)) w_sa = 0                      all t
//        sum_a w_ta + sum_{s,a} (delta(s,t) - q(t|s,a)) y_sa = beta_t    all t
//        w, y >= 0
//
// Columns are [w for every (s,a) in state-major order | y in the same order];
// the first num_states rows are the balance family. A minimizing MDP is
// encoded by negating the costs and maximizing.
struct HordijkLp {
  LinearProgram lp;
  std::vector<int> column_offset;  // first w column of each state
  int num_pairs = 0;               // number of (s, a) pairs
  std::vector<double> beta;
  Sense orientation = Sense::kMaximize;

  int w_column(int s, int a) const { return column_offset[s] + a; }
  int y_column(int s, int a) const { return num_pairs + column_offset[s] + a; }
};

// Throws Error(kBadWeights) unless beta is positive and sums to 1 within
// 1e-12.
HordijkLp BuildHordijkLp(const MarkovDecisionProcess& mdp,
                         const std::vector<double>& beta);

// Optimal objective of the LP in the MDP's own orientation (undoes the cost
// negation used for minimizers).
double HordijkObjective(const HordijkLp& hlp, const LpSolution& solution);

// Pure policy read off an optimal LP solution: argmax_a w_sa where the state
// carries occupation mass, argmax_a y_sa elsewhere, ties to the lowest index.
// Throws Error(kDegenerateExtraction) if a state has neither.
MdpPolicy ExtractPolicy(const LpSolution& solution, const HordijkLp& hlp);

struct AverageOptimalResult {
  MdpPolicy policy;
  std::vector<double> gain;
  double objective = 0.0;
  LpSolution solution;
};

// BuildHordijkLp -> SolveLp -> ExtractPolicy, then evaluates the policy's
// gain and checks that the LP objective equals beta . gain within 1e-6
// (Error(kObjectiveMismatch) otherwise).
AverageOptimalResult SolveAverageOptimal(const MarkovDecisionProcess& mdp,
                                         const std::vector<double>& beta,
                                         const SimplexOptions& options = {});

inline constexpr double kObjectiveTolerance = 1e-6;

}  // namespace pisg

#endif  // PISG_MDP_H_
