#include "pisg/mdp.h"

#include <cmath>
#include <sstream>

#include "pisg/errors.h"

namespace pisg {

namespace {

// Occupation mass at or below this level counts as zero.
constexpr double kSupportTolerance = 1e-9;

}  // namespace

MarkovDecisionProcess ReduceToMdp(const StochasticGame& game,
                                  const PureStationaryStrategy& frozen) {
  MarkovDecisionProcess mdp;
  mdp.decision_maker = Opponent(frozen.player);
  mdp.orientation =
      mdp.decision_maker == Player::kOne ? Sense::kMaximize : Sense::kMinimize;
  mdp.actions.resize(game.num_states());
  for (int s = 0; s < game.num_states(); ++s) {
    if (game.controller(s) == mdp.decision_maker) {
      for (int k = 0; k < game.num_moves(s); ++k) {
        const Cell& cell = game.move(s, k);
        mdp.actions[s].push_back({cell.reward, cell.next});
      }
    } else {
      const Cell& cell = game.move(s, frozen.choice[s]);
      mdp.actions[s].push_back({cell.reward, cell.next});
    }
  }
  return mdp;
}

PureStationaryStrategy PolicyToStrategy(const StochasticGame& game,
                                        Player player,
                                        const MdpPolicy& policy) {
  PureStationaryStrategy strategy{player,
                                  std::vector<int>(game.num_states(), 0)};
  for (int s = 0; s < game.num_states(); ++s) {
    if (game.controller(s) == player) strategy.choice[s] = policy[s];
  }
  return strategy;
}

MdpPolicy StrategyToPolicy(const StochasticGame& game,
                           const PureStationaryStrategy& strategy) {
  MdpPolicy policy(game.num_states(), 0);
  for (int s = 0; s < game.num_states(); ++s) {
    if (game.controller(s) == strategy.player) policy[s] = strategy.choice[s];
  }
  return policy;
}

InducedChain PolicyChain(const MarkovDecisionProcess& mdp,
                         const MdpPolicy& policy) {
  const int n = mdp.num_states();
  InducedChain chain{Matrix(n, n), std::vector<double>(n)};
  for (int s = 0; s < n; ++s) {
    const MdpAction& action = mdp.actions[s][policy[s]];
    chain.reward[s] = action.reward;
    std::copy(action.next.begin(), action.next.end(), chain.q.row(s).begin());
  }
  return chain;
}

std::vector<double> PolicyGain(const MarkovDecisionProcess& mdp,
                               const MdpPolicy& policy) {
  InducedChain chain = PolicyChain(mdp, policy);
  return EvaluateChain(chain.q, std::move(chain.reward)).value;
}

std::vector<double> UniformWeights(int num_states) {
  return std::vector<double>(num_states, 1.0 / num_states);
}

HordijkLp BuildHordijkLp(const MarkovDecisionProcess& mdp,
                         const std::vector<double>& beta) {
  const int n = mdp.num_states();
  if (static_cast<int>(beta.size()) != n) {
    throw Error(ErrorCode::kBadWeights,
                "expected " + std::to_string(n) + " weights, got " +
                    std::to_string(beta.size()));
  }
  double total = 0.0;
  for (int s = 0; s < n; ++s) {
    if (!(beta[s] > 0.0) || !std::isfinite(beta[s])) {
      throw Error(ErrorCode::kBadWeights,
                  "weight of state " + std::to_string(s + 1) + " is not positive");
    }
    total += beta[s];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream detail;
    detail.precision(17);
    detail << "weights sum to " << total;
    throw Error(ErrorCode::kBadWeights, detail.str());
  }

  HordijkLp hlp;
  hlp.beta = beta;
  hlp.orientation = mdp.orientation;
  hlp.column_offset.resize(n);
  for (int s = 0; s < n; ++s) {
    hlp.column_offset[s] = hlp.num_pairs;
    hlp.num_pairs += static_cast<int>(mdp.actions[s].size());
  }

  LinearProgram& lp = hlp.lp;
  lp.sense = Sense::kMaximize;
  lp.a = Matrix(2 * n, 2 * hlp.num_pairs);
  lp.b.assign(2 * n, 0.0);
  lp.cost.assign(2 * hlp.num_pairs, 0.0);
  const double sign = mdp.orientation == Sense::kMaximize ? 1.0 : -1.0;
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < static_cast<int>(mdp.actions[s].size()); ++a) {
      const MdpAction& action = mdp.actions[s][a];
      const int w = hlp.w_column(s, a), y = hlp.y_column(s, a);
      lp.cost[w] = sign * action.reward;
      for (int t = 0; t < n; ++t) {
        const double coeff = (s == t ? 1.0 : 0.0) - action.next[t];
        lp.a(t, w) = coeff;
        lp.a(n + t, y) = coeff;
      }
      lp.a(n + s, w) += 1.0;
    }
  }
  for (int t = 0; t < n; ++t) lp.b[n + t] = beta[t];
  return hlp;
}

double HordijkObjective(const HordijkLp& hlp, const LpSolution& solution) {
  return hlp.orientation == Sense::kMaximize ? solution.objective
                                             : -solution.objective;
}

MdpPolicy ExtractPolicy(const LpSolution& solution, const HordijkLp& hlp) {
  const int n = static_cast<int>(hlp.column_offset.size());
  MdpPolicy policy(n, 0);
  for (int s = 0; s < n; ++s) {
    const int begin = hlp.column_offset[s];
    const int end = s + 1 < n ? hlp.column_offset[s + 1] : hlp.num_pairs;
    double w_mass = 0.0;
    for (int c = begin; c < end; ++c) w_mass += solution.x[c];
    // Occupation mass decides recurrent states, y decides transient ones.
    const int shift = w_mass > kSupportTolerance ? 0 : hlp.num_pairs;
    int best = -1;
    for (int c = begin; c < end; ++c) {
      const double v = solution.x[shift + c];
      if (v > kSupportTolerance && (best < 0 || v > solution.x[shift + best])) {
        best = c;
      }
    }
    if (best < 0) {
      throw Error(ErrorCode::kDegenerateExtraction,
                  "state " + std::to_string(s + 1) +
                      " has neither occupation nor auxiliary mass");
    }
    policy[s] = best - begin;
  }
  return policy;
}

AverageOptimalResult SolveAverageOptimal(const MarkovDecisionProcess& mdp,
                                         const std::vector<double>& beta,
                                         const SimplexOptions& options) {
  const HordijkLp hlp = BuildHordijkLp(mdp, beta);
  AverageOptimalResult out;
  out.solution = SolveLp(hlp.lp, options);
  if (out.solution.status != LpStatus::kOptimal) {
    // The LP always has a bounded optimum for a valid MDP.
    throw Error(ErrorCode::kNumericalBreakdown,
                "average-optimality LP reported " +
                    std::string(LpStatusName(out.solution.status)));
  }
  out.objective = HordijkObjective(hlp, out.solution);
  out.policy = ExtractPolicy(out.solution, hlp);
  out.gain = PolicyGain(mdp, out.policy);
  double weighted = 0.0;
  for (int s = 0; s < mdp.num_states(); ++s) weighted += beta[s] * out.gain[s];
  if (std::abs(weighted - out.objective) > kObjectiveTolerance) {
    std::ostringstream detail;
    detail.precision(12);
    detail << "LP objective " << out.objective << " vs beta-weighted gain "
           << weighted;
    throw Error(ErrorCode::kObjectiveMismatch, detail.str());
  }
  return out;
}

}  // namespace pisg
