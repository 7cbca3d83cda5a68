#include "pisg/algorithm.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>

#include "pisg/markov.h"
#include "pisg/mdp.h"

namespace pisg {

std::string_view TerminationName(Termination t) {
  switch (t) {
    case Termination::kConverged: return "Converged";
    case Termination::kCycleDetected: return "CycleDetected";
    case Termination::kIterationCap: return "IterationCap";
  }
  return "?";
}

namespace {

double SupDistance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

PureStationaryStrategy RandomPureStrategy(const StochasticGame& game,
                                          Player player, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PureStationaryStrategy strategy{player, std::vector<int>(game.num_states(), 0)};
  for (int s = 0; s < game.num_states(); ++s) {
    const int k = game.num_actions(player, s);
    if (k > 1) strategy.choice[s] = std::uniform_int_distribution<int>(0, k - 1)(rng);
  }
  return strategy;
}

SolutionReport BestResponseIteration(const StochasticGame& game,
                                     const IterationOptions& options) {
  const std::vector<double> beta =
      options.beta.empty() ? UniformWeights(game.num_states()) : options.beta;

  PureStationaryStrategy g;
  if (const auto* given = std::get_if<PureStationaryStrategy>(&options.initial_g)) {
    g = *given;
    if (g.player != Player::kTwo) {
      throw Error(ErrorCode::kInvalidStrategy, "initial strategy must belong to P2");
    }
    ValidateStrategy(game, g);
  } else {
    g = RandomPureStrategy(game, Player::kTwo,
                           std::get<RandomStart>(options.initial_g).seed);
  }

  IterationTrace trace;
  std::set<std::pair<std::vector<int>, std::vector<int>>> visited;
  for (int k = 0; k < options.max_iter; ++k) {
    Round round;
    round.g = g;

    const MarkovDecisionProcess p1_mdp = ReduceToMdp(game, g);
    AverageOptimalResult p1 = SolveAverageOptimal(p1_mdp, beta);
    round.f = PolicyToStrategy(game, Player::kOne, p1.policy);
    round.objective_p1 = p1.objective;
    round.gain_p1 = std::move(p1.gain);

    if (!visited.emplace(round.f.choice, round.g.choice).second) {
      trace.rounds.push_back(std::move(round));
      trace.termination = Termination::kCycleDetected;
      throw IterationError(ErrorCode::kCycleDetected,
                           "strategy pair repeated at round " + std::to_string(k),
                           std::move(trace));
    }

    const MarkovDecisionProcess p2_mdp = ReduceToMdp(game, round.f);
    AverageOptimalResult p2 = SolveAverageOptimal(p2_mdp, beta);
    round.g_response = PolicyToStrategy(game, Player::kTwo, p2.policy);
    round.objective_p2 = p2.objective;
    round.gain_p2 = std::move(p2.gain);

    // gain_p1 is phi(., f_k, g_k): g_k is optimal in the MDP with f_k frozen
    // iff it matches the best response's gain.
    const bool converged =
        SupDistance(round.gain_p1, round.gain_p2) <= kGainTolerance;
    g = round.g_response;
    trace.rounds.push_back(std::move(round));
    if (converged) {
      const Round& last = trace.rounds.back();
      SolutionReport report;
      report.f_star = last.f;
      report.g_star = last.g;
      report.value = last.gain_p1;
      if (options.verify) {
        report.verification = VerifyOptimality(game, report.f_star, report.g_star);
      }
      trace.termination = Termination::kConverged;
      report.trace = std::move(trace);
      return report;
    }
  }
  trace.termination = Termination::kIterationCap;
  throw IterationError(ErrorCode::kIterationCapExceeded,
                       "no convergence within " + std::to_string(options.max_iter) +
                           " rounds",
                       std::move(trace));
}

VerificationReport VerifyOptimality(const StochasticGame& game,
                                    const PureStationaryStrategy& f_star,
                                    const PureStationaryStrategy& g_star,
                                    double tolerance) {
  ValidateStrategy(game, f_star);
  ValidateStrategy(game, g_star);
  const int n = game.num_states();
  const std::vector<double> value = UndiscountedValue(game, f_star, g_star);

  VerificationReport report;
  report.worst_margin.assign(n, 0.0);
  double worst = -1.0;
  auto consider = [&](Player who, const PureStationaryStrategy& strategy,
                      const std::vector<double>& phi) {
    ++report.deviations_checked;
    for (int s = 0; s < n; ++s) {
      const double gain = who == Player::kOne ? phi[s] - value[s] : value[s] - phi[s];
      report.worst_margin[s] = std::max(report.worst_margin[s], gain);
      if (gain > worst) {
        worst = gain;
        if (gain > tolerance) report.worst = Deviation{who, s, strategy, gain};
      }
    }
  };
  for (const auto& f : EnumeratePureStrategies(game, Player::kOne)) {
    consider(Player::kOne, f, UndiscountedValue(game, f, g_star));
  }
  for (const auto& g : EnumeratePureStrategies(game, Player::kTwo)) {
    consider(Player::kTwo, g, UndiscountedValue(game, f_star, g));
  }
  report.passed = !report.worst.has_value();
  return report;
}

double SimulatePlay(const StochasticGame& game, const PureStationaryStrategy& f,
                    const PureStationaryStrategy& g, int start_state,
                    std::int64_t horizon, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int s = start_state;
  double total = 0.0;
  for (std::int64_t t = 0; t < horizon; ++t) {
    const Cell& cell = game.cell(s, f.choice[s], g.choice[s]);
    total += cell.reward;
    const double u = unit(rng);
    double cumulative = 0.0;
    int next = -1;
    for (int t2 = 0; t2 < game.num_states(); ++t2) {
      if (cell.next[t2] <= 0.0) continue;
      next = t2;
      cumulative += cell.next[t2];
      if (u < cumulative) break;
    }
    s = next;
  }
  return total / static_cast<double>(horizon);
}

}  // namespace pisg
