#ifndef PISG_ALGORITHM_H_
#define PISG_ALGORITHM_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "pisg/errors.h"
#include "pisg/game.h"
#include "pisg/lp.h"

namespace pisg {

// Two gain vectors closer than this (sup norm) are treated as equal.
inline constexpr double kGainTolerance = 1e-6;

inline constexpr int kDefaultMaxIterations = 1000;

struct Round {
  PureStationaryStrategy g;  // player II strategy frozen in this round
  PureStationaryStrategy f;  // player I best response to g
  double objective_p1 = 0.0;  // Hordijk LP optimum in the MDP with g frozen
  double objective_p2 = 0.0;  // Hordijk LP optimum in the MDP with f frozen
  std::vector<double> gain_p1;  // phi(., f, g)
  std::vector<double> gain_p2;  // phi(., f, best response to f)
  PureStationaryStrategy g_response;
};

enum class Termination { kConverged, kCycleDetected, kIterationCap };
std::string_view TerminationName(Termination t);

struct IterationTrace {
  std::vector<Round> rounds;
  Termination termination = Termination::kConverged;
};

struct Deviation {
  Player player = Player::kOne;
  int state = 0;  // initial state where the deviation pays
  PureStationaryStrategy strategy;
  double gain = 0.0;  // amount by which the deviator improves
};

struct VerificationReport {
  bool passed = true;
  // Largest improvement any pure unilateral deviation achieves, per state
  // (<= tolerance when the pair is optimal).
  std::vector<double> worst_margin;
  std::optional<Deviation> worst;
  std::uint64_t deviations_checked = 0;
};

struct SolutionReport {
  PureStationaryStrategy f_star;
  PureStationaryStrategy g_star;
  std::vector<double> value;
  VerificationReport verification;
  IterationTrace trace;
};

// Raised for CycleDetected / IterationCapExceeded; keeps the rounds played.
class IterationError : public Error {
 public:
  IterationError(ErrorCode code, const std::string& detail, IterationTrace trace)
      : Error(code, detail), trace_(std::move(trace)) {}
  const IterationTrace& trace() const { return trace_; }

 private:
  IterationTrace trace_;
};

struct RandomStart {
  std::uint64_t seed = 0;
};

struct IterationOptions {
  std::variant<PureStationaryStrategy, RandomStart> initial_g = RandomStart{};
  int max_iter = kDefaultMaxIterations;
  std::vector<double> beta;  // empty: uniform
  bool verify = true;
};

// A uniformly random pure strategy drawn from the generator used by
// SimulatePlay, for reproducibility.
PureStationaryStrategy RandomPureStrategy(const StochasticGame& game,
                                          Player player, std::uint64_t seed);

// Alternating best responses: f_k is average optimal against g_k; the loop
// stops once g_k is itself a best response to f_k (gain vectors compared).
SolutionReport BestResponseIteration(const StochasticGame& game,
                                     const IterationOptions& options = {});

// Checks phi(s, f, g*) <= phi(s, f*, g*) + tol for every pure f and
// phi(s, f*, g) >= phi(s, f*, g*) - tol for every pure g, in all states.
VerificationReport VerifyOptimality(const StochasticGame& game,
                                    const PureStationaryStrategy& f_star,
                                    const PureStationaryStrategy& g_star,
                                    double tolerance = kGainTolerance);

// Empirical (1/horizon) sum of rewards along one simulated play.
double SimulatePlay(const StochasticGame& game, const PureStationaryStrategy& f,
                    const PureStationaryStrategy& g, int start_state,
                    std::int64_t horizon, std::uint64_t seed);

}  // namespace pisg

#endif  // PISG_ALGORITHM_H_
