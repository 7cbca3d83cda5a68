#include "doctest.h"
#include "oracles.h"
#include "pisg/algorithm.h"
#include "pisg/markov.h"
#include "pisg/oracle.h"

namespace pisg {
namespace {

using testing::DataPath;

double Weighted(const std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x / static_cast<double>(v.size());
  return total;
}

TEST_CASE("example 1 stops in the first round") {
  const StochasticGame game = LoadGame(DataPath("example1.json"));
  IterationOptions options;
  options.initial_g = PureStationaryStrategy{Player::kTwo, {0, 0, 0}};
  const SolutionReport report = BestResponseIteration(game, options);
  CHECK(report.trace.termination == Termination::kConverged);
  REQUIRE(report.trace.rounds.size() == 1);
  CHECK(std::abs(report.trace.rounds[0].objective_p1 - 2.778) <= 1e-3);
  CHECK(report.f_star.choice == std::vector<int>{0, 0, 0});
  CHECK(report.g_star.choice == std::vector<int>{0, 0, 0});
  CHECK(std::abs(Weighted(report.value) - 2.778) <= 1e-3);
  CHECK(report.verification.passed);
  CHECK(report.verification.deviations_checked == 4 + 3);
}

TEST_CASE("example 2 converges to the oracle value") {
  const StochasticGame game = LoadGame(DataPath("example2.json"));
  IterationOptions options;
  options.initial_g = PureStationaryStrategy{Player::kTwo, {0, 0, 0, 0}};
  const SolutionReport report = BestResponseIteration(game, options);
  CHECK(report.trace.termination == Termination::kConverged);
  CHECK(std::abs(report.trace.rounds[0].objective_p1 - 5.6875) <= 1e-3);
  CHECK(report.verification.passed);
  // Player II parks the play in state 3's zero-reward loop.
  CHECK(report.g_star.choice[2] == 1);
  const EnumerationReport oracle = SolveByEnumeration(game);
  CHECK(testing::MaxAbsDiff(report.value, oracle.solution.value) <= 1e-6);
}

TEST_CASE("single-state game") {
  const StochasticGame game = LoadGame(DataPath("single_state.json"));
  const SolutionReport report = BestResponseIteration(game);
  CHECK(report.trace.rounds.size() == 1);
  CHECK(report.value == std::vector<double>{2.5});
  CHECK(report.verification.passed);
}

TEST_CASE("random initial strategy is reproducible") {
  const StochasticGame game = LoadGame(DataPath("example1.json"));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = RandomPureStrategy(game, Player::kTwo, seed);
    CHECK(a == RandomPureStrategy(game, Player::kTwo, seed));
    CHECK_NOTHROW(ValidateStrategy(game, a));
    CHECK(a.choice[0] == 0);
  }
}

TEST_CASE("verification names an improving deviation") {
  const StochasticGame game = LoadGame(DataPath("example1.json"));
  const PureStationaryStrategy f{Player::kOne, {1, 0, 0}};  // swapped state-1 action
  const PureStationaryStrategy g{Player::kTwo, {0, 0, 0}};
  const VerificationReport report = VerifyOptimality(game, f, g);
  CHECK_FALSE(report.passed);
  REQUIRE(report.worst.has_value());
  // Independent check: the named deviation really improves on the pair.
  const auto base = UndiscountedValue(game, f, g);
  const Deviation& d = *report.worst;
  const auto deviated = d.player == Player::kOne ? UndiscountedValue(game, d.strategy, g)
                                                 : UndiscountedValue(game, f, d.strategy);
  const double improvement = d.player == Player::kOne ? deviated[d.state] - base[d.state]
                                                      : base[d.state] - deviated[d.state];
  CHECK(improvement == doctest::Approx(d.gain));
  CHECK(improvement > 1e-6);
}

TEST_CASE("iteration cap and trace") {
  const StochasticGame game = LoadGame(DataPath("example2.json"));
  IterationOptions options;
  options.initial_g = PureStationaryStrategy{Player::kTwo, {0, 0, 0, 0}};
  options.max_iter = 1;
  try {
    BestResponseIteration(game, options);
    FAIL("expected IterationCapExceeded");
  } catch (const IterationError& e) {
    CHECK(e.code() == ErrorCode::kIterationCapExceeded);
    CHECK(e.trace().rounds.size() == 1);
    CHECK(e.trace().termination == Termination::kIterationCap);
  }
}

TEST_CASE("simulation") {
  SUBCASE("constant reward") {
    const StochasticGame game = LoadGame(DataPath("single_state.json"));
    const PureStationaryStrategy f{Player::kOne, {0}}, g{Player::kTwo, {0}};
    CHECK(SimulatePlay(game, f, g, 0, 1, 1) == 2.5);
    CHECK(SimulatePlay(game, f, g, 0, 1000, 9) == 2.5);
  }
  SUBCASE("two-cycle") {
    const StochasticGame game = LoadGame(DataPath("two_cycle.json"));
    const PureStationaryStrategy f{Player::kOne, {0, 0}}, g{Player::kTwo, {0, 0}};
    const std::int64_t horizon = 100001;
    CHECK(std::abs(SimulatePlay(game, f, g, 0, horizon, 3) - 0.5) <= 1.0 / horizon);
    CHECK(std::abs(SimulatePlay(game, f, g, 1, horizon, 3) - 0.5) <= 1.0 / horizon);
  }
  SUBCASE("bit reproducible") {
    const StochasticGame game = LoadGame(DataPath("example1.json"));
    const PureStationaryStrategy f{Player::kOne, {0, 0, 0}}, g{Player::kTwo, {0, 0, 0}};
    CHECK(SimulatePlay(game, f, g, 0, 5000, 42) == SimulatePlay(game, f, g, 0, 5000, 42));
  }
  SUBCASE("example 1 final pair") {
    const StochasticGame game = LoadGame(DataPath("example1.json"));
    const PureStationaryStrategy f{Player::kOne, {0, 0, 0}}, g{Player::kTwo, {0, 0, 0}};
    const double phi = UndiscountedValue(game, f, g)[0];
    double mean = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      mean += SimulatePlay(game, f, g, 0, 100'000, seed);
    }
    CHECK(std::abs(mean / 20.0 - phi) <= 0.05);
  }
}

TEST_CASE("converged pairs are optimal and each response is a true best response") {
  int converged = 0, rises = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const StochasticGame game = RandomGame({}, seed);
    IterationOptions options;
    options.initial_g = RandomStart{seed};
    try {
      const SolutionReport report = BestResponseIteration(game, options);
      ++converged;
      CHECK(report.verification.passed);
      const auto& rounds = report.trace.rounds;
      for (std::size_t k = 0; k < rounds.size(); ++k) {
        const auto best = testing::BruteForceOptimalGain(ReduceToMdp(game, rounds[k].f));
        CHECK(testing::MaxAbsDiff(rounds[k].gain_p2, best) <= 1e-6);
        if (k > 0 && rounds[k].objective_p2 > rounds[k - 1].objective_p2 + 1e-9) ++rises;
      }
    } catch (const IterationError& e) {
      MESSAGE("seed " << seed << ": " << std::string(e.what()));
    }
  }
  CHECK(converged > 0);
  // Player II's weighted value is measured against a different f each round,
  // so it is free to go up. Seed 61 goes from -0.0196 to 0.4894.
  MESSAGE("rounds where player II's LP value rose: " << rises);
}

TEST_CASE("player II's LP value can rise between rounds") {
  const StochasticGame game = RandomGame({}, 61);
  IterationOptions options;
  options.initial_g = RandomStart{61};
  const SolutionReport report = BestResponseIteration(game, options);
  const auto& rounds = report.trace.rounds;
  REQUIRE(rounds.size() >= 2);
  // Independent recomputation of both objectives by enumeration.
  const auto beta = UniformWeights(game.num_states());
  double before = 0.0, after = 0.0;
  const auto b0 = testing::BruteForceOptimalGain(ReduceToMdp(game, rounds[0].f));
  const auto b1 = testing::BruteForceOptimalGain(ReduceToMdp(game, rounds[1].f));
  for (int s = 0; s < game.num_states(); ++s) {
    before += beta[s] * b0[s];
    after += beta[s] * b1[s];
  }
  CHECK(after > before + 0.1);
  CHECK(report.verification.passed);
}

}  // namespace
}  // namespace pisg
