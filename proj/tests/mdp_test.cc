#include "doctest.h"
#include "oracles.h"
#include "pisg/errors.h"
#include "pisg/mdp.h"

namespace pisg {
namespace {

using testing::DataPath;

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected pisg::Error");
  return ErrorCode::kSyntaxError;
}

MarkovDecisionProcess OneStateMdp(double reward) {
  MarkovDecisionProcess mdp;
  mdp.actions = {{MdpAction{reward, {1.0}}}};
  return mdp;
}

TEST_CASE("reduction with player II frozen (example 1)") {
  const StochasticGame game = LoadGame(DataPath("example1.json"));
  const MarkovDecisionProcess mdp = ReduceToMdp(game, {Player::kTwo, {0, 0, 0}});
  CHECK(mdp.orientation == Sense::kMaximize);
  CHECK(mdp.decision_maker == Player::kOne);
  REQUIRE(mdp.num_states() == 3);
  CHECK(mdp.actions[0].size() == 2);
  CHECK(mdp.actions[1].size() == 2);
  REQUIRE(mdp.actions[2].size() == 1);
  CHECK(mdp.actions[2][0].reward == 3.0);
  CHECK(mdp.actions[2][0].next == std::vector<double>{0, 0.5, 0.5});
}

TEST_CASE("reduction with player I frozen (example 1)") {
  const StochasticGame game = LoadGame(DataPath("example1.json"));
  const MarkovDecisionProcess mdp = ReduceToMdp(game, {Player::kOne, {0, 0, 0}});
  CHECK(mdp.orientation == Sense::kMinimize);
  CHECK(mdp.actions[0].size() == 1);
  CHECK(mdp.actions[0][0].reward == 5.0);
  CHECK(mdp.actions[1][0].reward == 1.0);
  REQUIRE(mdp.actions[2].size() == 3);
  CHECK(mdp.actions[2][1].reward == 4.0);
}

TEST_CASE("reduction when the free player controls nothing") {
  const StochasticGame game = LoadGame(DataPath("two_cycle.json"));
  const MarkovDecisionProcess mdp = ReduceToMdp(game, {Player::kOne, {0, 0}});
  for (const auto& actions : mdp.actions) CHECK(actions.size() == 1);
}

TEST_CASE("Hordijk LP shape and coefficients") {
  const StochasticGame game = LoadGame(DataPath("example1.json"));
  const MarkovDecisionProcess mdp = ReduceToMdp(game, {Player::kTwo, {0, 0, 0}});
  const HordijkLp hlp = BuildHordijkLp(mdp, UniformWeights(3));
  CHECK(hlp.lp.a.rows() == 6);
  CHECK(hlp.lp.a.cols() == 10);
  CHECK(hlp.num_pairs == 5);
  // Balance row for state 1 scaled by 6 reads 3 x11 + 6 x12 - 2 x21 = 0.
  CHECK(6 * hlp.lp.a(0, hlp.w_column(0, 0)) == doctest::Approx(3));
  CHECK(6 * hlp.lp.a(0, hlp.w_column(0, 1)) == doctest::Approx(6));
  CHECK(6 * hlp.lp.a(0, hlp.w_column(1, 0)) == doctest::Approx(-2));
  CHECK(hlp.lp.a(0, hlp.w_column(1, 1)) == 0.0);
  CHECK(hlp.lp.a(0, hlp.w_column(2, 0)) == 0.0);
  // Second family, state 3 scaled by 12: 12 x31 - 8 y21 - 12 y22 + 6 y31.
  CHECK(12 * hlp.lp.a(5, hlp.w_column(2, 0)) == doctest::Approx(12));
  CHECK(12 * hlp.lp.a(5, hlp.y_column(1, 0)) == doctest::Approx(-8));
  CHECK(12 * hlp.lp.a(5, hlp.y_column(1, 1)) == doctest::Approx(-12));
  CHECK(12 * hlp.lp.a(5, hlp.y_column(2, 0)) == doctest::Approx(6));
  CHECK(hlp.lp.b[5] == doctest::Approx(1.0 / 3.0));
  CHECK(hlp.lp.cost[hlp.w_column(0, 1)] == 7.0);
  CHECK(hlp.lp.cost[hlp.y_column(0, 1)] == 0.0);
}

TEST_CASE("bad weights") {
  const MarkovDecisionProcess mdp = OneStateMdp(1.0);
  CHECK(CodeOf([&] { BuildHordijkLp(mdp, {0.0}); }) == ErrorCode::kBadWeights);
  CHECK(CodeOf([&] { BuildHordijkLp(mdp, {0.5}); }) == ErrorCode::kBadWeights);
  CHECK(CodeOf([&] { BuildHordijkLp(mdp, {0.5, 0.5}); }) == ErrorCode::kBadWeights);
}

TEST_CASE("one-state MDP") {
  const AverageOptimalResult result = SolveAverageOptimal(OneStateMdp(4.25), {1.0});
  CHECK(result.objective == doctest::Approx(4.25));
  CHECK(result.policy == MdpPolicy{0});
  CHECK(result.solution.x[0] == doctest::Approx(1.0));
}

TEST_CASE("example 1 first LP") {
  const StochasticGame game = LoadGame(DataPath("example1.json"));
  const MarkovDecisionProcess mdp = ReduceToMdp(game, {Player::kTwo, {0, 0, 0}});
  const AverageOptimalResult result = SolveAverageOptimal(mdp, UniformWeights(3));
  CHECK(std::abs(result.objective - 2.778) <= 1e-3);
  // Occupation measure (2/9, 0, 1/3, 0, 4/9) as printed.
  const double w[] = {2.0 / 9.0, 0.0, 1.0 / 3.0, 0.0, 4.0 / 9.0};
  for (int c = 0; c < 5; ++c) CHECK(result.solution.x[c] == doctest::Approx(w[c]));
  CHECK(result.policy == MdpPolicy{0, 0, 0});
}

TEST_CASE("example 2 LPs") {
  const StochasticGame game = LoadGame(DataPath("example2.json"));
  const AverageOptimalResult p1 = SolveAverageOptimal(
      ReduceToMdp(game, {Player::kTwo, {0, 0, 0, 0}}), UniformWeights(4));
  CHECK(std::abs(p1.objective - 5.6875) <= 1e-3);
  CHECK(p1.policy == MdpPolicy{1, 1, 0, 0});

  // Player II's response to f = (2, 2): the zero-reward loop in state 3 is
  // reachable from everywhere, so the response takes it (value 0).
  const PureStationaryStrategy f = PolicyToStrategy(game, Player::kOne, p1.policy);
  const AverageOptimalResult p2 =
      SolveAverageOptimal(ReduceToMdp(game, f), UniformWeights(4));
  const PureStationaryStrategy g = PolicyToStrategy(game, Player::kTwo, p2.policy);
  CHECK(g.choice[2] == 1);
  CHECK(std::abs(p2.objective) <= 1e-9);
  for (double v : p2.gain) CHECK(std::abs(v) <= 1e-9);
  CHECK(testing::MaxAbsDiff(p2.gain, testing::BruteForceOptimalGain(ReduceToMdp(game, f))) <= 1e-9);
}

TEST_CASE("degenerate extraction") {
  const MarkovDecisionProcess mdp = OneStateMdp(1.0);
  const HordijkLp hlp = BuildHordijkLp(mdp, {1.0});
  LpSolution zero;
  zero.status = LpStatus::kOptimal;
  zero.x.assign(2, 0.0);
  CHECK(CodeOf([&] { ExtractPolicy(zero, hlp); }) == ErrorCode::kDegenerateExtraction);
}

TEST_CASE("extraction ties go to the lowest action") {
  MarkovDecisionProcess mdp;
  mdp.actions = {{MdpAction{1.0, {1.0}}, MdpAction{1.0, {1.0}}}};
  const HordijkLp hlp = BuildHordijkLp(mdp, {1.0});
  LpSolution split;
  split.status = LpStatus::kOptimal;
  split.x = {0.5, 0.5, 0.0, 0.0};
  CHECK(ExtractPolicy(split, hlp) == MdpPolicy{0});
}

TEST_CASE("matches brute force on random MDPs") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    const MarkovDecisionProcess mdp = testing::RandomMdp(rng, 5, 3, 200);
    const std::vector<double> beta = UniformWeights(mdp.num_states());
    const AverageOptimalResult result = SolveAverageOptimal(mdp, beta);
    const std::vector<double> best = testing::BruteForceOptimalGain(mdp);
    CHECK(testing::MaxAbsDiff(result.gain, best) <= 1e-6);
    double weighted = 0.0;
    for (int s = 0; s < mdp.num_states(); ++s) weighted += beta[s] * result.gain[s];
    CHECK(std::abs(weighted - result.objective) <= 1e-6);
  }
}

TEST_CASE("gain does not depend on the weights") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const MarkovDecisionProcess mdp = testing::RandomMdp(rng, 5, 3, 200);
    const int n = mdp.num_states();
    const AverageOptimalResult uniform = SolveAverageOptimal(mdp, UniformWeights(n));
    std::vector<double> beta(n);
    double total = 0.0;
    for (double& b : beta) total += (b = std::uniform_int_distribution<int>(1, 9)(rng));
    for (double& b : beta) b /= total;
    // Renormalize so the sum is 1 within 1e-12.
    beta.back() = 1.0;
    for (int s = 0; s + 1 < n; ++s) beta.back() -= beta[s];
    const AverageOptimalResult skewed = SolveAverageOptimal(mdp, beta);
    CHECK(testing::MaxAbsDiff(uniform.gain, skewed.gain) <= 1e-6);
  }
}

}  // namespace
}  // namespace pisg
