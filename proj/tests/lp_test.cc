#include <sstream>

#include "doctest.h"
#include "oracles.h"
#include "pisg/errors.h"
#include "pisg/lp.h"
#include "pisg/mdp.h"

namespace pisg {
namespace {

LinearProgram Lp(Sense sense, std::vector<double> cost,
                 std::vector<std::vector<double>> rows, std::vector<double> b) {
  LinearProgram lp;
  lp.sense = sense;
  lp.cost = std::move(cost);
  lp.a = Matrix(static_cast<int>(rows.size()), static_cast<int>(lp.cost.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      lp.a(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  lp.b = std::move(b);
  return lp;
}

void CheckFeasible(const LinearProgram& lp, const LpSolution& sol) {
  REQUIRE(sol.status == LpStatus::kOptimal);
  const std::vector<double> ax = lp.a * std::span<const double>(sol.x);
  for (int i = 0; i < lp.a.rows(); ++i) CHECK(std::abs(ax[i] - lp.b[i]) <= 1e-9);
  int positive = 0;
  double obj = 0.0;
  for (std::size_t j = 0; j < sol.x.size(); ++j) {
    CHECK(sol.x[j] >= 0.0);
    if (sol.x[j] > 0.0) ++positive;
    obj += lp.cost[j] * sol.x[j];
  }
  CHECK(positive <= lp.a.rows());
  CHECK(std::abs(obj - sol.objective) <= 1e-9);
}

TEST_CASE("one constraint") {
  const LinearProgram lp = Lp(Sense::kMaximize, {1, 0}, {{1, 1}}, {1});
  const LpSolution sol = SolveLp(lp);
  CheckFeasible(lp, sol);
  CHECK(sol.x == std::vector<double>{1, 0});
  CHECK(sol.objective == 1.0);
}

TEST_CASE("minimization and negative right-hand sides") {
  // min x0 + 2 x1 s.t. -x0 - x1 = -3, x0 - x2 = 1
  const LinearProgram lp =
      Lp(Sense::kMinimize, {1, 2, 0}, {{-1, -1, 0}, {1, 0, -1}}, {-3, 1});
  const LpSolution sol = SolveLp(lp);
  CheckFeasible(lp, sol);
  CHECK(sol.objective == doctest::Approx(3.0));
}

TEST_CASE("infeasible and unbounded") {
  CHECK(SolveLp(Lp(Sense::kMaximize, {1, 1}, {{1, 1}, {1, 1}}, {1, 2})).status ==
        LpStatus::kInfeasible);
  CHECK(SolveLp(Lp(Sense::kMaximize, {1, 0}, {{1, -1}}, {1})).status ==
        LpStatus::kUnbounded);
  CHECK(SolveLp(Lp(Sense::kMinimize, {1, 0}, {{1, -1}}, {1})).status ==
        LpStatus::kOptimal);
}

TEST_CASE("redundant constraints are dropped") {
  const LinearProgram lp =
      Lp(Sense::kMaximize, {1, 2, 0}, {{1, 1, 1}, {2, 2, 2}, {1, 0, 0}}, {4, 8, 1});
  const LpSolution sol = SolveLp(lp);
  CheckFeasible(lp, sol);
  CHECK(sol.objective == doctest::Approx(7.0));
  CHECK(sol.basis.size() == 2);
}

TEST_CASE("deterministic and traced") {
  std::mt19937_64 rng(3);
  const LinearProgram lp = testing::RandomBoundedLp(rng, 5, 9);
  const LpSolution a = SolveLp(lp);
  std::ostringstream trace;
  SimplexOptions options;
  options.trace = &trace;
  const LpSolution b = SolveLp(lp, options);
  CHECK(a.x == b.x);
  CHECK(a.basis == b.basis);
  CHECK(trace.str().find("phase1 iteration 1") != std::string::npos);
}

TEST_CASE("iteration budget") {
  std::mt19937_64 rng(5);
  const LinearProgram lp = testing::RandomBoundedLp(rng, 6, 12);
  SimplexOptions options;
  options.max_iterations = 1;
  try {
    SolveLp(lp, options);
    FAIL("expected NumericalBreakdown");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNumericalBreakdown);
  }
}

TEST_CASE("matches vertex enumeration on random bounded LPs") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  while (checked < 100) {
    const int m = std::uniform_int_distribution<int>(1, 6)(rng);
    const int n = std::uniform_int_distribution<int>(m, 12)(rng);
    const LinearProgram lp = testing::RandomBoundedLp(rng, m, n);
    const auto expected = testing::VertexEnumerationOptimum(lp);
    if (!expected) continue;  // rank-deficient draw
    const LpSolution sol = SolveLp(lp);
    CheckFeasible(lp, sol);
    CHECK(std::abs(sol.objective - *expected) <= 1e-7);
    ++checked;
  }
}

TEST_CASE("example LPs from the reduced MDPs") {
  // Player II frozen to its first action everywhere.
  const StochasticGame one = LoadGame(testing::DataPath("example1.json"));
  const PureStationaryStrategy g0{Player::kTwo, {0, 0, 0}};
  const HordijkLp hlp = BuildHordijkLp(ReduceToMdp(one, g0), UniformWeights(3));
  const LpSolution sol = SolveLp(hlp.lp);
  CheckFeasible(hlp.lp, sol);
  CHECK(std::abs(sol.objective - 2.778) <= 1e-3);

  const StochasticGame two = LoadGame(testing::DataPath("example2.json"));
  const HordijkLp hlp2 =
      BuildHordijkLp(ReduceToMdp(two, {Player::kTwo, {0, 0, 0, 0}}), UniformWeights(4));
  const LpSolution sol2 = SolveLp(hlp2.lp);
  CheckFeasible(hlp2.lp, sol2);
  CHECK(std::abs(sol2.objective - 5.6875) <= 1e-3);
}

}  // namespace
}  // namespace pisg
