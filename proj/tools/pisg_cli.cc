// pisg: solve perfect-information stochastic games under the limiting
// average criterion, by best-response iteration or by exhaustive enumeration.
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "pisg/algorithm.h"
#include "pisg/game.h"
#include "pisg/markov.h"
#include "pisg/mdp.h"
#include "pisg/oracle.h"
#include "pisg/report.h"

namespace pisg {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

// Error raised for bad flag values that CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string Fixed(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << RoundForReport(v);
  return out.str();
}

std::string Join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += "  ";
    out += Fixed(values[i]);
  }
  return out;
}

std::vector<double> ParseBeta(const std::string& text, int num_states) {
  if (text == "uniform") return UniformWeights(num_states);
  std::vector<double> beta;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) beta.push_back(ParseProbability(item));
  if (static_cast<int>(beta.size()) != num_states) {
    throw UsageError("--beta needs " + std::to_string(num_states) + " weights, got " +
                     std::to_string(beta.size()));
  }
  return beta;
}

int StateFlag(const StochasticGame& game, int one_based, const char* flag) {
  if (one_based < 1 || one_based > game.num_states()) {
    throw UsageError(std::string(flag) + " must be in 1.." +
                     std::to_string(game.num_states()));
  }
  return one_based - 1;
}

class Clock {
 public:
  Clock() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void Emit(ReportJson report, bool timing, const Clock& clock) {
  if (timing) report["timing"] = {{"wall_seconds", clock.Seconds()}};
  std::cout << report.dump(2) << "\n";
}

// ---- validate ----

struct ValidateArgs {
  std::string path;
  bool json = false;
};

int RunValidate(const ValidateArgs& args) {
  const StochasticGame game = LoadGame(args.path);
  if (args.json) {
    ReportJson report = ReportHeader("validate");
    report["input"] = args.path;
    report["game"] = GameDigest(game);
    report["valid"] = true;
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << args.path << ": valid, " << game.num_states() << " states, "
              << CountPureStrategies(game, Player::kOne) << " x "
              << CountPureStrategies(game, Player::kTwo) << " pure stationary strategies\n";
  }
  return kExitOk;
}

// ---- solve ----

struct SolveArgs {
  std::string path;
  std::string beta = "uniform";
  std::optional<std::uint64_t> seed;
  std::string initial_g;
  int max_iter = kDefaultMaxIterations;
  bool json = false;
  bool timing = false;
};

void PrintRounds(const IterationTrace& trace) {
  std::cout << "round  g            f            max R (P1)    min R (P2)\n";
  for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
    const Round& r = trace.rounds[k];
    std::cout << std::left << std::setw(7) << k << std::setw(13) << FormatStrategy(r.g)
              << std::setw(13) << FormatStrategy(r.f) << std::setw(14) << Fixed(r.objective_p1)
              << Fixed(r.objective_p2) << "\n";
  }
  std::cout << std::right;
}

int RunSolve(const SolveArgs& args) {
  const Clock clock;
  const StochasticGame game = LoadGame(args.path);
  IterationOptions options;
  options.max_iter = args.max_iter;
  options.beta = ParseBeta(args.beta, game.num_states());
  if (!args.initial_g.empty()) {
    options.initial_g = ParseStrategy(game, Player::kTwo, args.initial_g);
  } else if (args.seed) {
    options.initial_g = RandomStart{*args.seed};
  } else {
    options.initial_g =
        PureStationaryStrategy{Player::kTwo, std::vector<int>(game.num_states(), 0)};
  }

  ReportJson report = ReportHeader("solve");
  report["input"] = args.path;
  report["seed"] = args.seed ? ReportJson(*args.seed) : ReportJson(nullptr);
  report["game"] = GameDigest(game);
  try {
    const SolutionReport solution = BestResponseIteration(game, options);
    report["result"] = SolutionJson(solution, options.beta);
    report["trace"] = TraceJson(solution.trace);
    if (args.json) {
      Emit(report, args.timing, clock);
    } else {
      PrintRounds(solution.trace);
      std::cout << "converged after " << solution.trace.rounds.size() << " round(s)\n"
                << "f* = " << FormatStrategy(solution.f_star) << "\n"
                << "g* = " << FormatStrategy(solution.g_star) << "\n"
                << "value = " << Join(solution.value) << "\n"
                << "weighted value = " << Fixed(report["result"]["weighted_value"].get<double>())
                << "\n"
                << "verification: "
                << (solution.verification.passed ? "passed" : "FAILED") << " ("
                << solution.verification.deviations_checked << " deviations)\n";
      if (args.timing) std::cout << "wall time " << clock.Seconds() << " s\n";
    }
    return solution.verification.passed ? kExitOk : kExitDomain;
  } catch (const IterationError& e) {
    report["result"] = nullptr;
    report["error"] = e.what();
    report["trace"] = TraceJson(e.trace());
    if (args.json) {
      Emit(report, args.timing, clock);
    } else {
      PrintRounds(e.trace());
    }
    std::cerr << "error: " << e.what() << "\n"
              << "hint: run `pisg enumerate " << args.path
              << "` for the exhaustive solution\n";
    return kExitDomain;
  }
}

// ---- enumerate ----

struct EnumerateArgs {
  std::string path;
  int state = 0;  // 1-based, 0 = all
  std::uint64_t limit = static_cast<std::uint64_t>(kDefaultSizeLimit);
  int threads = 1;
  bool json = false;
  bool timing = false;
};

void PrintMatrix(const PayoffMatrix& m, const SaddleCertificate& saddle) {
  std::cout << "initial state " << m.initial_state + 1 << ": " << m.values.rows() << " x "
            << m.values.cols() << " payoff matrix (rows P1, columns P2)\n";
  std::cout << std::setw(12) << "";
  for (const auto& g : m.cols) std::cout << std::setw(12) << FormatStrategy(g);
  std::cout << "\n";
  for (int i = 0; i < m.values.rows(); ++i) {
    std::cout << std::setw(12) << FormatStrategy(m.rows[i]);
    for (int j = 0; j < m.values.cols(); ++j) {
      std::string cell = Fixed(m.values(i, j));
      if (i == saddle.row && j == saddle.col) cell += "*";
      std::cout << std::setw(12) << cell;
    }
    std::cout << "\n";
  }
  std::cout << "saddle at row " << saddle.row + 1 << ", column " << saddle.col + 1
            << ", value " << Fixed(saddle.value) << "\n\n";
}

int RunEnumerate(const EnumerateArgs& args) {
  const Clock clock;
  const StochasticGame game = LoadGame(args.path);
  std::optional<int> only;
  if (args.state != 0) only = StateFlag(game, args.state, "--state");
  const EnumerationReport oracle =
      SolveByEnumeration(game, OracleOptions{args.limit, args.threads});

  ReportJson report = ReportHeader("enumerate");
  report["input"] = args.path;
  report["game"] = GameDigest(game);
  ReportJson matrices = ReportJson::array();
  for (std::size_t s = 0; s < oracle.matrices.size(); ++s) {
    if (only && static_cast<int>(s) != *only) continue;
    matrices.push_back(PayoffMatrixJson(oracle.matrices[s], &oracle.saddles[s]));
  }
  report["matrices"] = matrices;
  report["result"] = SolutionJson(oracle.solution, UniformWeights(game.num_states()));
  if (args.json) {
    Emit(report, args.timing, clock);
  } else {
    for (std::size_t s = 0; s < oracle.matrices.size(); ++s) {
      if (only && static_cast<int>(s) != *only) continue;
      PrintMatrix(oracle.matrices[s], oracle.saddles[s]);
    }
    std::cout << "assembled f* = " << FormatStrategy(oracle.solution.f_star) << "\n"
              << "assembled g* = " << FormatStrategy(oracle.solution.g_star) << "\n"
              << "value = " << Join(oracle.solution.value) << "\n"
              << "verification: "
              << (oracle.solution.verification.passed ? "passed" : "FAILED") << "\n";
    if (args.timing) std::cout << "wall time " << clock.Seconds() << " s\n";
  }
  return oracle.solution.verification.passed ? kExitOk : kExitDomain;
}

// ---- compare ----

struct CompareArgs {
  std::string path;
  int random = 0;
  std::uint64_t seed = 0;
  std::uint64_t limit = static_cast<std::uint64_t>(kDefaultSizeLimit);
  int threads = 1;
  bool json = false;
  bool timing = false;
};

struct Comparison {
  ReportJson json;
  bool ok = true;
  bool flagged = false;
};

Comparison CompareOne(const StochasticGame& game, const IterationOptions& options,
                      const OracleOptions& limits) {
  Comparison out;
  const EnumerationReport oracle = SolveByEnumeration(game, limits);
  out.json["oracle_value"] = ValuesJson(oracle.solution.value);
  out.json["oracle_verified"] = oracle.solution.verification.passed;
  out.ok = oracle.solution.verification.passed;
  try {
    const SolutionReport iterated = BestResponseIteration(game, options);
    double discrepancy = 0.0;
    for (std::size_t s = 0; s < iterated.value.size(); ++s) {
      discrepancy =
          std::max(discrepancy, std::abs(iterated.value[s] - oracle.solution.value[s]));
    }
    out.json["termination"] = TerminationName(iterated.trace.termination);
    out.json["rounds"] = iterated.trace.rounds.size();
    out.json["iteration_value"] = ValuesJson(iterated.value);
    out.json["iteration_verified"] = iterated.verification.passed;
    out.json["discrepancy"] = RoundForReport(discrepancy);
    out.ok = out.ok && iterated.verification.passed && discrepancy <= kGainTolerance;
  } catch (const IterationError& e) {
    // Termination of the iteration is not guaranteed; flag, do not fail.
    out.flagged = true;
    out.json["termination"] = TerminationName(e.trace().termination);
    out.json["rounds"] = e.trace().rounds.size();
    out.json["iteration_value"] = nullptr;
    out.json["iteration_verified"] = nullptr;
    out.json["discrepancy"] = nullptr;
  }
  out.json["ok"] = out.ok;
  out.json["flagged"] = out.flagged;
  return out;
}

int RunCompare(const CompareArgs& args) {
  const Clock clock;
  if (args.path.empty() == (args.random == 0)) {
    throw UsageError("compare needs exactly one of a game file or --random N");
  }
  const OracleOptions limits{args.limit, args.threads};
  ReportJson report = ReportHeader("compare");
  ReportJson games = ReportJson::array();
  int failures = 0, flagged = 0;
  auto record = [&](Comparison c, ReportJson id) {
    failures += !c.ok;
    flagged += c.flagged;
    ReportJson item = std::move(id);
    item.update(c.json);
    games.push_back(item);
  };
  if (!args.path.empty()) {
    const StochasticGame game = LoadGame(args.path);
    report["input"] = args.path;
    IterationOptions options;
    options.initial_g =
        PureStationaryStrategy{Player::kTwo, std::vector<int>(game.num_states(), 0)};
    record(CompareOne(game, options, limits), ReportJson{{"input", args.path}});
  } else {
    report["random"] = args.random;
    report["seed"] = args.seed;
    for (int i = 0; i < args.random; ++i) {
      const std::uint64_t seed = args.seed + static_cast<std::uint64_t>(i);
      const StochasticGame game = RandomGame({}, seed);
      IterationOptions options;
      options.initial_g = RandomStart{seed};
      record(CompareOne(game, options, limits), ReportJson{{"seed", seed}});
    }
  }
  report["games"] = games;
  report["failures"] = failures;
  report["flagged_non_convergence"] = flagged;
  if (args.json) {
    Emit(report, args.timing, clock);
  } else {
    std::cout << std::left << std::setw(24) << "game"
              << "termination     rounds  discrepancy  verified\n";
    for (const auto& g : games) {
      const std::string id =
          g.contains("seed") ? "seed " + std::to_string(g["seed"].get<std::uint64_t>())
                             : g["input"].get<std::string>();
      std::cout << std::left << std::setw(24) << id << std::setw(16)
                << g["termination"].get<std::string>() << std::setw(8)
                << g["rounds"].get<std::size_t>() << std::setw(13)
                << (g["discrepancy"].is_null() ? std::string("-")
                                               : Fixed(g["discrepancy"].get<double>()))
                << (g["ok"].get<bool>() ? "yes" : "NO") << (g["flagged"].get<bool>() ? " (flagged)" : "")
                << "\n";
    }
    std::cout << std::right << games.size() << " game(s), " << failures << " failure(s), "
              << flagged << " flagged non-convergence\n";
    if (args.timing) std::cout << "wall time " << clock.Seconds() << " s\n";
  }
  return failures == 0 ? kExitOk : kExitDomain;
}

// ---- simulate ----

struct SimulateArgs {
  std::string path;
  std::string f, g;
  int start = 1;
  std::int64_t horizon = 100'000;
  std::uint64_t seed = 0;
  int reps = 1;
  bool json = false;
  bool timing = false;
};

int RunSimulate(const SimulateArgs& args) {
  const Clock clock;
  const StochasticGame game = LoadGame(args.path);
  const PureStationaryStrategy f = ParseStrategy(game, Player::kOne, args.f);
  const PureStationaryStrategy g = ParseStrategy(game, Player::kTwo, args.g);
  const int start = StateFlag(game, args.start, "--start");
  if (args.horizon < 1) throw UsageError("--horizon must be at least 1");
  if (args.reps < 1) throw UsageError("--reps must be at least 1");

  std::vector<double> samples;
  for (int r = 0; r < args.reps; ++r) {
    samples.push_back(
        SimulatePlay(game, f, g, start, args.horizon, args.seed + static_cast<std::uint64_t>(r)));
  }
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(samples.size());
  double var = 0.0;
  for (double x : samples) var += (x - mean) * (x - mean);
  const double stddev =
      samples.size() > 1 ? std::sqrt(var / static_cast<double>(samples.size() - 1)) : 0.0;
  const double exact = UndiscountedValue(game, f, g)[start];

  ReportJson report = ReportHeader("simulate");
  report["input"] = args.path;
  report["seed"] = args.seed;
  report["game"] = GameDigest(game);
  report["f"] = StrategyJson(f);
  report["g"] = StrategyJson(g);
  report["start"] = args.start;
  report["horizon"] = args.horizon;
  report["reps"] = args.reps;
  report["samples"] = ValuesJson(samples);
  report["mean"] = RoundForReport(mean);
  report["stddev"] = RoundForReport(stddev);
  report["exact_value"] = RoundForReport(exact);
  report["abs_error"] = RoundForReport(std::abs(mean - exact));
  if (args.json) {
    Emit(report, args.timing, clock);
  } else {
    std::cout << "empirical mean " << Fixed(mean) << " +/- " << Fixed(stddev) << " over "
              << args.reps << " run(s) of " << args.horizon << " steps\n"
              << "exact value    " << Fixed(exact) << " from state " << args.start << "\n";
    if (args.timing) std::cout << "wall time " << clock.Seconds() << " s\n";
  }
  return kExitOk;
}

}  // namespace
}  // namespace pisg

int main(int argc, char** argv) {
  using namespace pisg;
  CLI::App app{"Perfect-information stochastic games under the limiting average criterion"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  ValidateArgs validate;
  auto* v = app.add_subcommand("validate", "Check a game file");
  v->add_option("game", validate.path, "Game file (JSON)")->required();
  v->add_flag("--json", validate.json, "Print a structured report");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Best-response iteration with LP best responses");
  s->add_option("game", solve.path, "Game file (JSON)")->required();
  s->add_option("--beta", solve.beta, "State weights: 'uniform' or a comma list")
      ->capture_default_str();
  auto* seed_opt = s->add_option("--seed", solve.seed, "Draw the initial P2 strategy at random");
  s->add_option("--initial-g", solve.initial_g, "Initial P2 strategy, e.g. 1,2,1")
      ->excludes(seed_opt);
  s->add_option("--max-iter", solve.max_iter, "Round limit")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  s->add_flag("--json", solve.json, "Print a structured report");
  s->add_flag("--timing", solve.timing, "Include wall-clock time");

  EnumerateArgs enumerate;
  auto* e = app.add_subcommand("enumerate", "Exhaustive payoff matrices and saddle points");
  e->add_option("game", enumerate.path, "Game file (JSON)")->required();
  e->add_option("--state", enumerate.state, "Only print this initial state's matrix (1-based)");
  e->add_option("--limit", enumerate.limit, "Maximum matrix entries")->capture_default_str();
  e->add_option("--threads", enumerate.threads, "Worker threads for the matrix fill")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  e->add_flag("--json", enumerate.json, "Print a structured report");
  e->add_flag("--timing", enumerate.timing, "Include wall-clock time");

  CompareArgs compare;
  auto* c = app.add_subcommand("compare", "Cross-check iteration against enumeration");
  c->add_option("game", compare.path, "Game file (JSON)");
  c->add_option("--random", compare.random, "Compare on N seeded random games instead")
      ->check(CLI::NonNegativeNumber);
  c->add_option("--seed", compare.seed, "First seed of the random corpus")
      ->capture_default_str();
  c->add_option("--limit", compare.limit, "Maximum matrix entries")->capture_default_str();
  c->add_option("--threads", compare.threads, "Worker threads for the matrix fill")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  c->add_flag("--json", compare.json, "Print a structured report");
  c->add_flag("--timing", compare.timing, "Include wall-clock time");

  SimulateArgs simulate;
  auto* m = app.add_subcommand("simulate", "Monte Carlo play of a fixed strategy pair");
  m->add_option("game", simulate.path, "Game file (JSON)")->required();
  m->add_option("--f", simulate.f, "P1 strategy, e.g. 1,1,1")->required();
  m->add_option("--g", simulate.g, "P2 strategy, e.g. 1,1,1")->required();
  m->add_option("--start", simulate.start, "Initial state (1-based)")->capture_default_str();
  m->add_option("--horizon", simulate.horizon, "Steps per run")->capture_default_str();
  m->add_option("--seed", simulate.seed, "Seed of the first run")->capture_default_str();
  m->add_option("--reps", simulate.reps, "Number of runs")->capture_default_str();
  m->add_flag("--json", simulate.json, "Print a structured report");
  m->add_flag("--timing", simulate.timing, "Include wall-clock time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (v->parsed()) return RunValidate(validate);
    if (s->parsed()) return RunSolve(solve);
    if (e->parsed()) return RunEnumerate(enumerate);
    if (c->parsed()) return RunCompare(compare);
    if (m->parsed()) return RunSimulate(simulate);
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitDomain;
  } catch (const std::system_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
