// Python bindings. Strategies and states cross the boundary 1-indexed, the
// same way the command-line tool prints them; reports come back as dicts.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "pisg/algorithm.h"
#include "pisg/game.h"
#include "pisg/lp.h"
#include "pisg/markov.h"
#include "pisg/mdp.h"
#include "pisg/oracle.h"
#include "pisg/report.h"

namespace py = pybind11;

namespace pisg {
namespace {

// Leaked on purpose: the type must outlive interpreter teardown.
py::object* error_type = nullptr;

py::object ToPython(const ReportJson& json) {
  return py::module_::import("json").attr("loads")(json.dump());
}

PureStationaryStrategy FromLabels(const StochasticGame& game, Player player,
                                  const std::vector<int>& labels) {
  PureStationaryStrategy s{player, {}};
  for (int label : labels) s.choice.push_back(label - 1);
  ValidateStrategy(game, s);
  return s;
}

Matrix FromRows(const std::vector<std::vector<double>>& rows, int cols) {
  Matrix m(static_cast<int>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != cols) {
      throw py::value_error("ragged matrix");
    }
    for (int j = 0; j < cols; ++j) m(static_cast<int>(i), j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> ToRows(const Matrix& m) {
  std::vector<std::vector<double>> out(m.rows());
  for (int i = 0; i < m.rows(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

py::dict SolveDict(const StochasticGame& game, std::optional<std::vector<double>> beta,
               std::optional<std::vector<int>> initial_g, std::optional<std::uint64_t> seed,
               int max_iter) {
  IterationOptions options;
  options.max_iter = max_iter;
  options.beta = beta ? *beta : UniformWeights(game.num_states());
  if (initial_g) {
    options.initial_g = FromLabels(game, Player::kTwo, *initial_g);
  } else if (seed) {
    options.initial_g = RandomStart{*seed};
  } else {
    options.initial_g =
        PureStationaryStrategy{Player::kTwo, std::vector<int>(game.num_states(), 0)};
  }
  const SolutionReport report = BestResponseIteration(game, options);
  ReportJson out = SolutionJson(report, options.beta);
  out["trace"] = TraceJson(report.trace);
  // Unrounded values for callers that compare numerically.
  out["value_exact"] = report.value;
  return ToPython(out);
}

py::dict EnumerateDict(const StochasticGame& game, std::uint64_t limit, int threads) {
  const EnumerationReport oracle = SolveByEnumeration(game, OracleOptions{limit, threads});
  ReportJson out = SolutionJson(oracle.solution, UniformWeights(game.num_states()));
  ReportJson matrices = ReportJson::array();
  for (std::size_t s = 0; s < oracle.matrices.size(); ++s) {
    matrices.push_back(PayoffMatrixJson(oracle.matrices[s], &oracle.saddles[s]));
  }
  out["matrices"] = matrices;
  out["value_exact"] = oracle.solution.value;
  return ToPython(out);
}

py::dict SolveLpDict(const std::string& sense, const std::vector<double>& cost,
                     const std::vector<std::vector<double>>& a, const std::vector<double>& b) {
  LinearProgram lp;
  if (sense == "max") {
    lp.sense = Sense::kMaximize;
  } else if (sense == "min") {
    lp.sense = Sense::kMinimize;
  } else {
    throw py::value_error("sense must be 'max' or 'min'");
  }
  lp.cost = cost;
  lp.a = FromRows(a, static_cast<int>(cost.size()));
  lp.b = b;
  if (b.size() != a.size()) throw py::value_error("b must have one entry per row");
  const LpSolution sol = SolveLp(lp);
  py::dict out;
  out["status"] = std::string(LpStatusName(sol.status));
  out["x"] = sol.x;
  out["objective"] = sol.objective;
  out["basis"] = sol.basis;
  out["iterations"] = sol.iterations;
  return out;
}

}  // namespace
}  // namespace pisg

PYBIND11_MODULE(pypisg, m) {
  using namespace pisg;
  m.doc() = "Perfect-information stochastic games under the limiting average criterion";
  m.attr("__version__") = std::string(kToolVersion);

  error_type = new py::object(py::exception<Error>(m, "PisgError"));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = (*error_type)(std::string(e.what()));
      instance.attr("code") = std::string(ErrorName(e.code()));
      PyErr_SetObject(error_type->ptr(), instance.ptr());
    }
  });

  py::class_<StochasticGame>(m, "Game")
      .def_property_readonly("num_states", &StochasticGame::num_states)
      .def("controller",
           [](const StochasticGame& g, int s) {
             return std::string(PlayerName(g.controller(s - 1)));
           })
      .def("num_actions",
           [](const StochasticGame& g, int player, int s) {
             return g.num_actions(player == 1 ? Player::kOne : Player::kTwo, s - 1);
           })
      .def("count_strategies",
           [](const StochasticGame& g, int player) {
             return CountPureStrategies(g, player == 1 ? Player::kOne : Player::kTwo);
           })
      .def("to_json", &SerializeGame)
      .def("__eq__", [](const StochasticGame& a, const StochasticGame& b) { return a == b; });

  m.def("parse_game", [](const std::string& text) { return ParseGame(text); }, py::arg("text"));
  m.def("load_game", &LoadGame, py::arg("path"));
  m.def("random_game", [](std::uint64_t seed) { return RandomGame({}, seed); },
        py::arg("seed"));

  m.def("solve", &SolveDict, py::arg("game"), py::arg("beta") = py::none(),
        py::arg("initial_g") = py::none(), py::arg("seed") = py::none(),
        py::arg("max_iter") = kDefaultMaxIterations,
        "Best-response iteration; returns the solution report as a dict.");
  m.def("enumerate", &EnumerateDict, py::arg("game"),
        py::arg("limit") = static_cast<std::uint64_t>(kDefaultSizeLimit),
        py::arg("threads") = 1, "Exhaustive enumeration; returns the solution report.");
  m.def(
      "value",
      [](const StochasticGame& game, const std::vector<int>& f, const std::vector<int>& g) {
        return UndiscountedValue(game, FromLabels(game, Player::kOne, f),
                                 FromLabels(game, Player::kTwo, g));
      },
      py::arg("game"), py::arg("f"), py::arg("g"));
  m.def(
      "verify",
      [](const StochasticGame& game, const std::vector<int>& f, const std::vector<int>& g) {
        return ToPython(VerificationJson(VerifyOptimality(
            game, FromLabels(game, Player::kOne, f), FromLabels(game, Player::kTwo, g))));
      },
      py::arg("game"), py::arg("f"), py::arg("g"));
  m.def(
      "simulate",
      [](const StochasticGame& game, const std::vector<int>& f, const std::vector<int>& g,
         int start, std::int64_t horizon, std::uint64_t seed) {
        if (start < 1 || start > game.num_states()) throw py::value_error("bad start state");
        if (horizon < 1) throw py::value_error("horizon must be at least 1");
        return SimulatePlay(game, FromLabels(game, Player::kOne, f),
                            FromLabels(game, Player::kTwo, g), start - 1, horizon, seed);
      },
      py::arg("game"), py::arg("f"), py::arg("g"), py::arg("start") = 1,
      py::arg("horizon") = 100000, py::arg("seed") = 0);
  m.def(
      "cesaro_limit",
      [](const std::vector<std::vector<double>>& q) {
        return ToRows(CesaroLimit(FromRows(q, static_cast<int>(q.size()))));
      },
      py::arg("q"));
  m.def("solve_lp", &SolveLpDict, py::arg("sense"), py::arg("cost"), py::arg("a"),
        py::arg("b"), "Standard-form LP: optimize cost.x subject to a x = b, x >= 0.");
}
