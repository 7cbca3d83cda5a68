#include "pisg/report.h"

#include <cmath>

namespace pisg {

double RoundForReport(double value) {
  const double rounded = std::round(value * 1e6) / 1e6;
  return rounded == 0.0 ? 0.0 : rounded;  // no "-0"
}

ReportJson ReportHeader(std::string_view command) {
  ReportJson out;
  out["schema_version"] = kReportSchemaVersion;
  out["tool"] = "pisg";
  out["version"] = kToolVersion;
  out["command"] = command;
  return out;
}

ReportJson GameDigest(const StochasticGame& game) {
  ReportJson out;
  out["states"] = game.num_states();
  ReportJson controller = ReportJson::array();
  ReportJson a1 = ReportJson::array(), a2 = ReportJson::array();
  for (int s = 0; s < game.num_states(); ++s) {
    controller.push_back(PlayerName(game.controller(s)));
    a1.push_back(game.num_actions(Player::kOne, s));
    a2.push_back(game.num_actions(Player::kTwo, s));
  }
  out["controller"] = controller;
  out["actions_p1"] = a1;
  out["actions_p2"] = a2;
  out["pure_strategies_p1"] = CountPureStrategies(game, Player::kOne);
  out["pure_strategies_p2"] = CountPureStrategies(game, Player::kTwo);
  return out;
}

ReportJson StrategyJson(const PureStationaryStrategy& strategy) {
  ReportJson out = ReportJson::array();
  for (int c : strategy.choice) out.push_back(c + 1);
  return out;
}

ReportJson ValuesJson(const std::vector<double>& values) {
  ReportJson out = ReportJson::array();
  for (double v : values) out.push_back(RoundForReport(v));
  return out;
}

ReportJson VerificationJson(const VerificationReport& report) {
  ReportJson out;
  out["passed"] = report.passed;
  out["deviations_checked"] = report.deviations_checked;
  out["worst_margin"] = ValuesJson(report.worst_margin);
  if (report.worst) {
    ReportJson dev;
    dev["player"] = PlayerName(report.worst->player);
    dev["state"] = report.worst->state + 1;
    dev["strategy"] = StrategyJson(report.worst->strategy);
    dev["improvement"] = RoundForReport(report.worst->gain);
    out["worst_deviation"] = dev;
  } else {
    out["worst_deviation"] = nullptr;
  }
  return out;
}

ReportJson TraceJson(const IterationTrace& trace) {
  ReportJson out;
  out["termination"] = TerminationName(trace.termination);
  out["rounds"] = trace.rounds.size();
  ReportJson rounds = ReportJson::array();
  for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
    const Round& r = trace.rounds[k];
    ReportJson item;
    item["k"] = k;
    item["g"] = StrategyJson(r.g);
    item["f"] = StrategyJson(r.f);
    item["objective_p1"] = RoundForReport(r.objective_p1);
    item["objective_p2"] = RoundForReport(r.objective_p2);
    item["gain_p1"] = ValuesJson(r.gain_p1);
    item["gain_p2"] = ValuesJson(r.gain_p2);
    item["g_response"] = StrategyJson(r.g_response);
    rounds.push_back(item);
  }
  out["history"] = rounds;
  return out;
}

ReportJson SolutionJson(const SolutionReport& report,
                        const std::vector<double>& beta) {
  ReportJson out;
  out["f_star"] = StrategyJson(report.f_star);
  out["g_star"] = StrategyJson(report.g_star);
  out["value"] = ValuesJson(report.value);
  double weighted = 0.0;
  for (std::size_t s = 0; s < beta.size() && s < report.value.size(); ++s) {
    weighted += beta[s] * report.value[s];
  }
  out["beta"] = ValuesJson(beta);
  out["weighted_value"] = RoundForReport(weighted);
  out["verification"] = VerificationJson(report.verification);
  return out;
}

ReportJson PayoffMatrixJson(const PayoffMatrix& matrix,
                            const SaddleCertificate* saddle) {
  ReportJson out;
  out["initial_state"] = matrix.initial_state + 1;
  ReportJson rows = ReportJson::array(), cols = ReportJson::array();
  for (const auto& f : matrix.rows) rows.push_back(StrategyJson(f));
  for (const auto& g : matrix.cols) cols.push_back(StrategyJson(g));
  out["row_strategies"] = rows;
  out["col_strategies"] = cols;
  ReportJson values = ReportJson::array();
  for (int i = 0; i < matrix.values.rows(); ++i) {
    values.push_back(ValuesJson({matrix.values.row(i).begin(), matrix.values.row(i).end()}));
  }
  out["values"] = values;
  if (saddle) {
    ReportJson cert;
    cert["row"] = saddle->row + 1;
    cert["col"] = saddle->col + 1;
    cert["value"] = RoundForReport(saddle->value);
    cert["slack"] = RoundForReport(saddle->slack);
    out["saddle"] = cert;
  } else {
    out["saddle"] = nullptr;
  }
  return out;
}

}  // namespace pisg
