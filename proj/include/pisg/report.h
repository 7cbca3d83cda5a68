#ifndef PISG_REPORT_H_
#define PISG_REPORT_H_

#include <string_view>
#include <vector>

#include "json.hpp"
#include "pisg/algorithm.h"
#include "pisg/game.h"
#include "pisg/oracle.h"

namespace pisg {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";

using ReportJson = nlohmann::ordered_json;

// Reports carry values rounded to six decimals so that the structured output
// is byte-stable; all numerical checks use the unrounded values.
double RoundForReport(double value);

ReportJson ReportHeader(std::string_view command);
ReportJson GameDigest(const StochasticGame& game);
// Strategies are printed as 1-indexed action labels per state.
ReportJson StrategyJson(const PureStationaryStrategy& strategy);
ReportJson ValuesJson(const std::vector<double>& values);
ReportJson VerificationJson(const VerificationReport& report);
ReportJson TraceJson(const IterationTrace& trace);
ReportJson SolutionJson(const SolutionReport& report,
                        const std::vector<double>& beta);
ReportJson PayoffMatrixJson(const PayoffMatrix& matrix,
                            const SaddleCertificate* saddle);

}  // namespace pisg

#endif  // PISG_REPORT_H_
