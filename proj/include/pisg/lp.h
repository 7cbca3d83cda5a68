#ifndef PISG_LP_H_
#define PISG_LP_H_

#include <iosfwd>
#include <string_view>
#include <vector>

#include "pisg/matrix.h"

namespace pisg {

enum class Sense { kMaximize, kMinimize };

// optimize cost . x  subject to  a x = b,  x >= 0.
struct LinearProgram {
  Sense sense = Sense::kMaximize;
  std::vector<double> cost;
  Matrix a;
  std::vector<double> b;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };
std::string_view LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  // Basic column per surviving constraint row (redundant rows are dropped).
  std::vector<int> basis;
  int iterations = 0;
};

inline constexpr double kSimplexPivotTolerance = 1e-11;
inline constexpr double kFeasibilityTolerance = 1e-9;

struct SimplexOptions {
  // When set, every pivot and the tableau after it are written here.
  std::ostream* trace = nullptr;
  int max_iterations = 100000;
};

// Dense two-phase primal simplex with Bland's rule. Deterministic for a given
// input. Throws Error(kNumericalBreakdown) if the tableau loses feasibility
// or the iteration budget runs out.
LpSolution SolveLp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace pisg

#endif  // PISG_LP_H_
