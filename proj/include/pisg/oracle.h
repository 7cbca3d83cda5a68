#ifndef PISG_ORACLE_H_
#define PISG_ORACLE_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "pisg/algorithm.h"
#include "pisg/errors.h"
#include "pisg/game.h"
#include "pisg/matrix.h"

namespace pisg {

// Ties in saddle tests are resolved with this tolerance.
inline constexpr double kSaddleTolerance = 1e-9;
inline constexpr std::uint64_t kDefaultSizeLimit = 1'000'000;

// Limiting-average payoff from one initial state for every pair of pure
// stationary strategies. Player I picks the row and maximizes.
struct PayoffMatrix {
  int initial_state = 0;
  std::vector<PureStationaryStrategy> rows;
  std::vector<PureStationaryStrategy> cols;
  Matrix values;
};

struct SaddleCertificate {
  int row = 0;
  int col = 0;
  double value = 0.0;
  // Smallest gap between the saddle and the other entries of its row (from
  // above) and column (from below); 0 under ties or for a 1x1 matrix.
  double slack = 0.0;
};

class NoPureSaddleError : public Error {
 public:
  explicit NoPureSaddleError(Matrix values)
      : Error(ErrorCode::kNoPureSaddle,
              std::to_string(values.rows()) + "x" + std::to_string(values.cols()) +
                  " matrix has no pure saddle point"),
        values_(std::move(values)) {}
  const Matrix& values() const { return values_; }

 private:
  Matrix values_;
};

struct OracleOptions {
  std::uint64_t size_limit = kDefaultSizeLimit;
  int threads = 1;
};

// Throws Error(kSizeLimit) if |F| * |G| exceeds options.size_limit.
PayoffMatrix ComputePayoffMatrix(const StochasticGame& game, int initial_state,
                                 const OracleOptions& options = {});

// One matrix per initial state; each strategy pair's chain is solved once.
std::vector<PayoffMatrix> ComputePayoffMatrices(const StochasticGame& game,
                                                const OracleOptions& options = {});

// The lexicographically first entry that is a row minimum and a column
// maximum within kSaddleTolerance. Throws NoPureSaddleError.
SaddleCertificate FindPureSaddle(const Matrix& values);
inline SaddleCertificate FindPureSaddle(const PayoffMatrix& matrix) {
  return FindPureSaddle(matrix.values);
}

// A 2x2 submatrix (rows r0 < r1, cols c0 < c1) without a pure saddle point.
struct SubmatrixIndex {
  int r0 = 0, r1 = 0, c0 = 0, c1 = 0;
  bool operator==(const SubmatrixIndex&) const = default;
};
std::vector<SubmatrixIndex> CheckShapley2x2(const Matrix& values);

using StrategyPair = std::pair<PureStationaryStrategy, PureStationaryStrategy>;

// Takes the choice each per-state pair makes in its own initial state:
// f*(t) = f_t(t), g*(t) = g_t(t).
StrategyPair AssemblePairFromRows(const StochasticGame& game,
                                  const std::vector<StrategyPair>& per_state);

struct EnumerationReport {
  SolutionReport solution;
  std::vector<PayoffMatrix> matrices;
  std::vector<SaddleCertificate> saddles;
};

// Payoff matrices, per-state saddles, assembled pair and its verification.
// solution.value holds the per-state saddle values.
EnumerationReport SolveByEnumeration(const StochasticGame& game,
                                     const OracleOptions& options = {});

}  // namespace pisg

#endif  // PISG_ORACLE_H_
