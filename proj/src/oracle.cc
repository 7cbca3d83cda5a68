#include "pisg/oracle.h"

#include <algorithm>
#include <limits>
#include <thread>

#include "pisg/markov.h"

namespace pisg {

namespace {

std::uint64_t CheckSize(const StochasticGame& game, const OracleOptions& options) {
  const std::uint64_t rows = CountPureStrategies(game, Player::kOne);
  const std::uint64_t cols = CountPureStrategies(game, Player::kTwo);
  const bool overflow =
      rows != 0 && cols > std::numeric_limits<std::uint64_t>::max() / rows;
  const std::uint64_t entries =
      overflow ? std::numeric_limits<std::uint64_t>::max() : rows * cols;
  if (entries > options.size_limit) {
    throw Error(ErrorCode::kSizeLimit,
                "entries=" + std::to_string(entries) +
                    " limit=" + std::to_string(options.size_limit));
  }
  return entries;
}

bool HasSaddle2x2(double a, double b, double c, double d) {
  // [[a, b], [c, d]]
  const double m[2][2] = {{a, b}, {c, d}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double v = m[i][j];
      if (v <= m[i][1 - j] + kSaddleTolerance &&
          v >= m[1 - i][j] - kSaddleTolerance) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

std::vector<PayoffMatrix> ComputePayoffMatrices(const StochasticGame& game,
                                                const OracleOptions& options) {
  CheckSize(game, options);
  const auto rows = EnumeratePureStrategies(game, Player::kOne);
  const auto cols = EnumeratePureStrategies(game, Player::kTwo);
  const int n = game.num_states();
  const std::size_t num_rows = rows.size(), num_cols = cols.size();
  const std::size_t cells = num_rows * num_cols;

  // values[p] is phi(., f_i, g_j) for p = i * |G| + j.
  std::vector<std::vector<double>> values(cells);
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      values[p] = UndiscountedValue(game, rows[p / num_cols], cols[p % num_cols]);
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(options.threads, 1)), 1, cells);
  if (workers == 1) {
    fill(0, cells);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (cells + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(cells, begin + chunk);
      if (begin < end) pool.emplace_back(fill, begin, end);
    }
  }

  std::vector<PayoffMatrix> out(n);
  for (int s = 0; s < n; ++s) {
    PayoffMatrix& m = out[s];
    m.initial_state = s;
    m.rows = rows;
    m.cols = cols;
    m.values = Matrix(static_cast<int>(num_rows), static_cast<int>(num_cols));
    for (std::size_t p = 0; p < cells; ++p) {
      m.values(static_cast<int>(p / num_cols), static_cast<int>(p % num_cols)) =
          values[p][s];
    }
  }
  return out;
}

PayoffMatrix ComputePayoffMatrix(const StochasticGame& game, int initial_state,
                                 const OracleOptions& options) {
  CheckSize(game, options);
  PayoffMatrix m;
  m.initial_state = initial_state;
  m.rows = EnumeratePureStrategies(game, Player::kOne);
  m.cols = EnumeratePureStrategies(game, Player::kTwo);
  m.values = Matrix(static_cast<int>(m.rows.size()), static_cast<int>(m.cols.size()));
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    for (std::size_t j = 0; j < m.cols.size(); ++j) {
      m.values(static_cast<int>(i), static_cast<int>(j)) =
          UndiscountedValue(game, m.rows[i], m.cols[j])[initial_state];
    }
  }
  return m;
}

SaddleCertificate FindPureSaddle(const Matrix& values) {
  const int r = values.rows(), c = values.cols();
  std::vector<double> row_min(r, std::numeric_limits<double>::infinity());
  std::vector<double> col_max(c, -std::numeric_limits<double>::infinity());
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      row_min[i] = std::min(row_min[i], values(i, j));
      col_max[j] = std::max(col_max[j], values(i, j));
    }
  }
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      const double v = values(i, j);
      if (v > row_min[i] + kSaddleTolerance || v < col_max[j] - kSaddleTolerance) {
        continue;
      }
      double slack = std::numeric_limits<double>::infinity();
      for (int k = 0; k < c; ++k) {
        if (k != j) slack = std::min(slack, values(i, k) - v);
      }
      for (int k = 0; k < r; ++k) {
        if (k != i) slack = std::min(slack, v - values(k, j));
      }
      if (slack == std::numeric_limits<double>::infinity()) slack = 0.0;
      return {i, j, v, std::max(slack, 0.0)};
    }
  }
  throw NoPureSaddleError(values);
}

std::vector<SubmatrixIndex> CheckShapley2x2(const Matrix& values) {
  std::vector<SubmatrixIndex> failures;
  for (int r0 = 0; r0 < values.rows(); ++r0) {
    for (int r1 = r0 + 1; r1 < values.rows(); ++r1) {
      for (int c0 = 0; c0 < values.cols(); ++c0) {
        for (int c1 = c0 + 1; c1 < values.cols(); ++c1) {
          if (!HasSaddle2x2(values(r0, c0), values(r0, c1), values(r1, c0),
                            values(r1, c1))) {
            failures.push_back({r0, r1, c0, c1});
          }
        }
      }
    }
  }
  return failures;
}

StrategyPair AssemblePairFromRows(const StochasticGame& game,
                                  const std::vector<StrategyPair>& per_state) {
  const int n = game.num_states();
  StrategyPair out{{Player::kOne, std::vector<int>(n, 0)},
                   {Player::kTwo, std::vector<int>(n, 0)}};
  for (int t = 0; t < n; ++t) {
    out.first.choice[t] = per_state[t].first.choice[t];
    out.second.choice[t] = per_state[t].second.choice[t];
  }
  return out;
}

EnumerationReport SolveByEnumeration(const StochasticGame& game,
                                     const OracleOptions& options) {
  EnumerationReport report;
  report.matrices = ComputePayoffMatrices(game, options);
  std::vector<StrategyPair> per_state;
  for (const PayoffMatrix& m : report.matrices) {
    const SaddleCertificate saddle = FindPureSaddle(m);
    report.saddles.push_back(saddle);
    report.solution.value.push_back(saddle.value);
    per_state.emplace_back(m.rows[saddle.row], m.cols[saddle.col]);
  }
  auto [f, g] = AssemblePairFromRows(game, per_state);
  report.solution.verification = VerifyOptimality(game, f, g);
  report.solution.f_star = std::move(f);
  report.solution.g_star = std::move(g);
  return report;
}

}  // namespace pisg
