#include "pisg/lp.h"

#include <cassert>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>

#include "pisg/errors.h"

namespace pisg {

std::string_view LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "Optimal";
    case LpStatus::kInfeasible: return "Infeasible";
    case LpStatus::kUnbounded: return "Unbounded";
  }
  return "?";
}

namespace {

constexpr double kReducedCostTolerance = 1e-9;
constexpr double kRatioTieTolerance = 1e-12;
constexpr double kClampTolerance = 1e-12;

// Tableau rows hold B^-1 [A | b]; the last column is the right-hand side.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& options)
      : m_(lp.a.rows()), n_(lp.a.cols()), options_(options) {
    // Columns: structural [0, n), artificial [n, n + m), rhs n + m.
    t_ = Matrix(m_, n_ + m_ + 1);
    for (int i = 0; i < m_; ++i) {
      const double sign = lp.b[i] < 0.0 ? -1.0 : 1.0;
      for (int j = 0; j < n_; ++j) t_(i, j) = sign * lp.a(i, j);
      t_(i, n_ + i) = 1.0;
      t_(i, rhs()) = sign * lp.b[i];
      basis_.push_back(n_ + i);
    }
  }

  int rhs() const { return n_ + m_; }
  int rows() const { return static_cast<int>(basis_.size()); }
  const std::vector<int>& basis() const { return basis_; }
  int iterations() const { return iterations_; }
  double value(int row) const { return t_(row, rhs()); }
  double entry(int row, int col) const { return t_(row, col); }

  // Maximizes cost . x over columns [0, limit). Returns false if unbounded.
  bool Optimize(const std::vector<double>& cost, int limit, const char* phase) {
    while (true) {
      int entering = -1;
      for (int j = 0; j < limit && entering < 0; ++j) {
        if (IsBasic(j)) continue;
        double reduced = cost[j];
        for (int i = 0; i < rows(); ++i) reduced -= cost[basis_[i]] * t_(i, j);
        if (reduced > kReducedCostTolerance) entering = j;
      }
      if (entering < 0) return true;

      int leaving = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        const double a = t_(i, entering);
        if (a <= kSimplexPivotTolerance) continue;
        const double ratio = t_(i, rhs()) / a;
        if (ratio < best - kRatioTieTolerance ||
            (ratio <= best + kRatioTieTolerance && basis_[i] < basis_[leaving])) {
          best = std::min(best, ratio);
          leaving = i;
        }
      }
      if (leaving < 0) return false;
      Pivot(leaving, entering, phase);
    }
  }

  void Pivot(int row, int col, const char* phase) {
    if (++iterations_ > options_.max_iterations) {
      throw Error(ErrorCode::kNumericalBreakdown,
                  "iteration budget of " +
                      std::to_string(options_.max_iterations) + " exhausted");
    }
    const double pivot = t_(row, col);
    if (std::abs(pivot) < kSimplexPivotTolerance) {
      throw Error(ErrorCode::kNumericalBreakdown,
                  "pivot magnitude " + std::to_string(pivot));
    }
    for (double& v : t_.row(row)) v /= pivot;
    for (int i = 0; i < rows(); ++i) {
      if (i == row) continue;
      const double factor = t_(i, col);
      if (factor == 0.0) continue;
      auto target = t_.row(i);
      auto source = t_.row(row);
      for (int j = 0; j < t_.cols(); ++j) target[j] -= factor * source[j];
      t_(i, col) = 0.0;
    }
    basis_[row] = col;
    for (int i = 0; i < rows(); ++i) {
      if (t_(i, rhs()) < -kFeasibilityTolerance) {
        throw Error(ErrorCode::kNumericalBreakdown,
                    "basic variable fell to " + std::to_string(t_(i, rhs())));
      }
    }
    if (options_.trace) Dump(*options_.trace, phase, row, col);
  }

  void DropRow(int row) {
    Matrix smaller(rows() - 1, t_.cols());
    for (int i = 0, k = 0; i < rows(); ++i) {
      if (i == row) continue;
      std::copy(t_.row(i).begin(), t_.row(i).end(), smaller.row(k++).begin());
    }
    t_ = std::move(smaller);
    basis_.erase(basis_.begin() + row);
  }

  bool IsBasic(int col) const {
    for (int b : basis_) {
      if (b == col) return true;
    }
    return false;
  }

 private:
  void Dump(std::ostream& out, const char* phase, int row, int col) const {
    out << phase << " iteration " << iterations_ << ": column " << col
        << " enters at row " << row << "\n";
    for (int i = 0; i < rows(); ++i) {
      out << "  x" << std::setw(3) << std::left << basis_[i] << std::right
          << " |";
      for (double v : t_.row(i)) out << ' ' << std::setw(10) << std::setprecision(4) << v;
      out << "\n";
    }
  }

  int m_;
  int n_;
  const SimplexOptions& options_;
  Matrix t_;
  std::vector<int> basis_;
  int iterations_ = 0;
};

}  // namespace

LpSolution SolveLp(const LinearProgram& lp, const SimplexOptions& options) {
  const int m = lp.a.rows(), n = lp.a.cols();
  assert(static_cast<int>(lp.cost.size()) == n);
  assert(static_cast<int>(lp.b.size()) == m);

  Tableau tableau(lp, options);

  // Phase 1: maximize -sum(artificials).
  std::vector<double> phase1(n + m, 0.0);
  for (int i = 0; i < m; ++i) phase1[n + i] = -1.0;
  tableau.Optimize(phase1, n + m, "phase1");

  double infeasibility = 0.0;
  for (int i = 0; i < tableau.rows(); ++i) {
    if (tableau.basis()[i] >= n) infeasibility += tableau.value(i);
  }
  LpSolution out;
  if (infeasibility > kFeasibilityTolerance) {
    out.status = LpStatus::kInfeasible;
    out.iterations = tableau.iterations();
    return out;
  }

  // Drive zero-level artificials out of the basis; a row with no usable
  // structural entry is a redundant constraint.
  for (int i = 0; i < tableau.rows();) {
    if (tableau.basis()[i] < n) {
      ++i;
      continue;
    }
    int col = -1;
    for (int j = 0; j < n && col < 0; ++j) {
      if (!tableau.IsBasic(j) &&
          std::abs(tableau.entry(i, j)) > kSimplexPivotTolerance) {
        col = j;
      }
    }
    if (col >= 0) {
      tableau.Pivot(i, col, "cleanup");
      ++i;
    } else {
      tableau.DropRow(i);
    }
  }

  std::vector<double> phase2(n + m, 0.0);
  const double sign = lp.sense == Sense::kMaximize ? 1.0 : -1.0;
  for (int j = 0; j < n; ++j) phase2[j] = sign * lp.cost[j];
  const bool bounded = tableau.Optimize(phase2, n, "phase2");
  out.iterations = tableau.iterations();
  if (!bounded) {
    out.status = LpStatus::kUnbounded;
    return out;
  }

  out.status = LpStatus::kOptimal;
  out.x.assign(n, 0.0);
  out.basis = tableau.basis();
  for (int i = 0; i < tableau.rows(); ++i) {
    double v = tableau.value(i);
    if (v < 0.0 && v >= -kClampTolerance) v = 0.0;
    out.x[tableau.basis()[i]] = v;
  }
  out.objective = 0.0;
  for (int j = 0; j < n; ++j) out.objective += lp.cost[j] * out.x[j];
  return out;
}

}  // namespace pisg
