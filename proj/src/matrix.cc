#include "pisg/matrix.h"

#include <cassert>
#include <cmath>
#include <string>
#include <utility>

#include "pisg/errors.h"

namespace pisg {

Matrix Matrix::Identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  Matrix c = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  Matrix c = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  assert(static_cast<std::size_t>(a.cols()) == x.size());
  std::vector<double> y(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (int j = 0; j < a.cols(); ++j) sum += a(i, j) * x[j];
    y[i] = sum;
  }
  return y;
}

double InfNorm(const Matrix& a) {
  double norm = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (double v : a.row(i)) sum += std::abs(v);
    norm = std::max(norm, sum);
  }
  return norm;
}

Matrix Solve(Matrix a, Matrix b) {
  const int n = a.rows();
  assert(a.cols() == n && b.rows() == n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (std::abs(a(pivot, col)) < kPivotTolerance) {
      throw Error(ErrorCode::kSingularSystem,
                  "pivot " + std::to_string(a(pivot, col)) + " in column " +
                      std::to_string(col));
    }
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      for (int j = 0; j < b.cols(); ++j) std::swap(b(pivot, j), b(col, j));
    }
    for (int r = col + 1; r < n; ++r) {
      const double factor = a(r, col) / a(col, col);
      if (factor == 0.0) continue;
      for (int j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
      for (int j = 0; j < b.cols(); ++j) b(r, j) -= factor * b(col, j);
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    for (int j = 0; j < b.cols(); ++j) {
      double sum = b(r, j);
      for (int k = r + 1; k < n; ++k) sum -= a(r, k) * b(k, j);
      b(r, j) = sum / a(r, r);
    }
  }
  return b;
}

}  // namespace pisg
