#ifndef PISG_MATRIX_H_
#define PISG_MATRIX_H_

#include <cstddef>
#include <span>
#include <vector>

namespace pisg {

// Small dense row-major matrix. The chains and tableaus handled here have at
// most a few hundred rows, so nothing fancier is needed.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix Identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return data_[Index(r, c)]; }
  double operator()(int r, int c) const { return data_[Index(r, c)]; }

  std::span<double> row(int r) {
    return {data_.data() + static_cast<std::size_t>(r) * cols_,
            static_cast<std::size_t>(cols_)};
  }
  std::span<const double> row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * cols_,
            static_cast<std::size_t>(cols_)};
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t Index(int r, int c) const {
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

// Max-row-sum norm.
double InfNorm(const Matrix& a);

// Pivots smaller than this in magnitude make a system singular.
inline constexpr double kPivotTolerance = 1e-12;

// Solves A X = B by Gaussian elimination with partial pivoting. Throws
// Error(kSingularSystem) when no pivot of magnitude >= kPivotTolerance exists.
Matrix Solve(Matrix a, Matrix b);

}  // namespace pisg

#endif  // PISG_MATRIX_H_
