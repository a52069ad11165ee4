#pragma once

#include <cstdint>
#include <vector>

namespace pgkit {

/// Row-major dense matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::uint32_t rows, std::uint32_t cols, double fill = 0.0);

  static DenseMatrix identity(std::uint32_t n);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  double& operator()(std::uint32_t i, std::uint32_t j) { return data_[std::size_t(i) * cols_ + j]; }
  double operator()(std::uint32_t i, std::uint32_t j) const { return data_[std::size_t(i) * cols_ + j]; }
  const std::vector<double>& data() const { return data_; }

  DenseMatrix block(std::uint32_t r0, std::uint32_t c0, std::uint32_t nr, std::uint32_t nc) const;
  void set_block(std::uint32_t r0, std::uint32_t c0, const DenseMatrix& b);
  DenseMatrix transpose() const;

  double frobenius_norm() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::uint32_t rows_ = 0;
  std::uint32_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);

/// In-place LU without pivoting: unit lower L below the diagonal, U on and
/// above. Throws NumericalError on a zero pivot.
DenseMatrix lu_nopivot(const DenseMatrix& a);
/// Inverse of the unit lower factor stored in a packed LU block.
DenseMatrix invert_unit_lower(const DenseMatrix& lu);
/// Inverse of the upper factor stored in a packed LU block.
DenseMatrix invert_upper(const DenseMatrix& lu);

/// Lower Cholesky factor (upper part zero). Throws NumericalError if the
/// matrix is not positive definite.
DenseMatrix cholesky(const DenseMatrix& a);
/// Inverse of a lower-triangular matrix with nonzero diagonal.
DenseMatrix invert_lower(const DenseMatrix& l);

DenseMatrix unit_lower_part(const DenseMatrix& lu);
DenseMatrix upper_part(const DenseMatrix& lu);

/// ||a - b||_F / ||b||_F (absolute if b is zero).
double relative_difference(const DenseMatrix& a, const DenseMatrix& b);

/// Random matrix with entries in [-1,1) and diagonal n + 1, so rows are
/// strictly dominant. Symmetric when requested.
DenseMatrix random_diagdom(std::uint32_t n, std::uint64_t seed, bool symmetric = false);

}  // namespace pgkit
