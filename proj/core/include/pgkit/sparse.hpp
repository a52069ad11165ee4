#pragma once

#include <cstdint>
#include <vector>

namespace pgkit {

struct Entry {
  std::uint32_t row;
  std::uint32_t col;
  double value;
};

/// Compressed sparse rows. Column indices are sorted within a row and
/// explicit zeros are never stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::uint32_t rows, std::uint32_t cols);

  /// Duplicates are summed; entries that sum to zero are dropped.
  static SparseMatrix from_entries(std::uint32_t rows, std::uint32_t cols, std::vector<Entry> entries);
  static SparseMatrix identity(std::uint32_t n);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }
  bool square() const { return rows_ == cols_; }

  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::uint32_t>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  double at(std::uint32_t i, std::uint32_t j) const;
  std::vector<double> diagonal() const;
  std::vector<Entry> entries() const;

  /// y = A x, accumulated row by row in stored order.
  std::vector<double> multiply(const std::vector<double>& x) const;
  /// y += A x
  void multiply_add(const double* x, double* y) const;

  double frobenius_norm() const;
  bool is_symmetric(double tol = 0.0) const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::uint32_t rows_ = 0;
  std::uint32_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::uint32_t> col_idx_;
  std::vector<double> values_;
};

}  // namespace pgkit
