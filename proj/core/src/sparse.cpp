#include "pgkit/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pgkit {

SparseMatrix::SparseMatrix(std::uint32_t rows, std::uint32_t cols)
    : rows_(rows), cols_(cols), row_ptr_(std::size_t(rows) + 1, 0) {}

SparseMatrix SparseMatrix::from_entries(std::uint32_t rows, std::uint32_t cols, std::vector<Entry> entries) {
  for (const auto& e : entries)
    if (e.row >= rows || e.col >= cols) throw std::invalid_argument("sparse entry outside matrix bounds");
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  SparseMatrix m(rows, cols);
  std::size_t t = 0;
  while (t < entries.size()) {
    const std::uint32_t r = entries[t].row, c = entries[t].col;
    double v = 0.0;
    while (t < entries.size() && entries[t].row == r && entries[t].col == c) v += entries[t++].value;
    if (v == 0.0) continue;
    m.col_idx_.push_back(c);
    m.values_.push_back(v);
    ++m.row_ptr_[r + 1];
  }
  for (std::uint32_t r = 0; r < rows; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

SparseMatrix SparseMatrix::identity(std::uint32_t n) {
  std::vector<Entry> e;
  e.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) e.push_back({i, i, 1.0});
  return from_entries(n, n, std::move(e));
}

double SparseMatrix::at(std::uint32_t i, std::uint32_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("sparse index out of range");
  auto b = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  auto e = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  auto it = std::lower_bound(b, e, j);
  if (it == e || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

std::vector<double> SparseMatrix::diagonal() const {
  std::vector<double> d(std::min(rows_, cols_));
  for (std::uint32_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
  return d;
}

std::vector<Entry> SparseMatrix::entries() const {
  std::vector<Entry> out;
  out.reserve(nnz());
  for (std::uint32_t r = 0; r < rows_; ++r)
    for (std::size_t t = row_ptr_[r]; t < row_ptr_[r + 1]; ++t) out.push_back({r, col_idx_[t], values_[t]});
  return out;
}

std::vector<double> SparseMatrix::multiply(const std::vector<double>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("multiply: dimension mismatch");
  std::vector<double> y(rows_, 0.0);
  multiply_add(x.data(), y.data());
  return y;
}

void SparseMatrix::multiply_add(const double* x, double* y) const {
  for (std::uint32_t r = 0; r < rows_; ++r) {
    double acc = y[r];
    for (std::size_t t = row_ptr_[r]; t < row_ptr_[r + 1]; ++t) acc += values_[t] * x[col_idx_[t]];
    y[r] = acc;
  }
}

double SparseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

bool SparseMatrix::is_symmetric(double tol) const {
  if (!square()) return false;
  for (const auto& e : entries())
    if (std::abs(e.value - at(e.col, e.row)) > tol) return false;
  return true;
}

}  // namespace pgkit
