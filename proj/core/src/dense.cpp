#include "pgkit/dense.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "pgkit/errors.hpp"

namespace pgkit {

DenseMatrix::DenseMatrix(std::uint32_t rows, std::uint32_t cols, double fill)
    : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, fill) {}

DenseMatrix DenseMatrix::identity(std::uint32_t n) {
  DenseMatrix m(n, n);
  for (std::uint32_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::block(std::uint32_t r0, std::uint32_t c0, std::uint32_t nr, std::uint32_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block outside matrix");
  DenseMatrix b(nr, nc);
  for (std::uint32_t i = 0; i < nr; ++i)
    for (std::uint32_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void DenseMatrix::set_block(std::uint32_t r0, std::uint32_t c0, const DenseMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw std::out_of_range("block outside matrix");
  for (std::uint32_t i = 0; i < b.rows(); ++i)
    for (std::uint32_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::uint32_t i = 0; i < rows_; ++i)
    for (std::uint32_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::uint32_t i = 0; i < a.rows(); ++i) {
    for (std::uint32_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::uint32_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("subtract: shape mismatch");
  DenseMatrix c = a;
  for (std::uint32_t i = 0; i < a.rows(); ++i)
    for (std::uint32_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

DenseMatrix lu_nopivot(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("lu: matrix must be square");
  DenseMatrix m = a;
  const std::uint32_t n = m.rows();
  for (std::uint32_t k = 0; k < n; ++k) {
    const double piv = m(k, k);
    if (piv == 0.0 || !std::isfinite(piv)) throw NumericalError("lu: zero or non-finite pivot at " + std::to_string(k));
    for (std::uint32_t i = k + 1; i < n; ++i) {
      const double l = m(i, k) / piv;
      m(i, k) = l;
      if (l == 0.0) continue;
      for (std::uint32_t j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
    }
  }
  return m;
}

DenseMatrix invert_unit_lower(const DenseMatrix& lu) {
  const std::uint32_t n = lu.rows();
  DenseMatrix x = DenseMatrix::identity(n);
  // Solve L X = I column by column (forward substitution).
  for (std::uint32_t c = 0; c < n; ++c) {
    for (std::uint32_t i = c + 1; i < n; ++i) {
      double s = 0.0;
      for (std::uint32_t k = c; k < i; ++k) s += lu(i, k) * x(k, c);
      x(i, c) = -s;
    }
  }
  return x;
}

DenseMatrix invert_upper(const DenseMatrix& lu) {
  const std::uint32_t n = lu.rows();
  DenseMatrix x(n, n);
  for (std::uint32_t c = 0; c < n; ++c) {
    for (std::uint32_t ii = c + 1; ii-- > 0;) {
      double s = (ii == c) ? 1.0 : 0.0;
      for (std::uint32_t k = ii + 1; k <= c; ++k) s -= lu(ii, k) * x(k, c);
      if (lu(ii, ii) == 0.0) throw NumericalError("invert_upper: singular");
      x(ii, c) = s / lu(ii, ii);
    }
  }
  return x;
}

DenseMatrix cholesky(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("cholesky: matrix must be square");
  const std::uint32_t n = a.rows();
  DenseMatrix l(n, n);
  for (std::uint32_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::uint32_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) throw NumericalError("cholesky: matrix is not positive definite");
    l(j, j) = std::sqrt(d);
    for (std::uint32_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::uint32_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

DenseMatrix invert_lower(const DenseMatrix& l) {
  const std::uint32_t n = l.rows();
  DenseMatrix x(n, n);
  for (std::uint32_t c = 0; c < n; ++c) {
    for (std::uint32_t i = c; i < n; ++i) {
      double s = (i == c) ? 1.0 : 0.0;
      for (std::uint32_t k = c; k < i; ++k) s -= l(i, k) * x(k, c);
      if (l(i, i) == 0.0) throw NumericalError("invert_lower: singular");
      x(i, c) = s / l(i, i);
    }
  }
  return x;
}

DenseMatrix unit_lower_part(const DenseMatrix& lu) {
  DenseMatrix l(lu.rows(), lu.cols());
  for (std::uint32_t i = 0; i < lu.rows(); ++i) {
    for (std::uint32_t j = 0; j < i && j < lu.cols(); ++j) l(i, j) = lu(i, j);
    if (i < lu.cols()) l(i, i) = 1.0;
  }
  return l;
}

DenseMatrix upper_part(const DenseMatrix& lu) {
  DenseMatrix u(lu.rows(), lu.cols());
  for (std::uint32_t i = 0; i < lu.rows(); ++i)
    for (std::uint32_t j = i; j < lu.cols(); ++j) u(i, j) = lu(i, j);
  return u;
}

double relative_difference(const DenseMatrix& a, const DenseMatrix& b) {
  const double nb = b.frobenius_norm();
  const double d = subtract(a, b).frobenius_norm();
  return nb == 0.0 ? d : d / nb;
}

DenseMatrix random_diagdom(std::uint32_t n, std::uint64_t seed, bool symmetric) {
  std::mt19937_64 rng(seed);
  auto val = [&] { return double(rng() >> 11) * 0x1.0p-52 - 1.0; };
  DenseMatrix a(n, n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = symmetric ? i : 0; j < n; ++j) {
      const double v = (i == j) ? double(n) + 1.0 : val();
      a(i, j) = v;
      if (symmetric) a(j, i) = v;
    }
  }
  return a;
}

}  // namespace pgkit
