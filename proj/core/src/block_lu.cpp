#include "pgkit/block_lu.hpp"

#include <stdexcept>

namespace pgkit {

BlockGrid split_blocks(const DenseMatrix& a, std::uint32_t b) {
  if (a.rows() != a.cols()) throw std::invalid_argument("block LU needs a square matrix");
  if (b == 0 || a.rows() % b != 0) throw std::invalid_argument("matrix order must be a multiple of the block size");
  BlockGrid g;
  g.size = b;
  g.count = a.rows() / b;
  g.blocks.reserve(std::size_t(g.count) * g.count);
  for (std::uint32_t i = 0; i < g.count; ++i)
    for (std::uint32_t j = 0; j < g.count; ++j) g.blocks.push_back(a.block(i * b, j * b, b, b));
  return g;
}

DenseMatrix join_blocks(const BlockGrid& g) {
  DenseMatrix a(g.count * g.size, g.count * g.size);
  for (std::uint32_t i = 0; i < g.count; ++i)
    for (std::uint32_t j = 0; j < g.count; ++j) a.set_block(i * g.size, j * g.size, g.at(i, j));
  return a;
}

DenseMatrix block_lu_reference(const DenseMatrix& a, std::uint32_t b) {
  BlockGrid g = split_blocks(a, b);
  const std::uint32_t nb = g.count;
  for (std::uint32_t i = 0; i < nb; ++i) {
    g.at(i, i) = kernels::factor(g.at(i, i));
    const DenseMatrix linv = kernels::inv_l(g.at(i, i));
    const DenseMatrix uinv = kernels::inv_u(g.at(i, i));
    for (std::uint32_t j = i + 1; j < nb; ++j) g.at(j, i) = kernels::col_update(g.at(j, i), uinv);
    for (std::uint32_t k = i + 1; k < nb; ++k) g.at(i, k) = kernels::row_update(linv, g.at(i, k));
    for (std::uint32_t j = i + 1; j < nb; ++j)
      for (std::uint32_t k = i + 1; k < nb; ++k)
        g.at(j, k) = kernels::update(g.at(j, k), kernels::product(g.at(j, i), g.at(i, k)));
  }
  return join_blocks(g);
}

DenseMatrix block_cholesky_reference(const DenseMatrix& a, std::uint32_t b) {
  BlockGrid g = split_blocks(a, b);
  const std::uint32_t nb = g.count;
  for (std::uint32_t i = 0; i < nb; ++i) {
    g.at(i, i) = cholesky(g.at(i, i));
    const DenseMatrix linv_t = invert_lower(g.at(i, i)).transpose();
    for (std::uint32_t j = i + 1; j < nb; ++j) g.at(j, i) = matmul(g.at(j, i), linv_t);
    for (std::uint32_t j = i + 1; j < nb; ++j)
      for (std::uint32_t k = i + 1; k <= j; ++k)
        g.at(j, k) = subtract(g.at(j, k), matmul(g.at(j, i), g.at(k, i).transpose()));
  }
  for (std::uint32_t i = 0; i < nb; ++i)
    for (std::uint32_t k = i + 1; k < nb; ++k) g.at(i, k) = DenseMatrix(b, b);
  return join_blocks(g);
}

double lu_residual(const DenseMatrix& a, const DenseMatrix& packed) {
  return relative_difference(matmul(unit_lower_part(packed), upper_part(packed)), a);
}

double cholesky_residual(const DenseMatrix& a, const DenseMatrix& l) {
  return relative_difference(matmul(l, l.transpose()), a);
}

}  // namespace pgkit
