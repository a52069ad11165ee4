#pragma once

#include <cstdint>
#include <vector>

#include "pgkit/dense.hpp"

namespace pgkit {

/// B x B grid of b x b blocks, row-major.
struct BlockGrid {
  std::uint32_t count = 0;  // B
  std::uint32_t size = 0;   // b
  std::vector<DenseMatrix> blocks;

  DenseMatrix& at(std::uint32_t i, std::uint32_t j) { return blocks[std::size_t(i) * count + j]; }
  const DenseMatrix& at(std::uint32_t i, std::uint32_t j) const { return blocks[std::size_t(i) * count + j]; }
};

BlockGrid split_blocks(const DenseMatrix& a, std::uint32_t b);
DenseMatrix join_blocks(const BlockGrid& g);

/// The per-block kernels shared by the reference and the schedule simulator.
namespace kernels {
inline DenseMatrix factor(const DenseMatrix& a) { return lu_nopivot(a); }
inline DenseMatrix inv_l(const DenseMatrix& lu) { return invert_unit_lower(lu); }
inline DenseMatrix inv_u(const DenseMatrix& lu) { return invert_upper(lu); }
inline DenseMatrix col_update(const DenseMatrix& a_ji, const DenseMatrix& u_inv) { return matmul(a_ji, u_inv); }
inline DenseMatrix row_update(const DenseMatrix& l_inv, const DenseMatrix& a_ik) { return matmul(l_inv, a_ik); }
inline DenseMatrix product(const DenseMatrix& l_ji, const DenseMatrix& u_ik) { return matmul(l_ji, u_ik); }
inline DenseMatrix update(const DenseMatrix& a_jk, const DenseMatrix& t) { return subtract(a_jk, t); }
}  // namespace kernels

/// Sequential in-place blocked LU (no pivoting) with explicit diagonal
/// inverses. Returns the packed factors: unit L strictly below the
/// diagonal, U on and above. N must be divisible by b.
DenseMatrix block_lu_reference(const DenseMatrix& a, std::uint32_t b);

/// Blocked Cholesky with the same three-step pattern; returns lower L.
DenseMatrix block_cholesky_reference(const DenseMatrix& a, std::uint32_t b);

/// ||A - L U||_F / ||A||_F for packed factors.
double lu_residual(const DenseMatrix& a, const DenseMatrix& packed);
/// ||A - L L^T||_F / ||A||_F
double cholesky_residual(const DenseMatrix& a, const DenseMatrix& l);

}  // namespace pgkit
