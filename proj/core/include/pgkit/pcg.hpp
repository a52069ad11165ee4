#pragma once

#include <cstdint>
#include <vector>

#include "pgkit/sparse.hpp"
#include "pgkit/spmv.hpp"

namespace pgkit {

struct PcgOptions {
  std::uint32_t max_iterations = 1000;
  double epsilon = 1e-8;
  std::uint32_t recompute_every = 50;  // exact residual b - Ax when i % this == 0
};

struct PcgResult {
  std::vector<double> x;
  std::uint32_t iterations = 0;
  bool converged = false;
  double delta0 = 0.0;
  std::vector<double> residual_history;  // delta_new = r^T M^-1 r, starting with delta0
  MessageLog log;
};

/// Jacobi-preconditioned CG. Every A*v goes through `engine`; dot products
/// are reduced block by block in ascending process order and counted as
/// one scalar reduction per process.
PcgResult pcg_solve(const SparseMatrix& a, const std::vector<double>& b, const std::vector<double>& x0,
                    const PcgOptions& opts, const SpmvEngine& engine);

/// Same iteration with a plain sequential A*v; used as a cross-check.
PcgResult pcg_solve_sequential(const SparseMatrix& a, const std::vector<double>& b, const std::vector<double>& x0,
                               const PcgOptions& opts);

double relative_residual(const SparseMatrix& a, const std::vector<double>& x, const std::vector<double>& b);

}  // namespace pgkit
