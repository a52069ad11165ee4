#include "pgkit/pcg.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "pgkit/errors.hpp"

namespace pgkit {

namespace {

using Matvec = std::function<std::vector<double>(const std::vector<double>&)>;

struct Reducer {
  std::vector<std::uint32_t> offsets;
  MessageLog* log = nullptr;

  // Local partial per owner, then the scalars summed in ascending order.
  double dot(const std::vector<double>& u, const std::vector<double>& v) const {
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < offsets.size(); ++k) {
      double local = 0.0;
      for (auto t = offsets[k]; t < offsets[k + 1]; ++t) local += u[t] * v[t];
      total += local;
      if (log) log->procs[k].scalar_reductions += 1;
    }
    return total;
  }
};

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericalError(std::string("pcg: non-finite ") + what);
}

PcgResult run(const SparseMatrix& a, const std::vector<double>& b, const std::vector<double>& x0,
              const PcgOptions& opts, const Matvec& matvec, Reducer red) {
  const std::size_t n = a.rows();
  if (!a.square()) throw std::invalid_argument("pcg: matrix must be square");
  if (b.size() != n || x0.size() != n) throw std::invalid_argument("pcg: vector length mismatch");
  if (opts.recompute_every == 0) throw std::invalid_argument("pcg: recompute interval must be positive");
  const auto diag = a.diagonal();
  std::vector<double> minv(n);
  for (std::size_t t = 0; t < n; ++t) {
    if (diag[t] == 0.0) throw std::invalid_argument("pcg: zero diagonal entry at row " + std::to_string(t));
    minv[t] = 1.0 / diag[t];
  }

  PcgResult res;
  res.x = x0;
  auto& x = res.x;
  std::vector<double> r(n), d(n), s(n);

  auto ax = matvec(x);
  for (std::size_t t = 0; t < n; ++t) r[t] = b[t] - ax[t];
  for (std::size_t t = 0; t < n; ++t) d[t] = minv[t] * r[t];
  double delta_new = red.dot(r, d);
  check_finite(delta_new, "initial residual");
  const double delta0 = delta_new;
  const double limit = opts.epsilon * opts.epsilon * delta0;
  res.delta0 = delta0;
  res.residual_history.push_back(delta_new);

  std::uint32_t i = 0;
  while (i < opts.max_iterations && delta_new > limit) {
    const auto q = matvec(d);
    const double dq = red.dot(d, q);
    check_finite(dq, "curvature");
    if (dq <= 0.0) throw NumericalError("pcg: matrix is not positive definite (d^T A d <= 0)");
    const double alpha = delta_new / dq;
    for (std::size_t t = 0; t < n; ++t) x[t] += alpha * d[t];
    if (i % opts.recompute_every == 0) {
      ax = matvec(x);
      for (std::size_t t = 0; t < n; ++t) r[t] = b[t] - ax[t];
    } else {
      for (std::size_t t = 0; t < n; ++t) r[t] -= alpha * q[t];
    }
    for (std::size_t t = 0; t < n; ++t) s[t] = minv[t] * r[t];
    const double delta_old = delta_new;
    delta_new = red.dot(r, s);
    check_finite(delta_new, "residual");
    const double beta = delta_new / delta_old;
    for (std::size_t t = 0; t < n; ++t) d[t] = s[t] + beta * d[t];
    ++i;
    res.residual_history.push_back(delta_new);
  }
  res.iterations = i;
  res.converged = delta_new <= limit;
  return res;
}

}  // namespace

PcgResult pcg_solve(const SparseMatrix& a, const std::vector<double>& b, const std::vector<double>& x0,
                    const PcgOptions& opts, const SpmvEngine& engine) {
  if (engine.matrix().dimension() != a.rows()) throw std::invalid_argument("pcg: engine matrix has wrong size");
  MessageLog log = engine.empty_log();
  Reducer red{engine.matrix().offsets(), &log};
  auto res = run(a, b, x0, opts, [&](const std::vector<double>& v) { return engine.multiply(v, log); }, red);
  res.log = std::move(log);
  return res;
}

PcgResult pcg_solve_sequential(const SparseMatrix& a, const std::vector<double>& b, const std::vector<double>& x0,
                               const PcgOptions& opts) {
  Reducer red{{0, a.rows()}, nullptr};
  return run(a, b, x0, opts, [&](const std::vector<double>& v) { return a.multiply(v); }, red);
}

double relative_residual(const SparseMatrix& a, const std::vector<double>& x, const std::vector<double>& b) {
  const auto ax = a.multiply(x);
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < b.size(); ++t) {
    num += (b[t] - ax[t]) * (b[t] - ax[t]);
    den += b[t] * b[t];
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

}  // namespace pgkit
