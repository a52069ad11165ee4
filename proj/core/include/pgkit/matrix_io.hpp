#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pgkit/errors.hpp"
#include "pgkit/sparse.hpp"

namespace pgkit {

/// Malformed Matrix Market input; `line()` is 1-based (0 if unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Coordinate real/integer, general/symmetric. Symmetric files are expanded
/// to full storage and duplicate entries are summed.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::string& path);

void write_matrix_market(std::ostream& out, const SparseMatrix& a, bool symmetric = false);

/// 5-point Laplacian on a side x side grid (SPD).
SparseMatrix poisson2d(std::uint32_t side);

/// Symmetric, strictly diagonally dominant with positive diagonal (hence
/// SPD). Each off-diagonal pair is present with probability `density`.
SparseMatrix diagdom(std::uint32_t n, double density, std::uint64_t seed);

/// "poisson2d:<side>" or "diagdom:<n>:<density>:<seed>". A non-empty
/// seed_override replaces the seed field.
SparseMatrix generate_matrix(const std::string& spec, const std::string& seed_override = "");

}  // namespace pgkit
