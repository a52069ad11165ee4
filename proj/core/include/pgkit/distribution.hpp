#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pgkit {

using Block = std::pair<std::uint32_t, std::uint32_t>;

enum class DistributionKind { RowWise, Projective, Custom };

const char* to_string(DistributionKind k);

/// owner(i, j) for an n x n grid of matrix blocks and n processes.
class DistributionMap {
 public:
  DistributionMap(std::uint32_t n, std::vector<std::uint32_t> owners, DistributionKind kind);

  std::uint32_t size() const { return n_; }
  DistributionKind kind() const { return kind_; }
  std::uint32_t owner(std::uint32_t i, std::uint32_t j) const { return owners_.at(std::size_t(i) * n_ + j); }
  const std::vector<std::uint32_t>& owners() const { return owners_; }

  /// Blocks held by `proc` in row-major order.
  std::vector<Block> blocks_of(std::uint32_t proc) const;

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> owners_;
  DistributionKind kind_;
};

DistributionMap rowwise_distribution(std::uint32_t n);

/// Block (i,j) goes to the labelled line of P(2, GF(q)) through points i and
/// j; (i,i) stays on process i. n = q^2 + q + 1.
DistributionMap projective_distribution(std::uint32_t q);

struct WeakCartesianReport {
  bool valid = true;
  std::vector<std::string> violations;
};

WeakCartesianReport validate_weak_cartesian(const DistributionMap& map);

struct ProcessComm {
  std::uint32_t r = 0;  // distinct block rows
  std::uint32_t c = 0;  // distinct block columns
  std::set<std::uint32_t> input_blocks;     // X_j read
  std::set<std::uint32_t> partial_outputs;  // Y_i written
  std::uint32_t remote_inputs = 0;          // X_j with j != proc
  std::uint32_t remote_outputs = 0;         // Y_i with i != proc
  std::uint32_t messages() const { return remote_inputs + remote_outputs; }
};

struct CommProfile {
  std::vector<ProcessComm> procs;
  std::uint64_t total_messages = 0;
  std::uint32_t max_messages = 0;
  std::uint32_t max_r_plus_c = 0;
  std::uint32_t min_r_plus_c = 0;
};

/// Dense-matrix communication per process implied by the ownership table.
CommProfile comm_profile(const DistributionMap& map);

/// (#distinct rows, #distinct cols) of a block set.
std::pair<std::uint32_t, std::uint32_t> minimal_submatrix(const std::vector<Block>& blocks);

/// min over r in [1, n] of r + ceil(n / r).
std::uint32_t integer_lower_bound(std::uint32_t n);

enum class RandomMapStyle { Shuffle, Compact };

/// A random valid weak Cartesian map. Shuffle deals the off-diagonal blocks
/// uniformly; Compact deals contiguous tiles under a random relabelling,
/// which yields processes with small r + c.
DistributionMap random_weak_cartesian(std::uint32_t n, std::mt19937_64& rng,
                                      RandomMapStyle style = RandomMapStyle::Shuffle);

struct LowerBoundReport {
  std::uint32_t n = 0;
  std::uint32_t q = 0;
  std::uint32_t bound = 0;               // integer_lower_bound(n)
  std::uint32_t projective_r_plus_c = 0;  // max over processes
  std::uint32_t projective_messages = 0;  // max over processes
  std::uint32_t samples = 0;
  std::uint32_t min_sample_r_plus_c = 0;
  std::uint32_t rc_violations = 0;     // processes with r*c < n
  std::uint32_t bound_violations = 0;  // processes with r+c < bound
  bool projective_within_2 = false;
  bool ok() const { return rc_violations == 0 && bound_violations == 0 && projective_within_2; }
};

/// n must be q^2 + q + 1 for a prime power q.
LowerBoundReport lower_bound_check(std::uint32_t n, std::uint32_t samples, std::uint64_t seed);

}  // namespace pgkit
