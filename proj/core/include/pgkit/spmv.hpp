#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pgkit/distribution.hpp"
#include "pgkit/sparse.hpp"

namespace pgkit {

/// n x n tiling of a square sparse matrix. Block t spans
/// [offset(t), offset(t+1)); every block has floor(r/n) rows except the
/// last, which takes the remainder. Empty tiles are not stored.
class BlockedMatrix {
 public:
  std::uint32_t dimension() const { return r_; }
  std::uint32_t blocks() const { return n_; }
  std::uint32_t offset(std::uint32_t t) const { return offsets_.at(t); }
  std::uint32_t block_size(std::uint32_t t) const { return offsets_.at(t + 1) - offsets_.at(t); }
  const std::vector<std::uint32_t>& offsets() const { return offsets_; }
  const std::map<Block, SparseMatrix>& tiles() const { return tiles_; }
  const SparseMatrix* tile(std::uint32_t i, std::uint32_t j) const;

  SparseMatrix assemble() const;

  friend BlockedMatrix tile_matrix(const SparseMatrix& a, std::uint32_t n);

 private:
  std::uint32_t r_ = 0;
  std::uint32_t n_ = 0;
  std::vector<std::uint32_t> offsets_;
  std::map<Block, SparseMatrix> tiles_;
};

BlockedMatrix tile_matrix(const SparseMatrix& a, std::uint32_t n);
std::vector<std::uint32_t> block_offsets(std::uint32_t r, std::uint32_t n);

/// A tile with its all-zero rows and columns removed.
struct PackedBlock {
  Block id{};
  std::uint32_t rows = 0;  // original shape
  std::uint32_t cols = 0;
  std::vector<std::uint32_t> kept_rows;
  std::vector<std::uint32_t> kept_cols;
  SparseMatrix packed;  // kept_rows.size() x kept_cols.size()
};

PackedBlock pack_block(const SparseMatrix& tile, Block id = {});
SparseMatrix unpack(const PackedBlock& b);

/// Gathers x at the given local column labels.
std::vector<double> pack_vector(const std::vector<double>& x, const std::vector<std::uint32_t>& labels);

enum class VectorRole { Input, Partial, Reduced };

struct VectorBlock {
  std::uint32_t index = 0;
  VectorRole role = VectorRole::Input;
  std::vector<double> values;
};

struct ProcessTraffic {
  std::uint64_t gather_sent = 0, gather_sent_volume = 0;
  std::uint64_t gather_recv = 0, gather_recv_volume = 0;
  std::uint64_t partial_sent = 0, partial_sent_volume = 0;
  std::uint64_t partial_recv = 0, partial_recv_volume = 0;
  std::uint64_t scalar_reductions = 0;

  /// Block messages this process takes part in for its own work: vector
  /// blocks it must fetch plus partial sums it must ship.
  std::uint64_t block_messages() const { return gather_recv + partial_sent; }
  friend bool operator==(const ProcessTraffic&, const ProcessTraffic&) = default;
};

struct MessageLog {
  std::vector<ProcessTraffic> procs;
  std::uint64_t spmv_calls = 0;

  std::uint64_t gather_messages() const;
  std::uint64_t gather_volume() const;
  std::uint64_t partial_messages() const;
  std::uint64_t partial_volume() const;
  std::uint64_t max_block_messages_per_call() const;
  /// Sent totals equal received totals in both phases.
  bool conserved() const;
  friend bool operator==(const MessageLog&, const MessageLog&) = default;
};

struct SpmvOptions {
  bool packed = false;
  /// Order in which logical processes run inside a phase. Empty means
  /// ascending; results must not depend on it.
  std::vector<std::uint32_t> process_order;
};

/// Simulated distributed y = A x. Process k owns vector block k; tiles live
/// on dist.owner(i, j).
class SpmvEngine {
 public:
  SpmvEngine(const DistributionMap& dist, BlockedMatrix a, SpmvOptions opts = {});

  std::vector<double> multiply(const std::vector<double>& x, MessageLog& log) const;
  std::vector<double> multiply(const std::vector<double>& x) const;

  const BlockedMatrix& matrix() const { return a_; }
  std::uint32_t processes() const { return n_; }
  MessageLog empty_log() const;

 private:
  struct LocalTile {
    Block id;
    SparseMatrix m;  // rows: index into row group, cols: index into column group
  };
  // Per process: the tiles it holds and, per block row/column, the local
  // labels it touches (all labels when unpacked).
  struct Proc {
    std::vector<LocalTile> tiles;
    std::map<std::uint32_t, std::vector<std::uint32_t>> col_labels;
    std::map<std::uint32_t, std::vector<std::uint32_t>> row_labels;
  };

  std::uint32_t n_;
  BlockedMatrix a_;
  SpmvOptions opts_;
  std::vector<Proc> procs_;
};

}  // namespace pgkit
