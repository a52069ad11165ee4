#include "pgkit/spmv.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pgkit {

std::vector<std::uint32_t> block_offsets(std::uint32_t r, std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("block count must be positive");
  if (n > r) throw std::invalid_argument("more blocks than rows");
  const std::uint32_t base = r / n;
  std::vector<std::uint32_t> off(n + 1);
  for (std::uint32_t t = 0; t < n; ++t) off[t] = t * base;
  off[n] = r;
  return off;
}

const SparseMatrix* BlockedMatrix::tile(std::uint32_t i, std::uint32_t j) const {
  auto it = tiles_.find({i, j});
  return it == tiles_.end() ? nullptr : &it->second;
}

BlockedMatrix tile_matrix(const SparseMatrix& a, std::uint32_t n) {
  if (!a.square()) throw std::invalid_argument("tile_matrix: matrix must be square");
  BlockedMatrix bm;
  bm.r_ = a.rows();
  bm.n_ = n;
  bm.offsets_ = block_offsets(a.rows(), n);
  const std::uint32_t base = a.rows() / n;
  auto block_of = [&](std::uint32_t x) { return std::min(x / base, n - 1); };
  std::map<Block, std::vector<Entry>> parts;
  for (const auto& e : a.entries()) {
    const auto bi = block_of(e.row), bj = block_of(e.col);
    parts[{bi, bj}].push_back({e.row - bm.offsets_[bi], e.col - bm.offsets_[bj], e.value});
  }
  for (auto& [id, es] : parts) {
    bm.tiles_.emplace(id, SparseMatrix::from_entries(bm.block_size(id.first), bm.block_size(id.second), std::move(es)));
  }
  return bm;
}

SparseMatrix BlockedMatrix::assemble() const {
  std::vector<Entry> out;
  for (const auto& [id, t] : tiles_)
    for (const auto& e : t.entries()) out.push_back({e.row + offsets_[id.first], e.col + offsets_[id.second], e.value});
  return SparseMatrix::from_entries(r_, r_, std::move(out));
}

PackedBlock pack_block(const SparseMatrix& tile, Block id) {
  PackedBlock pb;
  pb.id = id;
  pb.rows = tile.rows();
  pb.cols = tile.cols();
  std::set<std::uint32_t> rows, cols;
  for (const auto& e : tile.entries()) {
    rows.insert(e.row);
    cols.insert(e.col);
  }
  pb.kept_rows.assign(rows.begin(), rows.end());
  pb.kept_cols.assign(cols.begin(), cols.end());
  std::vector<std::uint32_t> rmap(tile.rows()), cmap(tile.cols());
  for (std::uint32_t t = 0; t < pb.kept_rows.size(); ++t) rmap[pb.kept_rows[t]] = t;
  for (std::uint32_t t = 0; t < pb.kept_cols.size(); ++t) cmap[pb.kept_cols[t]] = t;
  std::vector<Entry> es;
  for (const auto& e : tile.entries()) es.push_back({rmap[e.row], cmap[e.col], e.value});
  pb.packed = SparseMatrix::from_entries(static_cast<std::uint32_t>(pb.kept_rows.size()),
                                         static_cast<std::uint32_t>(pb.kept_cols.size()), std::move(es));
  return pb;
}

SparseMatrix unpack(const PackedBlock& b) {
  std::vector<Entry> es;
  for (const auto& e : b.packed.entries()) es.push_back({b.kept_rows.at(e.row), b.kept_cols.at(e.col), e.value});
  return SparseMatrix::from_entries(b.rows, b.cols, std::move(es));
}

std::vector<double> pack_vector(const std::vector<double>& x, const std::vector<std::uint32_t>& labels) {
  std::vector<double> out;
  out.reserve(labels.size());
  for (auto l : labels) out.push_back(x.at(l));
  return out;
}

std::uint64_t MessageLog::gather_messages() const {
  std::uint64_t s = 0;
  for (const auto& p : procs) s += p.gather_sent;
  return s;
}
std::uint64_t MessageLog::gather_volume() const {
  std::uint64_t s = 0;
  for (const auto& p : procs) s += p.gather_sent_volume;
  return s;
}
std::uint64_t MessageLog::partial_messages() const {
  std::uint64_t s = 0;
  for (const auto& p : procs) s += p.partial_sent;
  return s;
}
std::uint64_t MessageLog::partial_volume() const {
  std::uint64_t s = 0;
  for (const auto& p : procs) s += p.partial_sent_volume;
  return s;
}
std::uint64_t MessageLog::max_block_messages_per_call() const {
  if (spmv_calls == 0) return 0;
  std::uint64_t m = 0;
  for (const auto& p : procs) m = std::max(m, p.block_messages());
  return m / spmv_calls;
}
bool MessageLog::conserved() const {
  std::uint64_t gs = 0, gr = 0, gsv = 0, grv = 0, ps = 0, pr = 0, psv = 0, prv = 0;
  for (const auto& p : procs) {
    gs += p.gather_sent;
    gr += p.gather_recv;
    gsv += p.gather_sent_volume;
    grv += p.gather_recv_volume;
    ps += p.partial_sent;
    pr += p.partial_recv;
    psv += p.partial_sent_volume;
    prv += p.partial_recv_volume;
  }
  return gs == gr && gsv == grv && ps == pr && psv == prv;
}

SpmvEngine::SpmvEngine(const DistributionMap& dist, BlockedMatrix a, SpmvOptions opts)
    : n_(dist.size()), a_(std::move(a)), opts_(std::move(opts)), procs_(n_) {
  if (a_.blocks() != n_) throw std::invalid_argument("distribution and tiling disagree on block count");
  if (!opts_.process_order.empty()) {
    auto sorted = opts_.process_order;
    std::sort(sorted.begin(), sorted.end());
    for (std::uint32_t t = 0; t < sorted.size(); ++t)
      if (sorted.size() != n_ || sorted[t] != t) throw std::invalid_argument("process_order must be a permutation");
  }
  std::vector<std::vector<PackedBlock>> held(n_);
  for (const auto& [id, t] : a_.tiles()) {
    const auto owner = dist.owner(id.first, id.second);
    PackedBlock pb;
    if (opts_.packed) {
      pb = pack_block(t, id);
    } else {
      pb.id = id;
      pb.rows = t.rows();
      pb.cols = t.cols();
      pb.kept_rows.resize(t.rows());
      pb.kept_cols.resize(t.cols());
      std::iota(pb.kept_rows.begin(), pb.kept_rows.end(), 0u);
      std::iota(pb.kept_cols.begin(), pb.kept_cols.end(), 0u);
      pb.packed = t;
    }
    held[owner].push_back(std::move(pb));
  }
  for (std::uint32_t p = 0; p < n_; ++p) {
    auto& pr = procs_[p];
    std::map<std::uint32_t, std::set<std::uint32_t>> cols, rows;
    for (const auto& pb : held[p]) {
      cols[pb.id.second].insert(pb.kept_cols.begin(), pb.kept_cols.end());
      rows[pb.id.first].insert(pb.kept_rows.begin(), pb.kept_rows.end());
    }
    for (auto& [j, s] : cols) pr.col_labels[j].assign(s.begin(), s.end());
    for (auto& [i, s] : rows) pr.row_labels[i].assign(s.begin(), s.end());
    for (const auto& pb : held[p]) {
      const auto& cl = pr.col_labels[pb.id.second];
      const auto& rl = pr.row_labels[pb.id.first];
      std::vector<Entry> es;
      for (const auto& e : pb.packed.entries()) {
        const auto gc = pb.kept_cols[e.col], gr = pb.kept_rows[e.row];
        const auto c = static_cast<std::uint32_t>(std::lower_bound(cl.begin(), cl.end(), gc) - cl.begin());
        const auto r = static_cast<std::uint32_t>(std::lower_bound(rl.begin(), rl.end(), gr) - rl.begin());
        es.push_back({r, c, e.value});
      }
      pr.tiles.push_back({pb.id, SparseMatrix::from_entries(static_cast<std::uint32_t>(rl.size()),
                                                             static_cast<std::uint32_t>(cl.size()), std::move(es))});
    }
  }
}

MessageLog SpmvEngine::empty_log() const {
  MessageLog log;
  log.procs.resize(n_);
  return log;
}

std::vector<double> SpmvEngine::multiply(const std::vector<double>& x) const {
  MessageLog log = empty_log();
  return multiply(x, log);
}

std::vector<double> SpmvEngine::multiply(const std::vector<double>& x, MessageLog& log) const {
  if (x.size() != a_.dimension()) throw std::invalid_argument("spmv: vector length does not match matrix");
  if (log.procs.size() != n_) log.procs.resize(n_);
  ++log.spmv_calls;

  std::vector<std::uint32_t> order = opts_.process_order;
  if (order.empty()) {
    order.resize(n_);
    std::iota(order.begin(), order.end(), 0u);
  }
  auto xblock = [&](std::uint32_t j) {
    return std::vector<double>(x.begin() + a_.offset(j), x.begin() + a_.offset(j + 1));
  };

  // Phase 1: vector blocks travel from their owner to every process holding
  // a tile in that block column. Phase 2 (local): multiply into partials.
  std::vector<std::map<std::uint32_t, std::vector<double>>> partial(n_);
  for (auto p : order) {
    const auto& pr = procs_[p];
    std::map<std::uint32_t, std::vector<double>> inbox;
    for (const auto& [j, labels] : pr.col_labels) {
      inbox[j] = pack_vector(xblock(j), labels);
      if (j != p) {
        log.procs[j].gather_sent += 1;
        log.procs[j].gather_sent_volume += labels.size();
        log.procs[p].gather_recv += 1;
        log.procs[p].gather_recv_volume += labels.size();
      }
    }
    for (const auto& [i, labels] : pr.row_labels) partial[p][i].assign(labels.size(), 0.0);
    for (const auto& lt : pr.tiles) {
      lt.m.multiply_add(inbox[lt.id.second].data(), partial[p][lt.id.first].data());
    }
  }

  // Phase 3: partial sums go to the owner of Y_i and are added there, local
  // partial first, then senders in ascending id.
  std::vector<double> y(x.size(), 0.0);
  for (std::uint32_t i = 0; i < n_; ++i) {
    auto add = [&](std::uint32_t p) {
      auto it = partial[p].find(i);
      if (it == partial[p].end()) return;
      const auto& labels = procs_[p].row_labels.at(i);
      for (std::size_t t = 0; t < labels.size(); ++t) y[a_.offset(i) + labels[t]] += it->second[t];
      if (p != i) {
        log.procs[p].partial_sent += 1;
        log.procs[p].partial_sent_volume += labels.size();
        log.procs[i].partial_recv += 1;
        log.procs[i].partial_recv_volume += labels.size();
      }
    };
    add(i);
    for (std::uint32_t p = 0; p < n_; ++p)
      if (p != i) add(p);
  }
  return y;
}

}  // namespace pgkit
