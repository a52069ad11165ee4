#include "pgkit/lu_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

#include "pgkit/block_lu.hpp"
#include "pgkit/errors.hpp"

namespace pgkit {

CycleLog cycle_log(const Schedule& s) {
  CycleLog log;
  log.processors = s.processors;
  log.active.assign(s.processors, {});
  std::vector<std::uint64_t> stamp(s.processors, ~std::uint64_t{0});
  for (std::size_t c = 0; c < s.cycles.size(); ++c) {
    const auto cat = static_cast<int>(s.cycles[c].category);
    ++log.total[cat];
    for (const auto& e : s.events_of(s.cycles[c])) {
      if (stamp[e.proc] == c) continue;
      stamp[e.proc] = c;
      ++log.active[e.proc][cat];
    }
  }
  for (int cat = 0; cat < kCategories; ++cat) {
    std::uint64_t sum = 0;
    for (const auto& a : log.active) {
      sum += a[cat];
      log.max_active[cat] = std::max(log.max_active[cat], a[cat]);
    }
    log.average[cat] = s.processors ? double(sum) / s.processors : 0.0;
    log.utilization[cat] = log.total[cat] ? log.average[cat] / double(log.total[cat]) : 0.0;
  }
  return log;
}

double normalized_time(std::uint64_t cycles, std::uint32_t b, int order) {
  if (order != 2 && order != 3) throw std::invalid_argument("normalized_time: order must be 2 or 3");
  return double(cycles) * std::pow(double(b), order) / (24.0 * 24.0 * 24.0);
}

namespace {

struct Slot {
  std::uint32_t version = 0;
  std::shared_ptr<const DenseMatrix> data;
};

using Memory = std::map<DataKey, Slot>;

struct Write {
  std::uint32_t proc;
  DataKey key;
  std::uint32_t version;
  std::shared_ptr<const DenseMatrix> data;
};

std::string describe(const Versioned& v) {
  const char* kind = v.key.kind == DataKind::A ? "A" : v.key.kind == DataKind::LInv ? "Linv" : v.key.kind == DataKind::UInv ? "Uinv" : "T";
  return std::string(kind) + "(" + std::to_string(v.key.row) + "," + std::to_string(v.key.col) + ")@" +
         std::to_string(v.version);
}

class Machine {
 public:
  Machine(const Schedule& s, const DenseMatrix& a, SimOptions opts) : s_(s), opts_(opts), mem_(s.processors) {
    if (s.block_count == 0 || a.rows() % s.block_count != 0)
      throw std::invalid_argument("simulate: matrix order is not a multiple of the block count");
    const auto grid = split_blocks(a, a.rows() / s.block_count);
    for (std::uint32_t j = 0; j < s.block_count; ++j) {
      for (std::uint32_t k = 0; k < s.block_count; ++k) {
        auto blk = std::make_shared<const DenseMatrix>(grid.at(j, k));
        for (auto h : s.home(j, k)) mem_.at(h)[{DataKind::A, j, k}] = {0, blk};
      }
    }
    b_ = grid.size;
  }

  SimResult run() {
    SimResult res;
    std::uint32_t iteration = s_.cycles.empty() ? 0 : s_.cycles.front().iteration;
    for (std::size_t c = 0; c < s_.cycles.size(); ++c) {
      if (s_.cycles[c].iteration != iteration) {
        end_iteration();
        iteration = s_.cycles[c].iteration;
      }
      cycle_ = c;
      step(s_.cycles[c]);
    }
    end_iteration();
    res.factors = collect();
    res.log = cycle_log(s_);
    res.violations = v_;
    res.cycles = s_.cycles.size();
    return res;
  }

 private:
  void flag(std::uint64_t& counter, const std::string& what) {
    ++counter;
    if (opts_.strict) throw ScheduleError("cycle " + std::to_string(cycle_) + ": " + what);
  }

  const Slot* fetch(std::uint32_t proc, const Versioned& v) {
    const auto& m = mem_[proc];
    auto it = m.find(v.key);
    if (it == m.end() || it->second.version != v.version) {
      flag(v_.missing_data, "processor " + std::to_string(proc) + " lacks " + describe(v));
      return nullptr;
    }
    return &it->second;
  }

  void step(const Cycle& cyc) {
    std::map<std::uint32_t, int> sends, recvs, comps, bus;
    std::vector<Write> writes;
    for (const auto& e : s_.events_of(cyc)) {
      if (e.op == Op::Send) {
        ++sends[e.proc];
        if (e.resource != kNoResource) {
          if (++bus[e.resource] > 1) flag(v_.bus_conflicts, "resource " + std::to_string(e.resource) + " has two senders");
          const auto& members = s_.resource_members.at(e.resource);
          auto attached = [&](std::uint32_t p) { return std::find(members.begin(), members.end(), p) != members.end(); };
          if (!attached(e.proc)) flag(v_.foreign_resource, "sender not attached to resource");
          for (auto r : s_.receivers_of(e))
            if (!attached(r)) flag(v_.foreign_resource, "receiver not attached to resource");
        }
        const Slot* src = fetch(e.proc, e.out);
        for (auto r : s_.receivers_of(e)) {
          ++recvs[r];
          if (src) writes.push_back({r, e.out.key, e.out.version, src->data});
        }
        continue;
      }
      ++comps[e.proc];
      const Slot* x = fetch(e.proc, e.in0);
      const bool binary = e.op != Op::Factor && e.op != Op::InvL && e.op != Op::InvU;
      const Slot* y = binary ? fetch(e.proc, e.in1) : nullptr;
      if (!x || (binary && !y)) continue;
      DenseMatrix out;
      switch (e.op) {
        case Op::Factor: out = kernels::factor(*x->data); break;
        case Op::InvL: out = kernels::inv_l(*x->data); break;
        case Op::InvU: out = kernels::inv_u(*x->data); break;
        case Op::ColUpdate: out = kernels::col_update(*x->data, *y->data); break;
        case Op::RowUpdate: out = kernels::row_update(*x->data, *y->data); break;
        case Op::Product: out = kernels::product(*x->data, *y->data); break;
        case Op::Update: out = kernels::update(*x->data, *y->data); break;
        case Op::Send: break;
      }
      writes.push_back({e.proc, e.out.key, e.out.version, std::make_shared<const DenseMatrix>(std::move(out))});
    }
    for (const auto& [p, n] : sends) {
      if (n > 1) flag(v_.multiple_sends, "processor " + std::to_string(p) + " sends twice");
      if (recvs.count(p)) flag(v_.send_and_receive, "processor " + std::to_string(p) + " sends and receives");
    }
    for (const auto& [p, n] : recvs)
      if (n > 1) flag(v_.multiple_receives, "processor " + std::to_string(p) + " receives twice");
    for (const auto& [p, n] : comps)
      if (n > 1) flag(v_.multiple_computes, "processor " + std::to_string(p) + " computes twice");

    std::set<std::pair<std::uint32_t, DataKey>> written;
    for (auto& w : writes) {
      if (!written.insert({w.proc, w.key}).second)
        flag(v_.writer_conflicts, "two writes of " + describe({w.key, w.version}) + " on processor " + std::to_string(w.proc));
      mem_[w.proc][w.key] = {w.version, std::move(w.data)};
    }
  }

  void end_iteration() {
    // Copies of one datum must agree bit for bit wherever they live.
    std::map<std::pair<DataKey, std::uint32_t>, const DenseMatrix*> seen;
    for (const auto& m : mem_) {
      for (const auto& [key, slot] : m) {
        auto [it, fresh] = seen.emplace(std::make_pair(key, slot.version), slot.data.get());
        if (!fresh && it->second != slot.data.get() && !(*it->second == *slot.data))
          flag(v_.incoherent_copies, "copies of " + describe({key, slot.version}) + " differ");
      }
    }
    for (std::uint32_t p = 0; p < mem_.size(); ++p) {
      for (auto it = mem_[p].begin(); it != mem_[p].end();) {
        bool keep = false;
        if (it->first.kind == DataKind::A) {
          const auto& h = s_.home(it->first.row, it->first.col);
          keep = std::find(h.begin(), h.end(), p) != h.end();
        }
        it = keep ? std::next(it) : mem_[p].erase(it);
      }
    }
  }

  DenseMatrix collect() {
    BlockGrid g;
    g.count = s_.block_count;
    g.size = b_;
    g.blocks.assign(std::size_t(g.count) * g.count, DenseMatrix(b_, b_));
    for (std::uint32_t j = 0; j < g.count; ++j) {
      for (std::uint32_t k = 0; k < g.count; ++k) {
        const std::uint32_t want = std::min(j, k) + 1;
        for (auto h : s_.home(j, k)) {
          auto it = mem_[h].find({DataKind::A, j, k});
          if (it == mem_[h].end() || it->second.version != want) {
            flag(v_.missing_results, "home " + std::to_string(h) + " lacks final " + describe({{DataKind::A, j, k}, want}));
            continue;
          }
          g.at(j, k) = *it->second.data;
        }
      }
    }
    return join_blocks(g);
  }

  const Schedule& s_;
  SimOptions opts_;
  std::vector<Memory> mem_;
  std::uint32_t b_ = 0;
  std::size_t cycle_ = 0;
  Violations v_;
};

}  // namespace

SimResult simulate(const Schedule& s, const DenseMatrix& a, SimOptions opts) {
  Machine m(s, a, opts);
  return m.run();
}

}  // namespace pgkit
