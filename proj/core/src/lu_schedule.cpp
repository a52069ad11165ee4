#include "pgkit/lu_schedule.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "pgkit/errors.hpp"
#include "pgkit/lu_geometry.hpp"

namespace pgkit {

const char* to_string(Category c) {
  switch (c) {
    case Category::CompB3: return "comp_b3";
    case Category::CompB2: return "comp_b2";
    case Category::CommB2: return "comm_b2";
  }
  return "?";
}

const char* to_string(Op op) {
  switch (op) {
    case Op::Factor: return "factor";
    case Op::InvL: return "inv_l";
    case Op::InvU: return "inv_u";
    case Op::ColUpdate: return "col_update";
    case Op::RowUpdate: return "row_update";
    case Op::Product: return "product";
    case Op::Update: return "update";
    case Op::Send: return "send";
  }
  return "?";
}

const char* to_string(Phase p) {
  switch (p) {
    case Phase::Diagonal: return "diagonal";
    case Phase::DiagonalComm: return "diagonal_comm";
    case Phase::RowCol: return "row_col";
    case Phase::Broadcast: return "broadcast";
    case Phase::Gather: return "gather";
    case Phase::Multiply: return "multiply";
    case Phase::Subtract: return "subtract";
    case Phase::Return: return "return";
  }
  return "?";
}

Category category_of(Op op) {
  switch (op) {
    case Op::Update: return Category::CompB2;
    case Op::Send: return Category::CommB2;
    default: return Category::CompB3;
  }
}

std::uint32_t phase_participation(const Schedule& s, std::uint32_t iteration, Phase phase) {
  std::set<std::uint32_t> procs;
  for (const auto& c : s.cycles)
    if (c.iteration == iteration && c.phase == phase)
      for (const auto& e : s.events_of(c)) procs.insert(e.proc);
  return static_cast<std::uint32_t>(procs.size());
}

namespace {

Versioned A(std::uint32_t r, std::uint32_t c, std::uint32_t v) { return {{DataKind::A, r, c}, v}; }
Versioned LInv(std::uint32_t i) { return {{DataKind::LInv, i, i}, 1}; }
Versioned UInv(std::uint32_t i) { return {{DataKind::UInv, i, i}, 1}; }
Versioned T(std::uint32_t r, std::uint32_t c, std::uint32_t v) { return {{DataKind::T, r, c}, v}; }

Event compute(std::uint32_t proc, Op op, Versioned out, Versioned in0, Versioned in1 = {}) {
  Event e;
  e.proc = proc;
  e.op = op;
  e.out = out;
  e.in0 = in0;
  e.in1 = in1;
  return e;
}

// Undirected graph with deterministic BFS trees from every node.
struct Network {
  std::vector<std::vector<std::uint32_t>> adj;  // sorted
  std::vector<std::vector<std::uint32_t>> dist;
  std::vector<std::vector<std::uint32_t>> parent;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> link_id;
  std::vector<std::vector<std::uint32_t>> links;

  explicit Network(std::vector<std::vector<std::uint32_t>> a) : adj(std::move(a)) {
    const auto n = static_cast<std::uint32_t>(adj.size());
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    for (std::uint32_t u = 0; u < n; ++u)
      for (auto v : adj[u])
        if (u < v) {
          link_id[{u, v}] = static_cast<std::uint32_t>(links.size());
          links.push_back({u, v});
        }
    constexpr std::uint32_t inf = ~std::uint32_t{0};
    dist.assign(n, std::vector<std::uint32_t>(n, inf));
    parent.assign(n, std::vector<std::uint32_t>(n, inf));
    for (std::uint32_t s = 0; s < n; ++s) {
      std::deque<std::uint32_t> q{s};
      dist[s][s] = 0;
      parent[s][s] = s;
      while (!q.empty()) {
        auto u = q.front();
        q.pop_front();
        for (auto v : adj[u]) {
          if (dist[s][v] != inf) continue;
          dist[s][v] = dist[s][u] + 1;
          parent[s][v] = u;
          q.push_back(v);
        }
      }
      for (std::uint32_t v = 0; v < n; ++v)
        if (dist[s][v] == inf) throw ConfigError("interconnect graph is disconnected");
    }
  }

  std::uint32_t link(std::uint32_t a, std::uint32_t b) const { return link_id.at({std::min(a, b), std::max(a, b)}); }
};

struct Transfer {
  Versioned data;
  std::vector<std::uint32_t> holders;
  std::vector<std::uint32_t> dests;
};

class Builder {
 public:
  explicit Builder(Schedule& s) : s_(s) {}

  void open(Category cat, Phase phase, std::uint32_t it) {
    Cycle c;
    c.category = cat;
    c.phase = phase;
    c.iteration = it;
    c.first_event = static_cast<std::uint32_t>(s_.events.size());
    s_.cycles.push_back(c);
  }

  void add(Event e, const std::vector<std::uint32_t>& recv = {}) {
    e.recv_begin = static_cast<std::uint32_t>(s_.receivers.size());
    e.recv_count = static_cast<std::uint32_t>(recv.size());
    s_.receivers.insert(s_.receivers.end(), recv.begin(), recv.end());
    s_.events.push_back(e);
    ++s_.cycles.back().event_count;
  }

  // One event per processor per cycle; the phase lasts as long as the
  // longest list.
  void compute_phase(Phase phase, std::uint32_t it, const std::map<std::uint32_t, std::vector<Event>>& work) {
    std::size_t len = 0;
    for (const auto& [p, w] : work) len = std::max(len, w.size());
    for (std::size_t c = 0; c < len; ++c) {
      open(category_of(work.begin()->second.front().op), phase, it);
      for (const auto& [p, w] : work)
        if (c < w.size()) add(w[c]);
    }
  }

  // Greedy multicast over point-to-point links. Each transfer follows a
  // shortest-path tree from its nearest holder; every cycle a processor
  // either sends once or receives once, and older transfers go first.
  void transfers(Phase phase, std::uint32_t it, const Network& net, const std::vector<Transfer>& xs) {
    const auto n = static_cast<std::uint32_t>(net.adj.size());
    struct Edge {
      std::uint32_t from, to;
    };
    std::vector<std::vector<Edge>> tree(xs.size());
    // out[u][slot] holds (transfer, target) pairs ready to leave u.
    std::vector<std::vector<std::deque<std::uint32_t>>> out(n);
    for (std::uint32_t u = 0; u < n; ++u) out[u].resize(net.adj[u].size());
    std::size_t pending = 0;

    auto enqueue_from = [&](std::uint32_t x, std::uint32_t u) {
      for (const auto& e : tree[x]) {
        if (e.from != u) continue;
        const auto slot = static_cast<std::size_t>(
            std::lower_bound(net.adj[u].begin(), net.adj[u].end(), e.to) - net.adj[u].begin());
        out[u][slot].push_back(x);
        ++pending;
      }
    };

    for (std::uint32_t x = 0; x < xs.size(); ++x) {
      const auto& t = xs[x];
      std::set<std::uint32_t> in_tree(t.holders.begin(), t.holders.end());
      for (auto d : t.dests) {
        if (in_tree.count(d)) continue;
        std::uint32_t h = t.holders.front();
        for (auto c : t.holders)
          if (net.dist[c][d] < net.dist[h][d] || (net.dist[c][d] == net.dist[h][d] && c < h)) h = c;
        for (std::uint32_t v = d; !in_tree.count(v);) {
          const auto u = net.parent[h][v];
          tree[x].push_back({u, v});
          in_tree.insert(v);
          v = u;
        }
      }
      for (auto h : t.holders) enqueue_from(x, h);
    }

    std::uint32_t rotation = 0;
    while (pending > 0) {
      open(Category::CommB2, phase, it);
      std::vector<char> sending(n, 0), receiving(n, 0);
      std::vector<std::pair<std::uint32_t, std::uint32_t>> arrivals;
      for (std::uint32_t t = 0; t < n; ++t) {
        const std::uint32_t u = (rotation + t) % n;
        if (receiving[u]) continue;
        std::size_t best = out[u].size();
        for (std::size_t slot = 0; slot < out[u].size(); ++slot) {
          if (out[u][slot].empty()) continue;
          const auto v = net.adj[u][slot];
          if (sending[v] || receiving[v]) continue;
          if (best == out[u].size() || out[u][slot].front() < out[u][best].front()) best = slot;
        }
        if (best == out[u].size()) continue;
        const auto x = out[u][best].front();
        out[u][best].pop_front();
        --pending;
        const auto v = net.adj[u][best];
        sending[u] = 1;
        receiving[v] = 1;
        Event e;
        e.proc = u;
        e.op = Op::Send;
        e.out = xs[x].data;
        e.resource = net.link(u, v);
        add(e, {v});
        arrivals.emplace_back(x, v);
      }
      for (auto [x, v] : arrivals) enqueue_from(x, v);
      rotation = (rotation + 1) % n;
    }
  }

 private:
  Schedule& s_;
};

void push(std::map<std::uint32_t, std::vector<Event>>& work, const Event& e) { work[e.proc].push_back(e); }

void check_blocks(std::uint32_t blocks) {
  if (blocks == 0) throw std::invalid_argument("block count must be positive");
  if (blocks > 4096) throw std::invalid_argument("block count too large");
}

void diagonal_phase(Builder& b, std::uint32_t i, const std::vector<std::uint32_t>& owners) {
  b.open(Category::CompB3, Phase::Diagonal, i);
  for (auto p : owners) b.add(compute(p, Op::Factor, A(i, i, i + 1), A(i, i, i)));
  b.open(Category::CompB3, Phase::Diagonal, i);
  for (auto p : owners) b.add(compute(p, Op::InvL, LInv(i), A(i, i, i + 1)));
  b.open(Category::CompB3, Phase::Diagonal, i);
  for (auto p : owners) b.add(compute(p, Op::InvU, UInv(i), A(i, i, i + 1)));
}

Event col_update(std::uint32_t p, std::uint32_t i, std::uint32_t j) {
  return compute(p, Op::ColUpdate, A(j, i, i + 1), A(j, i, i), UInv(i));
}
Event row_update(std::uint32_t p, std::uint32_t i, std::uint32_t k) {
  return compute(p, Op::RowUpdate, A(i, k, i + 1), LInv(i), A(i, k, i));
}
Event product(std::uint32_t p, std::uint32_t i, std::uint32_t j, std::uint32_t k) {
  return compute(p, Op::Product, T(j, k, i + 1), A(j, i, i + 1), A(i, k, i + 1));
}
Event update(std::uint32_t p, std::uint32_t i, std::uint32_t j, std::uint32_t k) {
  return compute(p, Op::Update, A(j, k, i + 1), A(j, k, i), T(j, k, i + 1));
}

// Row/column updates for the PG schemes: non-residue blocks on their home
// line, residue blocks on every line through the iteration's point.
std::map<std::uint32_t, std::vector<Event>> pg_rowcol_work(const PgLuGeometry& geo, std::uint32_t i,
                                                           std::uint32_t blocks) {
  std::map<std::uint32_t, std::vector<Event>> work;
  for (std::uint32_t j = i + 1; j < blocks; ++j) {
    for (auto p : geo.compute_map_c2(i, j, i)) {
      push(work, col_update(p, i, j));
      push(work, row_update(p, i, j));
    }
  }
  return work;
}

void fill_pg_homes(Schedule& s, const PgLuGeometry& geo) {
  s.homes.resize(std::size_t(s.block_count) * s.block_count);
  for (std::uint32_t j = 0; j < s.block_count; ++j)
    for (std::uint32_t k = 0; k < s.block_count; ++k) s.homes[std::size_t(j) * s.block_count + k] = geo.memory_map(j, k);
}

}  // namespace

Schedule scheme2_schedule(std::uint32_t blocks) {
  check_blocks(blocks);
  const auto& geo = pg_lu_geometry();
  Schedule s;
  s.scheme = "pg2";
  s.processors = PgLuGeometry::kLines;
  s.block_count = blocks;
  s.resource_kind = ResourceKind::Bus;
  for (std::uint32_t p = 0; p < PgLuGeometry::kPlanes; ++p) s.resource_members.push_back(geo.lines_in(p));
  fill_pg_homes(s, geo);
  Builder b(s);

  for (std::uint32_t i = 0; i < blocks; ++i) {
    const std::uint32_t pi = i % PgLuGeometry::kPoints;
    const auto& copies = geo.diagonal_copies(pi);
    const auto& buses = geo.diagonal_buses(pi);
    const std::vector<std::uint32_t> owners(copies.begin(), copies.end());
    diagonal_phase(b, i, owners);

    // Inverses, then residue blocks, over the five diagonal buses.
    std::vector<Versioned> items{LInv(i), UInv(i)};
    for (std::uint32_t j = i + 1; j < blocks; ++j) {
      if (j % PgLuGeometry::kPoints != pi) continue;
      items.push_back(A(j, i, i));
      items.push_back(A(i, j, i));
    }
    for (const auto& item : items) {
      b.open(Category::CommB2, Phase::DiagonalComm, i);
      for (std::uint32_t c = 0; c < PgLuGeometry::kCopies; ++c) {
        std::vector<std::uint32_t> recv;
        for (auto l : geo.lines_in(buses[c]))
          if (l != copies[c] && geo.line_has_point(l, pi)) recv.push_back(l);
        Event e;
        e.proc = copies[c];
        e.op = Op::Send;
        e.out = item;
        e.resource = buses[c];
        b.add(e, recv);
      }
    }

    const auto rowcol = pg_rowcol_work(geo, i, blocks);
    if (!rowcol.empty()) b.compute_phase(Phase::RowCol, i, rowcol);

    // Seven broadcast steps: in step q a point-i line sends each block it
    // just produced on bus S_q^-1(line), one block per cycle.
    std::map<Versioned, std::set<std::uint32_t>, bool (*)(const Versioned&, const Versioned&)> need(
        [](const Versioned& x, const Versioned& y) {
          return std::tie(x.key, x.version) < std::tie(y.key, y.version);
        });
    for (std::uint32_t j = i + 1; j < blocks; ++j) {
      for (std::uint32_t k = i + 1; k < blocks; ++k) {
        for (auto l : s.home(j, k)) {
          need[A(j, i, i + 1)].insert(l);
          need[A(i, k, i + 1)].insert(l);
        }
      }
    }
    std::size_t steplen = 0;
    for (const auto& [p, w] : rowcol) steplen = std::max(steplen, w.size());
    for (int q = 1; q <= 7 && steplen > 0; ++q) {
      for (std::size_t c = 0; c < steplen; ++c) {
        b.open(Category::CommB2, Phase::Broadcast, i);
        for (const auto& [p, w] : rowcol) {
          if (c >= w.size()) continue;
          const auto bus = static_cast<std::uint32_t>(geo.S_inv(q)(p));
          const Versioned item = w[c].out;
          std::vector<std::uint32_t> recv;
          const auto it = need.find(item);
          for (auto l : geo.lines_in(bus)) {
            if (geo.line_has_point(l, pi)) continue;
            if (it != need.end() && it->second.count(l)) recv.push_back(l);
          }
          Event e;
          e.proc = p;
          e.op = Op::Send;
          e.out = item;
          e.resource = bus;
          b.add(e, recv);
        }
      }
    }

    std::map<std::uint32_t, std::vector<Event>> mul, sub;
    for (std::uint32_t j = i + 1; j < blocks; ++j) {
      for (std::uint32_t k = i + 1; k < blocks; ++k) {
        for (auto l : geo.compute_map_c2(i, j, k)) {
          push(mul, product(l, i, j, k));
          push(sub, update(l, i, j, k));
        }
      }
    }
    if (!mul.empty()) {
      b.compute_phase(Phase::Multiply, i, mul);
      b.compute_phase(Phase::Subtract, i, sub);
    }
  }
  return s;
}

Schedule scheme1_schedule(std::uint32_t blocks) {
  check_blocks(blocks);
  const auto& geo = pg_lu_geometry();
  Schedule s;
  s.scheme = "pg1";
  s.processors = PgLuGeometry::kLines;
  s.block_count = blocks;
  s.resource_kind = ResourceKind::Link;
  std::vector<std::vector<std::uint32_t>> adj(PgLuGeometry::kLines);
  for (std::uint32_t l = 0; l < PgLuGeometry::kLines; ++l) adj[l] = geo.neighbors(l);
  const Network net(adj);
  s.resource_members = net.links;
  fill_pg_homes(s, geo);
  Builder b(s);

  for (std::uint32_t i = 0; i < blocks; ++i) {
    const std::uint32_t pi = i % PgLuGeometry::kPoints;
    const auto& copies = geo.diagonal_copies(pi);
    const std::vector<std::uint32_t> owners(copies.begin(), copies.end());
    diagonal_phase(b, i, owners);

    const auto rowcol = pg_rowcol_work(geo, i, blocks);
    std::vector<std::uint32_t> workers;
    for (const auto& [p, w] : rowcol) workers.push_back(p);

    std::vector<Transfer> diag;
    if (!workers.empty()) {
      diag.push_back({LInv(i), owners, workers});
      diag.push_back({UInv(i), owners, workers});
      for (std::uint32_t j = i + 1; j < blocks; ++j) {
        if (j % PgLuGeometry::kPoints != pi) continue;
        diag.push_back({A(j, i, i), owners, geo.lines_through(pi)});
        diag.push_back({A(i, j, i), owners, geo.lines_through(pi)});
      }
    }
    b.transfers(Phase::DiagonalComm, i, net, diag);
    if (!rowcol.empty()) b.compute_phase(Phase::RowCol, i, rowcol);

    // Fresh L/U blocks and the target A blocks go to the compute lines.
    std::map<std::uint32_t, std::set<std::uint32_t>> need_l, need_u;
    std::vector<Transfer> gather, ret;
    std::map<std::uint32_t, std::vector<Event>> mul, sub;
    for (std::uint32_t j = i + 1; j < blocks; ++j) {
      for (std::uint32_t k = i + 1; k < blocks; ++k) {
        const auto& home = s.home(j, k);
        for (auto c : geo.compute_map_c1(i, j, k)) {
          need_l[j].insert(c);
          need_u[k].insert(c);
          push(mul, product(c, i, j, k));
          push(sub, update(c, i, j, k));
          if (std::find(home.begin(), home.end(), c) == home.end()) {
            gather.push_back({A(j, k, i), home, {c}});
            ret.push_back({A(j, k, i + 1), {c}, home});
          }
        }
      }
    }
    std::vector<Transfer> fresh;
    for (std::uint32_t j = i + 1; j < blocks; ++j) {
      const auto holders = geo.compute_map_c2(i, j, i);
      fresh.push_back({A(j, i, i + 1), holders, {need_l[j].begin(), need_l[j].end()}});
      fresh.push_back({A(i, j, i + 1), holders, {need_u[j].begin(), need_u[j].end()}});
    }
    fresh.insert(fresh.end(), gather.begin(), gather.end());
    b.transfers(Phase::Gather, i, net, fresh);
    if (!mul.empty()) {
      b.compute_phase(Phase::Multiply, i, mul);
      b.compute_phase(Phase::Subtract, i, sub);
    }
    b.transfers(Phase::Return, i, net, ret);
  }
  return s;
}

Schedule mesh_schedule(std::uint32_t blocks, std::uint32_t q) {
  check_blocks(blocks);
  if (q == 0 || q > 64) throw std::invalid_argument("mesh side must be in [1, 64]");
  Schedule s;
  s.scheme = "mesh";
  s.processors = q * q;
  s.block_count = blocks;
  s.resource_kind = ResourceKind::Link;
  s.grid = std::to_string(q) + "x" + std::to_string(q);
  std::vector<std::vector<std::uint32_t>> adj(s.processors);
  for (std::uint32_t r = 0; r < q; ++r) {
    for (std::uint32_t c = 0; c < q; ++c) {
      const auto u = r * q + c;
      if (c + 1 < q) {
        adj[u].push_back(u + 1);
        adj[u + 1].push_back(u);
      }
      if (r + 1 < q) {
        adj[u].push_back(u + q);
        adj[u + q].push_back(u);
      }
    }
  }
  const Network net(adj);
  s.resource_members = net.links;
  auto home = [&](std::uint32_t j, std::uint32_t k) { return (j % q) * q + (k % q); };
  s.homes.resize(std::size_t(blocks) * blocks);
  for (std::uint32_t j = 0; j < blocks; ++j)
    for (std::uint32_t k = 0; k < blocks; ++k) s.homes[std::size_t(j) * blocks + k] = {home(j, k)};
  Builder b(s);

  for (std::uint32_t i = 0; i < blocks; ++i) {
    const auto d = home(i, i);
    diagonal_phase(b, i, {d});

    std::set<std::uint32_t> row_owners, col_owners;
    std::map<std::uint32_t, std::vector<Event>> rows, cols;
    for (std::uint32_t k = i + 1; k < blocks; ++k) {
      row_owners.insert(home(i, k));
      col_owners.insert(home(k, i));
      push(rows, row_update(home(i, k), i, k));
      push(cols, col_update(home(k, i), i, k));
    }
    std::vector<Transfer> inv;
    if (!row_owners.empty()) {
      inv.push_back({LInv(i), {d}, {row_owners.begin(), row_owners.end()}});
      inv.push_back({UInv(i), {d}, {col_owners.begin(), col_owners.end()}});
    }
    b.transfers(Phase::DiagonalComm, i, net, inv);
    if (!rows.empty()) {
      b.compute_phase(Phase::RowCol, i, rows);
      b.compute_phase(Phase::RowCol, i, cols);
    }

    std::vector<Transfer> fan;
    for (std::uint32_t j = i + 1; j < blocks; ++j) {
      std::set<std::uint32_t> lrow, ucol;
      for (std::uint32_t k = i + 1; k < blocks; ++k) {
        lrow.insert(home(j, k));
        ucol.insert(home(k, j));
      }
      fan.push_back({A(j, i, i + 1), {home(j, i)}, {lrow.begin(), lrow.end()}});
      fan.push_back({A(i, j, i + 1), {home(i, j)}, {ucol.begin(), ucol.end()}});
    }
    b.transfers(Phase::Gather, i, net, fan);

    std::map<std::uint32_t, std::vector<Event>> mul, sub;
    for (std::uint32_t j = i + 1; j < blocks; ++j) {
      for (std::uint32_t k = i + 1; k < blocks; ++k) {
        push(mul, product(home(j, k), i, j, k));
        push(sub, update(home(j, k), i, j, k));
      }
    }
    if (!mul.empty()) {
      b.compute_phase(Phase::Multiply, i, mul);
      b.compute_phase(Phase::Subtract, i, sub);
    }
  }
  return s;
}

}  // namespace pgkit
