#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "pgkit/automorphisms.hpp"
#include "pgkit/block_lu.hpp"
#include "pgkit/distribution.hpp"
#include "pgkit/lu_schedule.hpp"
#include "pgkit/lu_simulator.hpp"
#include "pgkit/matrix_io.hpp"
#include "pgkit/pcg.hpp"
#include "pgkit/projective_space.hpp"
#include "pgkit/spmv.hpp"

#ifndef PGKIT_VERSION
#define PGKIT_VERSION "unknown"
#endif

namespace pgkit::cli {

using json = nlohmann::ordered_json;

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("PG_PARALLEL_SEED");
  if (!v || !*v) return std::nullopt;
  std::uint64_t out = 0;
  for (const char* c = v; *c; ++c) {
    if (*c < '0' || *c > '9') throw UsageError("PG_PARALLEL_SEED must be an unsigned integer");
    out = out * 10 + std::uint64_t(*c - '0');
  }
  return out;
}

json envelope(const std::string& command, json config, json result) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["config"] = std::move(config);
  j["result"] = std::move(result);
  j["environment"] = {{"pgkit_version", PGKIT_VERSION},
#if defined(__clang__)
                      {"compiler", "clang " __clang_version__},
#elif defined(__GNUC__)
                      {"compiler", "gcc " __VERSION__},
#else
                      {"compiler", "unknown"},
#endif
                      {"cxx_standard", long(__cplusplus)}};
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("write to " + path + " failed");
}

namespace {

json points_json(const std::vector<Subspace>& subs) {
  json arr = json::array();
  for (const auto& s : subs) arr.push_back(s.points);
  return arr;
}

std::uint32_t plane_order(std::uint32_t p) {
  if (!prime_power(p)) throw UsageError("projective distribution needs a prime power p, got " + std::to_string(p));
  return p * p + p + 1;
}

DistributionMap make_distribution(const std::string& dist, std::uint32_t p) {
  const std::uint32_t n = plane_order(p);
  if (dist == "projective") return projective_distribution(p);
  if (dist == "rowwise") return rowwise_distribution(n);
  throw UsageError("unknown distribution '" + dist + "' (expected projective or rowwise)");
}

SparseMatrix load_matrix(const MatrixSource& src) {
  if (src.path.empty() == src.gen.empty()) throw UsageError("give exactly one of --matrix and --gen");
  if (!src.path.empty()) {
    std::ifstream in(src.path);
    if (!in) throw IoError("cannot open " + src.path);
    return read_matrix_market(in);
  }
  const auto seed = env_seed();
  try {
    return generate_matrix(src.gen, seed ? std::to_string(*seed) : std::string());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

json matrix_source_json(const MatrixSource& m) {
  json j;
  if (!m.path.empty()) j["matrix"] = m.path;
  if (!m.gen.empty()) j["gen"] = m.gen;
  return j;
}

json traffic_json(const MessageLog& log) {
  json per = json::array();
  for (std::size_t k = 0; k < log.procs.size(); ++k) {
    const auto& t = log.procs[k];
    per.push_back({{"process", k},
                   {"gather_recv", t.gather_recv},
                   {"gather_recv_volume", t.gather_recv_volume},
                   {"gather_sent", t.gather_sent},
                   {"gather_sent_volume", t.gather_sent_volume},
                   {"partial_sent", t.partial_sent},
                   {"partial_sent_volume", t.partial_sent_volume},
                   {"partial_recv", t.partial_recv},
                   {"partial_recv_volume", t.partial_recv_volume},
                   {"scalar_reductions", t.scalar_reductions}});
  }
  return {{"spmv_calls", log.spmv_calls},
          {"gather_messages", log.gather_messages()},
          {"gather_volume", log.gather_volume()},
          {"partial_messages", log.partial_messages()},
          {"partial_volume", log.partial_volume()},
          {"max_block_messages_per_call", log.max_block_messages_per_call()},
          {"conserved", log.conserved()},
          {"processes", std::move(per)}};
}

std::string traffic_csv(const MessageLog& log) {
  std::ostringstream os;
  os << "process,gather_recv,gather_recv_volume,partial_sent,partial_sent_volume,scalar_reductions\n";
  for (std::size_t k = 0; k < log.procs.size(); ++k) {
    const auto& t = log.procs[k];
    os << k << ',' << t.gather_recv << ',' << t.gather_recv_volume << ',' << t.partial_sent << ','
       << t.partial_sent_volume << ',' << t.scalar_reductions << '\n';
  }
  return os.str();
}

}  // namespace

Outcome run_geometry(const GeometryArgs& a) {
  if (a.d < 1) throw UsageError("--d must be at least 1");
  if (!prime_power(a.q)) throw UsageError("--q must be a prime power");
  if (a.max_dim < 0) throw UsageError("--max-dim must be non-negative");
  const int top = std::min(a.max_dim, a.d);
  std::set<int> dims;
  for (int l = 0; l <= top; ++l) dims.insert(l);
  if (a.matchings && (top < 2)) throw UsageError("--matchings needs lines and planes (--max-dim >= 2, --d >= 2)");
  if (!a.edges.empty() && top < 2) throw UsageError("--edges needs planes (--max-dim >= 2, --d >= 2)");

  const auto space = ProjectiveSpace::build(a.d, a.q, dims);
  json counts;
  static const char* names[] = {"points", "lines", "planes"};
  for (int l = 0; l <= top; ++l)
    counts[l < 3 ? names[l] : "dim" + std::to_string(l)] = space.subspaces(l).size();

  json res;
  res["counts"] = counts;
  json tables;
  for (int l = 1; l <= top; ++l) tables[l < 3 ? names[l] : "dim" + std::to_string(l)] = points_json(space.subspaces(l));
  res["subspaces"] = std::move(tables);
  if (a.d == 2) res["labeled_lines"] = points_json(labeled_plane_lines(space));

  if (top >= 2) {
    const auto up = space.containing(1, 2);
    if (!a.edges.empty()) {
      std::ostringstream os;
      for (std::size_t l = 0; l < up.size(); ++l)
        for (auto h : up[l]) os << l << ' ' << h << '\n';
      write_text(a.edges, os.str());
    }
  }
  if (a.matchings) {
    json ms = json::array();
    for (const auto& m : build_matchings(space)) {
      json pairs = json::array();
      for (std::size_t h = 0; h < m.map.size(); ++h) pairs.push_back({h, m.map[h]});
      ms.push_back({{"q", m.q}, {"plane_to_line", std::move(pairs)}});
    }
    res["matchings"] = std::move(ms);
  }

  json cfg = {{"d", a.d}, {"q", a.q}, {"max_dim", a.max_dim}, {"matchings", a.matchings}};
  Outcome out;
  out.report = envelope("geometry", std::move(cfg), std::move(res));
  return out;
}

Outcome run_distribute(const DistributeArgs& a) {
  if (a.format != "json" && a.format != "csv") throw UsageError("--format must be json or csv");
  const auto map = make_distribution(a.dist, a.p);
  const std::uint32_t n = map.size();
  const auto check = validate_weak_cartesian(map);
  const auto prof = comm_profile(map);

  json owners = json::array();
  for (std::uint32_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::uint32_t j = 0; j < n; ++j) row.push_back(map.owner(i, j));
    owners.push_back(std::move(row));
  }
  json blocks = json::array();
  json comm = json::array();
  for (std::uint32_t k = 0; k < n; ++k) {
    json list = json::array();
    for (auto [i, j] : map.blocks_of(k)) list.push_back({i, j});
    blocks.push_back(std::move(list));
    const auto& pc = prof.procs[k];
    comm.push_back({{"process", k}, {"r", pc.r}, {"c", pc.c}, {"messages", pc.messages()}});
  }
  json res = {{"n", n},
              {"weak_cartesian", check.valid},
              {"violations", check.violations},
              {"owners", std::move(owners)},
              {"blocks", std::move(blocks)},
              {"communication", std::move(comm)},
              {"max_messages", prof.max_messages},
              {"lower_bound", integer_lower_bound(n)}};

  std::ostringstream os;
  os << "row";
  for (std::uint32_t j = 0; j < n; ++j) os << ',' << j;
  os << '\n';
  for (std::uint32_t i = 0; i < n; ++i) {
    os << i;
    for (std::uint32_t j = 0; j < n; ++j) os << ',' << map.owner(i, j);
    os << '\n';
  }

  Outcome out;
  out.report = envelope("distribute", {{"p", a.p}, {"dist", a.dist}, {"format", a.format}}, std::move(res));
  out.csv = os.str();
  out.violated = !check.valid;
  return out;
}

Outcome run_pcg(const PcgArgs& a) {
  if (!(a.eps > 0.0)) throw UsageError("--eps must be positive");
  if (a.imax == 0) throw UsageError("--imax must be positive");
  const auto dist = make_distribution(a.dist, a.p);
  const auto A = load_matrix(a.matrix);
  if (!A.square()) throw UsageError("matrix must be square");
  if (A.rows() < dist.size()) throw UsageError("matrix has fewer rows than the " + std::to_string(dist.size()) + " processes");

  SpmvEngine engine(dist, tile_matrix(A, dist.size()), SpmvOptions{a.packed, {}});
  const std::vector<double> b(A.rows(), 1.0);
  const std::vector<double> x0(A.rows(), 0.0);
  PcgOptions opts;
  opts.epsilon = a.eps;
  opts.max_iterations = a.imax;
  const auto r = pcg_solve(A, b, x0, opts, engine);

  std::uint64_t worst = 0;
  for (const auto& t : r.log.procs) worst = std::max(worst, t.block_messages());
  json res = {{"rows", A.rows()},
              {"nnz", A.nnz()},
              {"processes", dist.size()},
              {"converged", r.converged},
              {"iterations", r.iterations},
              {"delta0", r.delta0},
              {"relative_residual", relative_residual(A, r.x, b)},
              {"residual_history", r.residual_history},
              {"max_messages_per_process_per_spmv", r.log.spmv_calls ? worst / r.log.spmv_calls : 0},
              {"traffic", traffic_json(r.log)}};
  json cfg = matrix_source_json(a.matrix);
  cfg["dist"] = a.dist;
  cfg["p"] = a.p;
  cfg["eps"] = a.eps;
  cfg["imax"] = a.imax;
  cfg["packed"] = a.packed;

  Outcome out;
  out.report = envelope("pcg", std::move(cfg), std::move(res));
  out.csv = traffic_csv(r.log);
  out.violated = !r.log.conserved();
  out.diverged = !r.converged;
  return out;
}

Outcome run_spmv_bench(const SpmvBenchArgs& a) {
  if (a.repeat == 0) throw UsageError("--repeat must be positive");
  const auto A = load_matrix(a.matrix);
  if (!A.square()) throw UsageError("matrix must be square");
  const std::uint32_t n = plane_order(a.p);
  if (A.rows() < n) throw UsageError("matrix has fewer rows than the " + std::to_string(n) + " processes");
  const auto tiles = tile_matrix(A, n);
  std::vector<double> x(A.rows());
  for (std::size_t t = 0; t < x.size(); ++t) x[t] = 1.0 + double(t % 7) / 8.0;
  const auto ref = A.multiply(x);

  json runs = json::array();
  std::ostringstream os;
  os << "dist,packed,max_messages,gather_volume,partial_volume,max_abs_error\n";
  bool bad = false;
  for (const char* name : {"rowwise", "projective"}) {
    const auto dist = make_distribution(name, a.p);
    for (bool packed : {false, true}) {
      SpmvEngine engine(dist, tiles, SpmvOptions{packed, {}});
      auto log = engine.empty_log();
      std::vector<double> y;
      for (std::uint32_t t = 0; t < a.repeat; ++t) y = engine.multiply(x, log);
      double err = 0.0;
      for (std::size_t t = 0; t < y.size(); ++t) err = std::max(err, std::abs(y[t] - ref[t]));
      bad = bad || !log.conserved() || err > 1e-12 * (1.0 + A.frobenius_norm());
      const auto per_call = log.max_block_messages_per_call();
      runs.push_back({{"dist", name},
                      {"packed", packed},
                      {"max_messages", per_call},
                      {"gather_volume", log.gather_volume() / a.repeat},
                      {"partial_volume", log.partial_volume() / a.repeat},
                      {"max_abs_error", err}});
      os << name << ',' << (packed ? 1 : 0) << ',' << per_call << ',' << log.gather_volume() / a.repeat << ','
         << log.partial_volume() / a.repeat << ',' << err << '\n';
    }
  }
  json cfg = matrix_source_json(a.matrix);
  cfg["p"] = a.p;
  cfg["repeat"] = a.repeat;
  Outcome out;
  out.report = envelope("spmv-bench", std::move(cfg), {{"rows", A.rows()}, {"nnz", A.nnz()}, {"processes", n}, {"runs", std::move(runs)}});
  out.csv = os.str();
  out.violated = bad;
  return out;
}

Outcome run_lu_sim(const LuSimArgs& a) {
  if (a.block == 0 || a.n == 0 || a.n % a.block != 0) throw UsageError("--n must be a positive multiple of --block");
  const std::uint32_t B = a.n / a.block;
  Schedule s;
  if (a.scheme == "pg2") {
    s = scheme2_schedule(B);
  } else if (a.scheme == "pg1") {
    s = scheme1_schedule(B);
  } else if (a.scheme == "mesh") {
    if (a.grid == 0) throw UsageError("--grid must be positive");
    s = mesh_schedule(B, a.grid);
  } else {
    throw UsageError("unknown scheme '" + a.scheme + "' (expected pg1, pg2 or mesh)");
  }
  const auto log = cycle_log(s);

  static const char* names[] = {"comp", "sub", "comm"};
  static const int orders[] = {3, 2, 2};
  json totals, times, avgs, util;
  for (int c : {0, 2, 1}) {
    totals[names[c]] = log.total[c];
    times[names[c]] = normalized_time(log.total[c], a.block, orders[c]);
    avgs[names[c]] = log.average[c];
    util[names[c]] = log.utilization[c];
  }
  json res = {{"processors", s.processors},
              {"blocks", B},
              {"grid", s.grid},
              {"total_cycles", totals},
              {"normalized_time", times},
              {"average_cycles", avgs},
              {"utilization", util},
              {"cycles", log.total_cycles()}};

  bool bad = false;
  if (a.verify) {
    const auto seed = env_seed().value_or(a.seed);
    const auto A = random_diagdom(a.n, seed);
    const auto sim = simulate(s, A);
    const auto ref = block_lu_reference(A, a.block);
    const double err = relative_difference(sim.factors, ref);
    const auto& v = sim.violations;
    res["verification"] = {{"seed", seed},
                           {"relative_error", err},
                           {"lu_residual", lu_residual(A, sim.factors)},
                           {"violations",
                            {{"bus_conflicts", v.bus_conflicts},
                             {"foreign_resource", v.foreign_resource},
                             {"send_and_receive", v.send_and_receive},
                             {"multiple_sends", v.multiple_sends},
                             {"multiple_receives", v.multiple_receives},
                             {"multiple_computes", v.multiple_computes},
                             {"writer_conflicts", v.writer_conflicts},
                             {"missing_data", v.missing_data},
                             {"incoherent_copies", v.incoherent_copies},
                             {"missing_results", v.missing_results},
                             {"total", v.total()}}}};
    bad = v.total() != 0 || !(err <= 1e-10);
  }

  std::ostringstream os;
  os << "scheme,b,comp,comm,sub,time_comp,time_comm,time_sub,avg_comp,avg_comm,avg_sub,util_comp,util_comm,util_sub\n";
  os << a.scheme << ',' << a.block;
  for (int c : {0, 2, 1}) os << ',' << log.total[c];
  for (int c : {0, 2, 1}) os << ',' << normalized_time(log.total[c], a.block, orders[c]);
  for (int c : {0, 2, 1}) os << ',' << log.average[c];
  for (int c : {0, 2, 1}) os << ',' << log.utilization[c];
  os << '\n';

  json cfg = {{"scheme", a.scheme}, {"n", a.n}, {"block", a.block}, {"verify", a.verify}};
  if (a.scheme == "mesh") cfg["grid"] = a.grid;
  if (a.verify) cfg["seed"] = a.seed;
  Outcome out;
  out.report = envelope("lu-sim", std::move(cfg), std::move(res));
  out.csv = os.str();
  out.violated = bad;
  return out;
}

}  // namespace pgkit::cli
