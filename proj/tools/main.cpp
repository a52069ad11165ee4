#include <algorithm>
#include <fstream>
#include <iostream>
#include <new>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "pgkit/errors.hpp"
#include "pgkit/matrix_io.hpp"

namespace {

using namespace pgkit::cli;
using json = nlohmann::json;

struct Outputs {
  std::string report;
  std::string csv;
};

void add_outputs(CLI::App* cmd, Outputs& o) {
  cmd->add_option("--report", o.report, "write the JSON report here instead of stdout");
  cmd->add_option("--csv", o.csv, "write the result table as CSV");
}

void add_matrix(CLI::App* cmd, MatrixSource& m) {
  auto* file = cmd->add_option("--matrix", m.path, "Matrix Market file");
  auto* gen = cmd->add_option("--gen", m.gen, "generator: poisson2d:<side> | diagdom:<n>:<density>:<seed>");
  file->excludes(gen);
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
}

std::string scalar_text(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw UsageError("config key '" + key + "' must be a string, number or boolean");
}

// Values from the config file fill options the command line left unset.
void apply_config(CLI::App* cmd, const json& cfg) {
  if (!cfg.is_object()) throw UsageError("config must be a JSON object");
  const json& section = cfg.contains(cmd->get_name()) ? cfg.at(cmd->get_name()) : cfg;
  if (!section.is_object()) throw UsageError("config section '" + cmd->get_name() + "' must be an object");
  for (const auto& [key, value] : section.items()) {
    if (value.is_object()) continue;  // another subcommand's section
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    CLI::Option* opt = cmd->get_option_no_throw("--" + flag);
    if (!opt) throw UsageError("config key '" + key + "' is not an option of " + cmd->get_name());
    if (opt->count() > 0) continue;
    std::string text = scalar_text(value, key);
    // flags resolve negated names such as no_verify
    if (opt->get_expected_min() == 0) text = opt->get_flag_value(flag, text);
    opt->add_result(text);
    opt->run_callback();
  }
}

int emit(const Outcome& out, const Outputs& o, bool csv_to_stdout) {
  const std::string text = out.report.dump(2) + "\n";
  if (!o.report.empty()) write_text(o.report, text);
  if (!o.csv.empty() && !out.csv.empty()) write_text(o.csv, out.csv);
  if (csv_to_stdout) {
    std::cout << out.csv;
  } else if (o.report.empty()) {
    std::cout << text;
  }
  if (out.violated) {
    std::cerr << "pgkit: invariant check failed (see report)\n";
    return kInvariant;
  }
  if (out.diverged) {
    std::cerr << "pgkit: solver did not converge\n";
    return kNumerical;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite projective geometry toolkit: distributions, PCG and block LU schedules"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with option values; command-line flags win");

  Outputs outs;

  GeometryArgs geo;
  auto* g = app.add_subcommand("geometry", "enumerate points, lines and planes of P(d, GF(q))");
  g->add_option("--d", geo.d, "projective dimension");
  g->add_option("--q", geo.q, "field order (prime power)");
  g->add_option("--max-dim", geo.max_dim, "largest subspace dimension to tabulate");
  g->add_flag("--matchings", geo.matchings, "include the matchings S_1..S_7 (plane id -> line id)");
  g->add_option("--edges", geo.edges, "write line-plane incidences, one '<line-id> <plane-id>' per line");
  add_outputs(g, outs);

  DistributeArgs dis;
  auto* d = app.add_subcommand("distribute", "block ownership table for n = p^2 + p + 1 processes");
  d->add_option("--p", dis.p, "prime power p");
  d->add_option("--dist", dis.dist, "projective | rowwise");
  d->add_option("--format", dis.format, "stdout format: json | csv");
  add_outputs(d, outs);

  PcgArgs pcg;
  auto* c = app.add_subcommand("pcg", "Jacobi-preconditioned CG over a simulated distributed SpMV");
  add_matrix(c, pcg.matrix);
  c->add_option("--dist", pcg.dist, "projective | rowwise");
  c->add_option("--p", pcg.p, "prime power p; the matrix is split into p^2 + p + 1 block rows");
  c->add_option("--eps", pcg.eps, "relative tolerance on the preconditioned residual");
  c->add_option("--imax", pcg.imax, "iteration limit");
  c->add_flag("--packed", pcg.packed, "drop all-zero rows and columns of tiles before shipping");
  add_outputs(c, outs);

  SpmvBenchArgs sb;
  auto* b = app.add_subcommand("spmv-bench", "message counts and volumes for both distributions, packed and not");
  add_matrix(b, sb.matrix);
  b->add_option("--p", sb.p, "prime power p");
  b->add_option("--repeat", sb.repeat, "multiplications per configuration");
  add_outputs(b, outs);

  LuSimArgs lu;
  auto* l = app.add_subcommand("lu-sim", "cycle-level block LU schedule simulation");
  l->add_option("--scheme", lu.scheme, "pg1 | pg2 | mesh");
  l->add_option("--n", lu.n, "matrix order");
  l->add_option("--block", lu.block, "block size b");
  l->add_option("--grid", lu.grid, "mesh side (mesh scheme only)");
  l->add_flag("--verify,!--no-verify", lu.verify, "run the schedule on a random matrix and compare with sequential LU");
  l->add_option("--seed", lu.seed, "seed of the verification matrix (PG_PARALLEL_SEED overrides)");
  add_outputs(l, outs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (!config_path.empty()) {
      const json cfg = load_config(config_path);
      apply_config(app.get_subcommands().front(), cfg);
    }
    if (g->parsed()) return emit(run_geometry(geo), outs, false);
    if (d->parsed()) {
      auto out = run_distribute(dis);
      return emit(out, outs, dis.format == "csv");
    }
    if (c->parsed()) return emit(run_pcg(pcg), outs, false);
    if (b->parsed()) return emit(run_spmv_bench(sb), outs, false);
    if (l->parsed()) return emit(run_lu_sim(lu), outs, false);
    return kUsage;
  } catch (const CLI::ParseError& e) {
    std::cerr << "pgkit: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "pgkit: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "pgkit: " << e.what() << '\n';
    return kIoError;
  } catch (const pgkit::ParseError& e) {
    std::cerr << "pgkit: " << e.what() << '\n';
    return kParseError;
  } catch (const pgkit::NumericalError& e) {
    std::cerr << "pgkit: " << e.what() << '\n';
    return kNumerical;
  } catch (const pgkit::ScheduleError& e) {
    std::cerr << "pgkit: " << e.what() << '\n';
    return kInvariant;
  } catch (const pgkit::ResourceError& e) {
    std::cerr << "pgkit: " << e.what() << '\n';
    return kResource;
  } catch (const std::overflow_error& e) {
    std::cerr << "pgkit: " << e.what() << '\n';
    return kResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "pgkit: out of memory\n";
    return kResource;
  } catch (const pgkit::ConfigError& e) {
    std::cerr << "pgkit: " << e.what() << '\n';
    return kUnsupported;
  } catch (const std::invalid_argument& e) {
    std::cerr << "pgkit: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "pgkit: internal error: " << e.what() << '\n';
    return kInternal;
  }
}
