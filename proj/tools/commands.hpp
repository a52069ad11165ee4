#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace pgkit::cli {

inline constexpr int kSchemaVersion = 1;

// Process exit codes; documented in the README.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kIoError = 3,
  kParseError = 4,
  kNumerical = 5,
  kInvariant = 6,
  kResource = 7,
  kUnsupported = 8,
};

/// A usage problem detected after flag parsing (bad combination, bad value).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeometryArgs {
  int d = 2;
  std::uint32_t q = 2;
  int max_dim = 2;
  bool matchings = false;
  std::string edges;  // incidence edge list path, "<line-id> <plane-id>" per line
};

struct DistributeArgs {
  std::uint32_t p = 3;
  std::string dist = "projective";
  std::string format = "json";
};

struct MatrixSource {
  std::string path;
  std::string gen;
};

struct PcgArgs {
  MatrixSource matrix;
  std::string dist = "projective";
  std::uint32_t p = 3;
  double eps = 1e-8;
  std::uint32_t imax = 1000;
  bool packed = false;
};

struct SpmvBenchArgs {
  MatrixSource matrix;
  std::uint32_t p = 3;
  std::uint32_t repeat = 1;
};

struct LuSimArgs {
  std::string scheme = "pg2";
  std::uint32_t n = 744;
  std::uint32_t block = 24;
  std::uint32_t grid = 12;
  bool verify = true;
  std::uint64_t seed = 1;
};

/// A command's output: the JSON report, an optional CSV table and whether
/// an invariant check failed.
struct Outcome {
  nlohmann::ordered_json report;
  std::string csv;
  bool violated = false;
  bool diverged = false;
};

/// PG_PARALLEL_SEED when set to an unsigned integer.
std::optional<std::uint64_t> env_seed();

Outcome run_geometry(const GeometryArgs& a);
Outcome run_distribute(const DistributeArgs& a);
Outcome run_pcg(const PcgArgs& a);
Outcome run_spmv_bench(const SpmvBenchArgs& a);
Outcome run_lu_sim(const LuSimArgs& a);

/// Wraps a result with the schema version, the command name, the echoed
/// configuration and a build stamp.
nlohmann::ordered_json envelope(const std::string& command, nlohmann::ordered_json config,
                                nlohmann::ordered_json result);

void write_text(const std::string& path, const std::string& text);

}  // namespace pgkit::cli
