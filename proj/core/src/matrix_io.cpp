#include "pgkit/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pgkit {

ParseError::ParseError(const std::string& msg, std::size_t line)
    : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::uint64_t parse_u64(const std::string& tok, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty() || tok[0] == '-') throw std::invalid_argument("bad " + what + " '" + tok + "'");
  return v;
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty input", 1);
  ++lineno;
  std::istringstream hs(line);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") throw ParseError("missing %%MatrixMarket banner", lineno);
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") throw ParseError("unsupported object '" + object + "'", lineno);
  if (format != "coordinate") throw ParseError("unsupported format '" + format + "' (only coordinate)", lineno);
  if (field == "pattern" || field == "complex")
    throw ParseError("unsupported field '" + field + "' (only real or integer)", lineno);
  if (field != "real" && field != "integer" && field != "double")
    throw ParseError("unknown field '" + field + "'", lineno);
  if (symmetry != "general" && symmetry != "symmetric")
    throw ParseError("unsupported symmetry '" + symmetry + "'", lineno);
  const bool sym = symmetry == "symmetric";

  std::uint64_t rows = 0, cols = 0, nnz = 0;
  bool have_size = false;
  std::vector<Entry> entries;
  std::uint64_t seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '%' || blank(line)) continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    try {
      if (!have_size) {
        if (tok.size() != 3) throw std::invalid_argument("size line needs 3 integers");
        rows = parse_u64(tok[0], "row count");
        cols = parse_u64(tok[1], "column count");
        nnz = parse_u64(tok[2], "entry count");
        if (rows > 0xffffffffu || cols > 0xffffffffu) throw std::invalid_argument("matrix dimensions too large");
        have_size = true;
        entries.reserve(sym ? 2 * nnz : nnz);
        continue;
      }
      if (tok.size() != 3) throw std::invalid_argument("entry needs row, column and value");
      const auto i = parse_u64(tok[0], "row index");
      const auto j = parse_u64(tok[1], "column index");
      if (i < 1 || i > rows || j < 1 || j > cols) throw std::invalid_argument("index out of range");
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(tok[2], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok[2].size()) throw std::invalid_argument("bad value '" + tok[2] + "'");
      if (++seen > nnz) throw std::invalid_argument("more entries than declared");
      const auto r = static_cast<std::uint32_t>(i - 1), c = static_cast<std::uint32_t>(j - 1);
      if (sym && c > r) throw std::invalid_argument("symmetric file has an entry above the diagonal");
      entries.push_back({r, c, v});
      if (sym && r != c) entries.push_back({c, r, v});
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (!have_size) throw ParseError("missing size line", lineno);
  if (seen != nnz) throw ParseError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(seen), lineno);
  return SparseMatrix::from_entries(static_cast<std::uint32_t>(rows), static_cast<std::uint32_t>(cols), std::move(entries));
}

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::ios_base::failure("cannot open " + path);
  return read_matrix_market(f);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& a, bool symmetric) {
  std::vector<Entry> es;
  for (const auto& e : a.entries())
    if (!symmetric || e.col <= e.row) es.push_back(e);
  out << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general") << "\n";
  out << a.rows() << " " << a.cols() << " " << es.size() << "\n";
  out << std::setprecision(17);
  for (const auto& e : es) out << e.row + 1 << " " << e.col + 1 << " " << e.value << "\n";
}

SparseMatrix poisson2d(std::uint32_t side) {
  if (side == 0) throw std::invalid_argument("poisson2d: side must be positive");
  const std::uint32_t n = side * side;
  std::vector<Entry> e;
  e.reserve(std::size_t(n) * 5);
  for (std::uint32_t y = 0; y < side; ++y) {
    for (std::uint32_t x = 0; x < side; ++x) {
      const std::uint32_t i = y * side + x;
      e.push_back({i, i, 4.0});
      if (x > 0) e.push_back({i, i - 1, -1.0});
      if (x + 1 < side) e.push_back({i, i + 1, -1.0});
      if (y > 0) e.push_back({i, i - side, -1.0});
      if (y + 1 < side) e.push_back({i, i + side, -1.0});
    }
  }
  return SparseMatrix::from_entries(n, n, std::move(e));
}

SparseMatrix diagdom(std::uint32_t n, double density, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("diagdom: n must be positive");
  if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("diagdom: density must be in [0,1]");
  std::mt19937_64 rng(seed);
  // Fixed bit-level mapping so output does not depend on the library's
  // distribution implementations.
  auto unit = [&] { return double(rng() >> 11) * 0x1.0p-53; };
  std::vector<Entry> e;
  std::vector<double> rowsum(n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (unit() >= density) continue;
      const double v = 2.0 * unit() - 1.0;
      if (v == 0.0) continue;
      e.push_back({i, j, v});
      e.push_back({j, i, v});
      rowsum[i] += std::abs(v);
      rowsum[j] += std::abs(v);
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) e.push_back({i, i, rowsum[i] + 1.0});
  return SparseMatrix::from_entries(n, n, std::move(e));
}

SparseMatrix generate_matrix(const std::string& spec, const std::string& seed_override) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  auto bad = [&](const std::string& why) { return std::invalid_argument("generator '" + spec + "': " + why); };
  if (parts.empty()) throw bad("empty spec");
  try {
    if (parts[0] == "poisson2d") {
      if (parts.size() != 2) throw bad("expected poisson2d:<side>");
      const auto side = parse_u64(parts[1], "side");
      if (side == 0 || side > 4096) throw bad("side out of range");
      return poisson2d(static_cast<std::uint32_t>(side));
    }
    if (parts[0] == "diagdom") {
      if (parts.size() != 4) throw bad("expected diagdom:<n>:<density>:<seed>");
      const auto n = parse_u64(parts[1], "size");
      if (n == 0 || n > 100000) throw bad("size out of range");
      std::size_t used = 0;
      const double density = std::stod(parts[2], &used);
      if (used != parts[2].size()) throw bad("bad density");
      const auto seed = parse_u64(seed_override.empty() ? parts[3] : seed_override, "seed");
      return diagdom(static_cast<std::uint32_t>(n), density, seed);
    }
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    if (msg.rfind("generator", 0) == 0) throw;
    throw bad(msg);
  }
  throw bad("unknown generator '" + parts[0] + "'");
}

}  // namespace pgkit
