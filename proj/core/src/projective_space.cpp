#include "pgkit/projective_space.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pgkit/errors.hpp"

namespace pgkit {

bool Subspace::contains(PointIndex x) const { return std::binary_search(points.begin(), points.end(), x); }

std::uint64_t phi(int n, int l, std::uint64_t s) {
  if (n < 0 || l < 0 || l > n) throw std::invalid_argument("phi: need 0 <= l <= n");
  if (s < 2) throw std::invalid_argument("phi: need s >= 2");
  // Gaussian binomial [n+1, l+1]_s; every partial product is itself a
  // Gaussian binomial, so each division is exact.
  __extension__ typedef unsigned __int128 u128;
  const u128 limit = ~std::uint64_t{0};
  auto spow = [&](int e) {
    u128 r = 1;
    for (int t = 0; t < e; ++t) {
      r *= s;
      if (r > limit) throw std::overflow_error("phi: value exceeds 64 bits");
    }
    return r;
  };
  u128 acc = 1;
  const int N = n + 1;
  for (int i = 0; i <= l; ++i) {
    const u128 num = spow(N - i) - 1;
    const u128 den = spow(i + 1) - 1;
    if (acc > limit / num) throw std::overflow_error("phi: value exceeds 64 bits");
    acc = acc * num / den;
  }
  return static_cast<std::uint64_t>(acc);
}

bool incident(const Subspace& a, const Subspace& b) {
  const Subspace& lo = a.points.size() <= b.points.size() ? a : b;
  const Subspace& hi = a.points.size() <= b.points.size() ? b : a;
  return std::includes(hi.points.begin(), hi.points.end(), lo.points.begin(), lo.points.end());
}

std::size_t SubspaceHash::operator()(const std::vector<PointIndex>& v) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto x : v) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

ProjectiveSpace::ProjectiveSpace(int d, std::uint32_t s, GaloisField field)
    : d_(d), s_(s), n_((field.order() - 1) / (s - 1)), field_(std::move(field)) {
  scalars_.reserve(s_ - 1);
  for (std::uint32_t t = 0; t + 1 < s_; ++t) scalars_.push_back(field_.generator_power(std::int64_t(t) * n_));
}

ProjectiveSpace ProjectiveSpace::build(int d, std::uint32_t q, const std::set<int>& dims) {
  auto pk = prime_power(q);
  if (!pk) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
  return build(d, FieldSpec{pk->first, pk->second, {}}, dims);
}

ProjectiveSpace ProjectiveSpace::build(int d, const FieldSpec& base, const std::set<int>& dims) {
  if (d < 1) throw std::invalid_argument("projective dimension must be >= 1");
  if (!is_prime(base.p) || base.k < 1) throw std::invalid_argument("invalid base field");
  for (int l : dims)
    if (l < 0 || l > d) throw std::invalid_argument("requested subspace dimension out of range");
  const std::uint32_t s = base.order();
  const std::uint64_t total_k = std::uint64_t(base.k) * (d + 1);
  if (total_k > 20) throw ResourceError("extension field too large");
  GaloisField big = GaloisField::make(base.p, static_cast<std::uint32_t>(total_k));

  const int top = dims.empty() ? 0 : *dims.rbegin();
  std::uint64_t stored = 0;
  for (int l = 0; l <= top; ++l) {
    stored += phi(d, l, s) * phi(l, 0, s);
    if (stored > kMaxStoredPoints) throw ResourceError("subspace tables exceed the storage bound");
  }

  ProjectiveSpace space(d, s, std::move(big));
  for (int l = 0; l <= top; ++l) space.enumerate(l);
  return space;
}

bool ProjectiveSpace::has_dim(int l) const { return l >= 0 && l < static_cast<int>(tables_.size()); }

const std::vector<Subspace>& ProjectiveSpace::subspaces(int l) const {
  if (!has_dim(l)) throw std::invalid_argument("subspaces of dimension " + std::to_string(l) + " were not built");
  return tables_[l];
}

std::optional<std::size_t> ProjectiveSpace::index_of(const Subspace& sub) const {
  if (!has_dim(sub.dim)) return std::nullopt;
  auto it = ids_[sub.dim].find(sub.points);
  if (it == ids_[sub.dim].end()) return std::nullopt;
  return it->second;
}

std::size_t ProjectiveSpace::id_of(const Subspace& sub) const {
  auto id = index_of(sub);
  if (!id) throw std::invalid_argument("subspace not present in table");
  return *id;
}

std::vector<std::vector<std::size_t>> ProjectiveSpace::containing(int lo, int hi) const {
  const auto& small = subspaces(lo);
  const auto& big = subspaces(hi);
  std::vector<std::vector<std::size_t>> out(small.size());
  if (lo == 0) {
    for (std::size_t h = 0; h < big.size(); ++h)
      for (auto x : big[h].points) out[x].push_back(h);
    return out;
  }
  for (std::size_t h = 0; h < big.size(); ++h) {
    for (std::size_t l = 0; l < small.size(); ++l) {
      if (incident(small[l], big[h])) out[l].push_back(h);
    }
  }
  return out;
}

FieldElement ProjectiveSpace::representative(PointIndex i) const {
  if (i >= n_) throw std::invalid_argument("point index out of range");
  return field_.generator_power(i);
}

PointIndex ProjectiveSpace::point_of(FieldElement v) const {
  auto e = field_.log(v);
  if (!e) throw std::invalid_argument("zero vector is not a point");
  return *e % n_;
}

void ProjectiveSpace::extend(std::vector<PointIndex>& pts, int& dim, PointIndex x) const {
  const FieldElement rx = representative(x);
  std::vector<PointIndex> fresh;
  fresh.reserve(pts.size() * (s_ - 1) + 1);
  fresh.push_back(x);
  for (auto w : pts) {
    for (std::uint32_t t = 0; t + 1 < s_; ++t) {
      const FieldElement u = field_.generator_power(std::int64_t(w) + std::int64_t(t) * n_);
      fresh.push_back(point_of(field_.add(u, rx)));
    }
  }
  pts.insert(pts.end(), fresh.begin(), fresh.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  ++dim;
}

Subspace ProjectiveSpace::span(std::span<const PointIndex> in) const {
  Subspace out;
  out.dim = -1;
  for (auto x : in) {
    if (x >= n_) throw std::invalid_argument("point index out of range");
    if (out.contains(x)) continue;
    extend(out.points, out.dim, x);
  }
  return out;
}

Subspace ProjectiveSpace::line_through(PointIndex i, PointIndex j) const {
  if (i == j) throw std::invalid_argument("line_through: points coincide");
  const PointIndex pts[] = {i, j};
  return span(pts);
}

Subspace ProjectiveSpace::plane_through(PointIndex i, PointIndex j, PointIndex k) const {
  const PointIndex pts[] = {i, j, k};
  Subspace sp = span(pts);
  if (sp.dim != 2) throw std::invalid_argument("plane_through: points are collinear or coincide");
  return sp;
}

std::optional<PointIndex> ProjectiveSpace::meet_of_lines(const Subspace& l1, const Subspace& l2) const {
  if (l1.dim != 1 || l2.dim != 1) throw std::invalid_argument("meet_of_lines: arguments must be lines");
  if (l1 == l2) throw std::invalid_argument("meet_of_lines: lines coincide");
  std::vector<PointIndex> common;
  std::set_intersection(l1.points.begin(), l1.points.end(), l2.points.begin(), l2.points.end(),
                        std::back_inserter(common));
  if (common.empty()) return std::nullopt;
  return common.front();
}

void ProjectiveSpace::enumerate(int l) {
  tables_.emplace_back();
  ids_.emplace_back();
  auto& table = tables_.back();
  auto& ids = ids_.back();
  if (l == 0) {
    table.reserve(n_);
    for (PointIndex i = 0; i < n_; ++i) table.push_back(Subspace{0, {i}});
  } else {
    const auto& prev = tables_[l - 1];
    std::vector<char> seen(n_);
    for (const auto& base : prev) {
      std::fill(seen.begin(), seen.end(), 0);
      for (auto x : base.points) seen[x] = 1;
      for (PointIndex x = 0; x < n_; ++x) {
        if (seen[x]) continue;
        Subspace sub = base;
        extend(sub.points, sub.dim, x);
        for (auto y : sub.points) seen[y] = 1;
        // A line is recorded only from its smallest point; higher
        // dimensions are deduplicated through the id map.
        if (l == 1 && sub.points.front() != base.points.front()) continue;
        if (ids.count(sub.points)) continue;
        ids.emplace(sub.points, table.size());
        table.push_back(std::move(sub));
      }
    }
    std::sort(table.begin(), table.end());
    ids.clear();
  }
  for (std::size_t t = 0; t < table.size(); ++t) ids.emplace(table[t].points, t);
}

std::vector<Subspace> labeled_plane_lines(const ProjectiveSpace& plane) {
  if (plane.dimension() != 2) throw std::invalid_argument("labeled_plane_lines needs a projective plane");
  const std::uint32_t n = plane.point_count();
  const std::uint32_t q = plane.field_order();
  const Subspace base = plane.line_through((2 * q) % n, (2 * q + 1) % n);
  std::vector<Subspace> out;
  out.reserve(n);
  for (std::uint32_t k = 0; k < n; ++k) {
    Subspace line{1, {}};
    for (auto x : base.points) line.points.push_back((x + k) % n);
    std::sort(line.points.begin(), line.points.end());
    out.push_back(std::move(line));
  }
  return out;
}

}  // namespace pgkit
