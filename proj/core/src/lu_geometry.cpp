#include "pgkit/lu_geometry.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "pgkit/errors.hpp"

namespace pgkit {

namespace {
constexpr std::uint32_t kNone = ~std::uint32_t{0};
}

PgLuGeometry::PgLuGeometry() : space_(ProjectiveSpace::build(4, 2, {0, 1, 2})) {
  matchings_ = build_matchings(space_);
  if (matchings_.size() != 7) throw ConfigError("expected 7 matchings in P(4,GF(2))");
  for (const auto& m : matchings_) inverses_.push_back(invert(m));

  const auto& lines = space_.subspaces(1);
  const auto& planes = space_.subspaces(2);
  if (lines.size() != kLines || planes.size() != kPlanes) throw ConfigError("unexpected P(4,GF(2)) table sizes");

  pair_line_.assign(kPoints * kPoints, kNone);
  through_.assign(kPoints, {});
  for (std::uint32_t l = 0; l < kLines; ++l) {
    for (auto a : lines[l].points) {
      through_[a].push_back(l);
      for (auto b : lines[l].points)
        if (a != b) pair_line_[a * kPoints + b] = l;
    }
  }
  plane_lines_.assign(kPlanes, {});
  line_planes_.assign(kLines, {});
  for (std::uint32_t p = 0; p < kPlanes; ++p) {
    for (std::uint32_t l = 0; l < kLines; ++l) {
      if (incident(lines[l], planes[p])) {
        plane_lines_[p].push_back(l);
        line_planes_[l].push_back(p);
      }
    }
  }

  // Diagonal copies and the plane that carries the inverses: the unique
  // plane through the seed line whose Frobenius images cover all 15 lines
  // through point 0.
  const Subspace seed_line = space_.line_through(0, 1);
  const std::uint32_t seed_id = static_cast<std::uint32_t>(space_.id_of(seed_line));
  std::vector<std::uint32_t> candidates;
  for (auto p : line_planes_[seed_id]) {
    std::set<std::uint32_t> covered;
    for (std::uint32_t b = 0; b < kCopies; ++b) {
      const auto img = space_.id_of(apply(space_, Automorphism{b, 0}, planes[p]));
      for (auto l : plane_lines_[img])
        if (lines[l].contains(0)) covered.insert(l);
    }
    if (covered.size() == through_[0].size()) candidates.push_back(p);
  }
  if (candidates.size() != 1) throw ConfigError("diagonal bus plane is not unique");
  bus_seed_ = candidates.front();

  copies_.resize(kPoints);
  buses_.resize(kPoints);
  for (std::uint32_t x = 0; x < kPoints; ++x) {
    for (std::uint32_t b = 0; b < kCopies; ++b) {
      const Automorphism g{b, x};
      copies_[x][b] = static_cast<std::uint32_t>(space_.id_of(apply(space_, g, seed_line)));
      buses_[x][b] = static_cast<std::uint32_t>(space_.id_of(apply(space_, g, planes[bus_seed_])));
    }
  }

  links_.assign(kLines, {});
  for (std::uint32_t l = 0; l < kLines; ++l) {
    std::set<std::uint32_t> nb;
    for (int q = 2; q <= 7; ++q) {
      nb.insert(static_cast<std::uint32_t>(S(q)(S_inv(1)(l))));
      nb.insert(static_cast<std::uint32_t>(S(1)(S_inv(q)(l))));
    }
    nb.erase(l);
    links_[l].assign(nb.begin(), nb.end());
  }
}

std::uint32_t PgLuGeometry::line_id(std::uint32_t a, std::uint32_t b) const {
  a %= kPoints;
  b %= kPoints;
  if (a == b) throw std::invalid_argument("line_id: points coincide");
  return pair_line_[a * kPoints + b];
}

bool PgLuGeometry::line_has_point(std::uint32_t l, std::uint32_t x) const { return line(l).contains(x % kPoints); }

bool PgLuGeometry::collinear(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
  a %= kPoints;
  b %= kPoints;
  c %= kPoints;
  if (a == b || a == c || b == c) return true;
  return line_has_point(line_id(a, b), c);
}

std::uint32_t PgLuGeometry::plane_of(std::uint32_t l, std::uint32_t x) const {
  x %= kPoints;
  for (auto p : line_planes_.at(l))
    if (plane(p).contains(x) && !line(l).contains(x)) return p;
  throw std::invalid_argument("plane_of: point lies on the line");
}

std::uint32_t PgLuGeometry::plane_id(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
  if (collinear(a, b, c)) throw std::invalid_argument("plane_id: points are collinear");
  return plane_of(line_id(a, b), c);
}

std::vector<std::uint32_t> PgLuGeometry::memory_map(std::uint32_t i, std::uint32_t j) const {
  const auto a = i % kPoints, b = j % kPoints;
  if (a == b) {
    const auto& c = diagonal_copies(a);
    return {c.begin(), c.end()};
  }
  return {line_id(a, b)};
}

std::vector<std::uint32_t> PgLuGeometry::compute_map_c2(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
  const auto pi = i % kPoints, pj = j % kPoints, pk = k % kPoints;
  const bool rowcol = (j == i) != (k == i);
  if (rowcol) {
    const auto other = (j == i) ? pk : pj;
    if (other == pi) return lines_through(pi);
    return {line_id(pi, other)};
  }
  return memory_map(pj, pk);
}

std::vector<std::uint32_t> PgLuGeometry::compute_map_c1(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
  const auto pi = i % kPoints, pj = j % kPoints, pk = k % kPoints;
  const bool rowcol = (j == i) != (k == i);
  if (rowcol || (j == i && k == i)) return compute_map_c2(i, j, k);
  if (pj == pk) return memory_map(pj, pk);
  if (pi == pj || pi == pk || collinear(pi, pj, pk)) return {line_id(pj, pk)};
  return {static_cast<std::uint32_t>(S(1)(plane_id(pi, pj, pk)))};
}

const PgLuGeometry& pg_lu_geometry() {
  static const PgLuGeometry geo;
  return geo;
}

}  // namespace pgkit
