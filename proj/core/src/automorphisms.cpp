#include "pgkit/automorphisms.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pgkit/errors.hpp"

namespace pgkit {

std::uint32_t frobenius_order(const ProjectiveSpace& space) { return space.field().degree(); }

std::vector<Automorphism> all_automorphisms(const ProjectiveSpace& space) {
  std::vector<Automorphism> out;
  const std::uint32_t fo = frobenius_order(space);
  for (std::uint32_t b = 0; b < fo; ++b)
    for (std::uint32_t a = 0; a < space.point_count(); ++a) out.push_back({b, a});
  return out;
}

PointIndex apply(const ProjectiveSpace& space, Automorphism g, PointIndex x) {
  const std::uint64_t n = space.point_count();
  const std::uint64_t p = space.field().characteristic();
  std::uint64_t v = x % n;
  for (std::uint32_t t = 0; t < g.frob_power; ++t) v = (v * p) % n;
  return static_cast<PointIndex>((v + g.shift_power) % n);
}

Subspace apply(const ProjectiveSpace& space, Automorphism g, const Subspace& sub) {
  Subspace out{sub.dim, {}};
  out.points.reserve(sub.points.size());
  for (auto x : sub.points) out.points.push_back(apply(space, g, x));
  std::sort(out.points.begin(), out.points.end());
  return out;
}

std::set<Subspace> orbit(const ProjectiveSpace& space, const Subspace& seed, bool frobenius, bool shift) {
  std::set<Subspace> seen{seed};
  std::vector<Subspace> frontier{seed};
  std::vector<Automorphism> gens;
  if (frobenius) gens.push_back({1, 0});
  if (shift) gens.push_back({0, 1});
  while (!frontier.empty()) {
    Subspace cur = std::move(frontier.back());
    frontier.pop_back();
    for (auto g : gens) {
      Subspace img = apply(space, g, cur);
      if (seen.insert(img).second) frontier.push_back(std::move(img));
    }
  }
  return seen;
}

MatchingPattern build_matching(const ProjectiveSpace& space, int q, const Subspace& seed_plane,
                               const Subspace& seed_line) {
  if (seed_plane.dim != 2 || seed_line.dim != 1) throw std::invalid_argument("build_matching: need a plane and a line");
  if (!incident(seed_line, seed_plane)) throw ConfigError("build_matching: seed line is not contained in seed plane");
  const auto& planes = space.subspaces(2);
  const auto& lines = space.subspaces(1);
  constexpr std::size_t kUnset = ~std::size_t{0};
  MatchingPattern m{q, 2, 1, std::vector<std::size_t>(planes.size(), kUnset)};
  for (auto g : all_automorphisms(space)) {
    const std::size_t pi = space.id_of(apply(space, g, seed_plane));
    const std::size_t li = space.id_of(apply(space, g, seed_line));
    if (m.map[pi] != kUnset && m.map[pi] != li)
      throw ConfigError("build_matching: seeds give an inconsistent map (S" + std::to_string(q) + ")");
    m.map[pi] = li;
  }
  std::vector<char> hit(lines.size(), 0);
  for (auto li : m.map) {
    if (li == kUnset) throw ConfigError("build_matching: seed orbit does not cover every plane");
    if (hit[li]) throw ConfigError("build_matching: result is not injective");
    hit[li] = 1;
  }
  if (planes.size() != lines.size()) throw ConfigError("build_matching: plane and line counts differ");
  return m;
}

MatchingPattern invert(const MatchingPattern& m) {
  MatchingPattern out{m.q, m.to_dim, m.from_dim, std::vector<std::size_t>(m.map.size())};
  std::vector<char> hit(m.map.size(), 0);
  for (std::size_t i = 0; i < m.map.size(); ++i) {
    const std::size_t j = m.map[i];
    if (j >= m.map.size() || hit[j]) throw std::invalid_argument("invert: pattern is not a bijection");
    hit[j] = 1;
    out.map[j] = i;
  }
  return out;
}

std::vector<Subspace> ordered_plane_lines(const ProjectiveSpace& space, const Subspace& plane,
                                          const Subspace& first) {
  std::vector<Subspace> rest;
  for (const auto& l : space.subspaces(1))
    if (l != first && incident(l, plane)) rest.push_back(l);
  std::sort(rest.begin(), rest.end());
  std::vector<Subspace> out{first};
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::vector<MatchingPattern> build_matchings(const ProjectiveSpace& space) {
  if (space.dimension() < 2) throw std::invalid_argument("build_matchings: need dimension >= 2");
  const Subspace seed_plane = space.plane_through(0, 1, 2);
  const Subspace seed_line = space.line_through(0, 1);
  std::vector<MatchingPattern> out;
  int q = 1;
  for (const auto& l : ordered_plane_lines(space, seed_plane, seed_line)) {
    out.push_back(build_matching(space, q++, seed_plane, l));
  }
  return out;
}

}  // namespace pgkit
