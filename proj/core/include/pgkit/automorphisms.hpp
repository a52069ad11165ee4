#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "pgkit/projective_space.hpp"

namespace pgkit {

/// i -> p^frob_power * i + shift_power (mod point count): Frobenius first,
/// then the shift.
struct Automorphism {
  std::uint32_t frob_power = 0;
  std::uint32_t shift_power = 0;
  friend bool operator==(Automorphism, Automorphism) = default;
};

/// Number of distinct Frobenius powers acting on the space, i.e. the degree
/// of the extension field over Z_p.
std::uint32_t frobenius_order(const ProjectiveSpace& space);

/// Every composite shift^a o frob^b, ordered by (b, a).
std::vector<Automorphism> all_automorphisms(const ProjectiveSpace& space);

PointIndex apply(const ProjectiveSpace& space, Automorphism g, PointIndex x);
Subspace apply(const ProjectiveSpace& space, Automorphism g, const Subspace& sub);

/// Closure of `seed` under the selected generators.
std::set<Subspace> orbit(const ProjectiveSpace& space, const Subspace& seed, bool frobenius = true,
                         bool shift = true);

/// Table lookup between two subspace tables of a ProjectiveSpace. A forward
/// pattern maps plane ids to line ids; its inverse maps line ids back.
struct MatchingPattern {
  int q = 1;
  int from_dim = 2;
  int to_dim = 1;
  std::vector<std::size_t> map;

  std::size_t operator()(std::size_t id) const { return map.at(id); }
  friend bool operator==(const MatchingPattern&, const MatchingPattern&) = default;
};

/// plane g(seed_plane) -> line g(seed_line) for every automorphism g.
/// Throws ConfigError if the seed line is not in the seed plane or if the
/// result is not a bijection onto all lines.
MatchingPattern build_matching(const ProjectiveSpace& space, int q, const Subspace& seed_plane,
                               const Subspace& seed_line);

MatchingPattern invert(const MatchingPattern& m);

/// The lines of `plane`, with `first` moved to the front and the rest in
/// canonical order.
std::vector<Subspace> ordered_plane_lines(const ProjectiveSpace& space, const Subspace& plane,
                                          const Subspace& first);

/// S_1..S_7 seeded with plane span(0,1,2) and line span(0,1); S_2..S_7 use
/// the remaining lines of the seed plane in canonical order. Needs lines
/// and planes built.
std::vector<MatchingPattern> build_matchings(const ProjectiveSpace& space);

}  // namespace pgkit
