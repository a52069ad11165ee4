#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pgkit/automorphisms.hpp"
#include "pgkit/projective_space.hpp"

namespace pgkit {

/// P(4, GF(2)) prepared for the block LU schemes: processors are the 155
/// lines, buses are the 155 planes, block indices act through their residue
/// mod 31.
class PgLuGeometry {
 public:
  static constexpr std::uint32_t kPoints = 31;
  static constexpr std::uint32_t kLines = 155;
  static constexpr std::uint32_t kPlanes = 155;
  static constexpr std::uint32_t kCopies = 5;

  PgLuGeometry();

  const ProjectiveSpace& space() const { return space_; }
  const Subspace& line(std::uint32_t id) const { return space_.subspaces(1)[id]; }
  const Subspace& plane(std::uint32_t id) const { return space_.subspaces(2)[id]; }

  /// Matching S_q and its inverse, q in [1, 7].
  const MatchingPattern& S(int q) const { return matchings_.at(q - 1); }
  const MatchingPattern& S_inv(int q) const { return inverses_.at(q - 1); }

  std::uint32_t line_id(std::uint32_t a, std::uint32_t b) const;  // points mod 31, a != b
  std::uint32_t plane_id(std::uint32_t a, std::uint32_t b, std::uint32_t c) const;  // non-collinear
  bool collinear(std::uint32_t a, std::uint32_t b, std::uint32_t c) const;
  /// Plane spanned by a line and a point off it.
  std::uint32_t plane_of(std::uint32_t line, std::uint32_t point) const;

  /// shift^x(frob^b(seed line)), b = 0..4; each of the 155 lines appears
  /// exactly once over all x.
  const std::array<std::uint32_t, kCopies>& diagonal_copies(std::uint32_t x) const { return copies_.at(x % kPoints); }
  /// Bus used by copy b of point x to hand the diagonal inverses to the
  /// other lines through x.
  const std::array<std::uint32_t, kCopies>& diagonal_buses(std::uint32_t x) const { return buses_.at(x % kPoints); }
  /// Seed plane of the diagonal buses.
  std::uint32_t diagonal_bus_seed() const { return bus_seed_; }

  const std::vector<std::uint32_t>& lines_through(std::uint32_t x) const { return through_.at(x % kPoints); }
  const std::vector<std::uint32_t>& lines_in(std::uint32_t plane) const { return plane_lines_.at(plane); }
  bool line_has_point(std::uint32_t line, std::uint32_t x) const;

  /// Memory map: home lines of block (i, j).
  std::vector<std::uint32_t> memory_map(std::uint32_t i, std::uint32_t j) const;
  /// Scheme II compute map for triplet (i, j, k).
  std::vector<std::uint32_t> compute_map_c2(std::uint32_t i, std::uint32_t j, std::uint32_t k) const;
  /// Scheme I compute map: trailing work goes to S_1(plane(i, j, k)) when
  /// the three points span a plane; otherwise it stays on the home lines.
  std::vector<std::uint32_t> compute_map_c1(std::uint32_t i, std::uint32_t j, std::uint32_t k) const;

  /// Scheme I links: S_q(S_1^-1(l)) and S_1(S_q^-1(l)) for q = 2..7.
  const std::vector<std::uint32_t>& neighbors(std::uint32_t line) const { return links_.at(line); }

 private:
  ProjectiveSpace space_;
  std::vector<MatchingPattern> matchings_;
  std::vector<MatchingPattern> inverses_;
  std::vector<std::uint32_t> pair_line_;  // 31 x 31
  std::vector<std::vector<std::uint32_t>> through_;
  std::vector<std::vector<std::uint32_t>> plane_lines_;
  std::vector<std::vector<std::uint32_t>> line_planes_;
  std::vector<std::array<std::uint32_t, kCopies>> copies_;
  std::vector<std::array<std::uint32_t, kCopies>> buses_;
  std::uint32_t bus_seed_ = 0;
  std::vector<std::vector<std::uint32_t>> links_;
};

/// Shared instance (construction enumerates the space once).
const PgLuGeometry& pg_lu_geometry();

}  // namespace pgkit
