#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "pgkit/galois.hpp"

namespace pgkit {

using PointIndex = std::uint32_t;

/// Projective subspace stored as its sorted point list.
struct Subspace {
  int dim = 0;
  std::vector<PointIndex> points;

  bool contains(PointIndex x) const;
  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend auto operator<=>(const Subspace& a, const Subspace& b) { return a.points <=> b.points; }
};

/// Number of l-dimensional subspaces of an n-dimensional projective space
/// over GF(s). Throws std::invalid_argument on bad ranges and
/// std::overflow_error if the value does not fit in 64 bits.
std::uint64_t phi(int n, int l, std::uint64_t s);

/// true iff the point set of the smaller subspace is contained in the larger.
bool incident(const Subspace& a, const Subspace& b);

struct SubspaceHash {
  std::size_t operator()(const std::vector<PointIndex>& v) const noexcept;
};

/// P(d, GF(s)) realised inside GF(s^(d+1)). Point i is the class of alpha^i,
/// i in [0, P(d)), so multiplication by alpha is i -> i+1 mod P(d).
class ProjectiveSpace {
 public:
  // Upper bound on the number of stored point labels across all tables.
  static constexpr std::uint64_t kMaxStoredPoints = 60'000'000;

  /// `base` names GF(s) = GF(p^k); only p and k are used, the extension
  /// field GF(p^(k(d+1))) is built with its default polynomial.
  static ProjectiveSpace build(int d, const FieldSpec& base, const std::set<int>& dims);
  /// Convenience: base field of prime-power order q.
  static ProjectiveSpace build(int d, std::uint32_t q, const std::set<int>& dims);

  int dimension() const { return d_; }
  std::uint32_t field_order() const { return s_; }
  std::uint32_t point_count() const { return n_; }
  const GaloisField& field() const { return field_; }

  bool has_dim(int l) const;
  const std::vector<Subspace>& subspaces(int l) const;
  std::optional<std::size_t> index_of(const Subspace& sub) const;
  std::size_t id_of(const Subspace& sub) const;  // throws if absent

  /// ids of the hi-dimensional subspaces containing each lo-dimensional one.
  std::vector<std::vector<std::size_t>> containing(int lo, int hi) const;

  FieldElement representative(PointIndex i) const;
  PointIndex point_of(FieldElement v) const;  // v != 0

  Subspace span(std::span<const PointIndex> pts) const;
  Subspace line_through(PointIndex i, PointIndex j) const;
  Subspace plane_through(PointIndex i, PointIndex j, PointIndex k) const;
  std::optional<PointIndex> meet_of_lines(const Subspace& l1, const Subspace& l2) const;

 private:
  ProjectiveSpace(int d, std::uint32_t s, GaloisField field);

  // New points of span(S, x): point(u + x) for every vector u of S.
  void extend(std::vector<PointIndex>& pts, int& dim, PointIndex x) const;
  void enumerate(int l);

  int d_;
  std::uint32_t s_;
  std::uint32_t n_;
  GaloisField field_;
  std::vector<FieldElement> scalars_;  // nonzero elements of GF(s) inside the extension
  std::vector<std::vector<Subspace>> tables_;
  std::vector<std::unordered_map<std::vector<PointIndex>, std::size_t, SubspaceHash>> ids_;
};

/// Lines of P(2, GF(q)) labelled cyclically: line k = {x + k mod n : x in D}
/// with D the line through points 2q mod n and 2q+1 mod n.
std::vector<Subspace> labeled_plane_lines(const ProjectiveSpace& plane);

}  // namespace pgkit
