#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pgkit/distribution.hpp"
#include "pgkit/projective_space.hpp"

using namespace pgkit;

namespace {

// Ownership table for p = 3, row i lists owner(i, 0..12).
const std::uint32_t kOwnersP3[13][13] = {
    {0, 7, 6, 7, 11, 11, 4, 11, 6, 7, 4, 4, 6},   {7, 1, 8, 7, 8, 12, 12, 5, 12, 7, 8, 5, 5},
    {6, 8, 2, 9, 8, 9, 0, 0, 6, 0, 8, 9, 6},      {7, 7, 9, 3, 10, 9, 10, 1, 1, 7, 1, 9, 10},
    {11, 8, 8, 10, 4, 11, 10, 11, 2, 2, 8, 2, 10}, {11, 12, 9, 9, 11, 5, 12, 11, 12, 3, 3, 9, 3},
    {4, 12, 0, 10, 10, 12, 6, 0, 12, 0, 4, 4, 10}, {11, 5, 0, 1, 11, 11, 0, 7, 1, 0, 1, 5, 5},
    {6, 12, 6, 1, 2, 12, 12, 1, 8, 2, 1, 2, 6},    {7, 7, 0, 7, 2, 3, 0, 0, 2, 9, 3, 2, 3},
    {4, 8, 8, 1, 8, 3, 4, 1, 1, 3, 10, 4, 3},      {4, 5, 9, 9, 2, 9, 4, 5, 2, 2, 4, 11, 5},
    {6, 5, 6, 10, 10, 3, 10, 5, 6, 3, 3, 5, 12}};

std::pair<std::uint32_t, std::uint32_t> rc_of(const std::vector<Block>& blocks) {
  std::set<std::uint32_t> r, c;
  for (auto [i, j] : blocks) {
    r.insert(i);
    c.insert(j);
  }
  return {std::uint32_t(r.size()), std::uint32_t(c.size())};
}

std::uint32_t brute_bound(std::uint32_t n) {
  std::uint32_t best = ~0u;
  for (std::uint32_t r = 1; r <= n; ++r)
    for (std::uint32_t c = 1; c <= n; ++c)
      if (r * c >= n) best = std::min(best, r + c);
  return best;
}

}  // namespace

TEST(Distribution, ProjectiveP3OwnershipTable) {
  const auto m = projective_distribution(3);
  ASSERT_EQ(m.size(), 13u);
  for (std::uint32_t i = 0; i < 13; ++i)
    for (std::uint32_t j = 0; j < 13; ++j) EXPECT_EQ(m.owner(i, j), kOwnersP3[i][j]) << i << "," << j;
}

TEST(Distribution, ProjectiveP3ProcessZeroBlocks) {
  const auto m = projective_distribution(3);
  const std::set<Block> want = {{0, 0}, {6, 7}, {6, 9}, {6, 2}, {7, 6}, {7, 9}, {7, 2},
                                {9, 6}, {9, 7}, {9, 2}, {2, 6}, {2, 7}, {2, 9}};
  const auto got = m.blocks_of(0);
  EXPECT_EQ(std::set<Block>(got.begin(), got.end()), want);
  EXPECT_EQ(got.size(), 13u);
}

TEST(Distribution, WeakCartesianForAllSmallPlanes) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u}) {
    const auto m = projective_distribution(q);
    const auto rep = validate_weak_cartesian(m);
    EXPECT_TRUE(rep.valid) << "q=" << q;
    EXPECT_EQ(m.kind(), DistributionKind::Projective);
  }
  EXPECT_TRUE(validate_weak_cartesian(rowwise_distribution(9)).valid);
}

TEST(Distribution, ValidatorReportsViolations) {
  auto owners = projective_distribution(2).owners();
  std::swap(owners[0], owners[1]);  // (0,0) leaves process 0
  const auto rep = validate_weak_cartesian(DistributionMap(7, owners, DistributionKind::Custom));
  EXPECT_FALSE(rep.valid);
  EXPECT_FALSE(rep.violations.empty());
  owners = rowwise_distribution(5).owners();
  owners[1] = 2;  // process 0 loses a block, process 2 gains one
  EXPECT_FALSE(validate_weak_cartesian(DistributionMap(5, owners, DistributionKind::Custom)).valid);
  owners[1] = 9;
  EXPECT_FALSE(validate_weak_cartesian(DistributionMap(5, owners, DistributionKind::Custom)).valid);
}

TEST(Distribution, ProjectiveCommunicationIsTwoPPlusOne) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const auto m = projective_distribution(q);
    const auto prof = comm_profile(m);
    const auto lines = labeled_plane_lines(ProjectiveSpace::build(2, q, {0, 1}));
    bool any_self = false;
    for (std::uint32_t k = 0; k < m.size(); ++k) {
      const auto [r, c] = rc_of(m.blocks_of(k));
      EXPECT_EQ(prof.procs[k].r, r);
      EXPECT_EQ(prof.procs[k].c, c);
      // a line through its own point keeps one input and one output local
      const bool self = lines[k].contains(k);
      any_self = any_self || self;
      EXPECT_EQ(prof.procs[k].messages(), self ? 2 * q : 2 * (q + 1)) << "q=" << q << " process " << k;
    }
    EXPECT_EQ(any_self, q == 2);
    if (!any_self) EXPECT_EQ(prof.max_messages, integer_lower_bound(m.size()));
    EXPECT_LE(prof.max_messages, integer_lower_bound(m.size()));
  }
}

TEST(Distribution, RowwiseCommunication) {
  const auto prof = comm_profile(rowwise_distribution(13));
  for (const auto& pc : prof.procs) {
    EXPECT_EQ(pc.r, 1u);
    EXPECT_EQ(pc.c, 13u);
    EXPECT_EQ(pc.messages(), 12u);
  }
}

TEST(Distribution, IntegerLowerBoundMatchesBruteForce) {
  for (std::uint32_t n = 1; n <= 200; ++n) ASSERT_EQ(integer_lower_bound(n), brute_bound(n)) << n;
  EXPECT_THROW(integer_lower_bound(0), std::invalid_argument);
}

TEST(Distribution, RandomMapsRespectTheBound) {
  std::mt19937_64 rng(42);
  for (std::uint32_t n : {7u, 13u, 21u, 31u}) {
    const auto bound = brute_bound(n);
    for (int t = 0; t < 50; ++t) {
      const auto style = t % 2 ? RandomMapStyle::Compact : RandomMapStyle::Shuffle;
      const auto m = random_weak_cartesian(n, rng, style);
      ASSERT_TRUE(validate_weak_cartesian(m).valid);
      for (std::uint32_t k = 0; k < n; ++k) {
        const auto [r, c] = rc_of(m.blocks_of(k));
        ASSERT_GE(r * c, n);
        ASSERT_GE(r + c, bound);
      }
    }
  }
}

TEST(Distribution, LowerBoundCheck) {
  for (std::uint32_t n : {7u, 13u, 21u, 31u}) {
    const auto rep = lower_bound_check(n, 200, 7);
    EXPECT_TRUE(rep.ok()) << n;
    EXPECT_EQ(rep.samples, 200u);
    EXPECT_LE(rep.projective_r_plus_c, rep.bound + 2);
    EXPECT_GE(rep.min_sample_r_plus_c, rep.bound);
  }
  EXPECT_THROW(lower_bound_check(12, 10, 1), std::invalid_argument);
  EXPECT_THROW(lower_bound_check(43, 10, 1), std::invalid_argument);  // q = 6
}

TEST(Distribution, MinimalSubmatrix) {
  EXPECT_EQ(minimal_submatrix({{0, 1}, {0, 3}, {2, 1}}), (std::pair<std::uint32_t, std::uint32_t>{2, 2}));
  EXPECT_THROW(minimal_submatrix({}), std::invalid_argument);
}

TEST(Distribution, Errors) {
  EXPECT_THROW(projective_distribution(6), std::invalid_argument);
  EXPECT_THROW(DistributionMap(3, {0, 1}, DistributionKind::Custom), std::invalid_argument);
}
