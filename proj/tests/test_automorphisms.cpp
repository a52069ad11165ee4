#include <gtest/gtest.h>

#include <set>

#include "pgkit/automorphisms.hpp"
#include "pgkit/errors.hpp"

using namespace pgkit;

namespace {

const ProjectiveSpace& p4() {
  static const ProjectiveSpace sp = ProjectiveSpace::build(4, 2, {0, 1, 2});
  return sp;
}

}  // namespace

TEST(Automorphisms, GroupSizeAndPointAction) {
  const auto& sp = p4();
  const auto all = all_automorphisms(sp);
  ASSERT_EQ(all.size(), 155u);
  EXPECT_EQ(frobenius_order(sp), 5u);
  EXPECT_EQ(apply(sp, Automorphism{1, 0}, 20), 9u);  // 40 mod 31
  EXPECT_EQ(apply(sp, Automorphism{0, 3}, 30), 2u);
  EXPECT_EQ(apply(sp, Automorphism{2, 1}, 8), 2u);  // 4 * 8 + 1 = 33
  // Distinct automorphisms act differently on the points.
  std::set<std::vector<PointIndex>> actions;
  for (auto g : all) {
    std::vector<PointIndex> img;
    for (PointIndex x = 0; x < 31; ++x) img.push_back(apply(sp, g, x));
    actions.insert(img);
  }
  EXPECT_EQ(actions.size(), 155u);
}

TEST(Automorphisms, PreserveEverySubspaceTable) {
  const auto& sp = p4();
  for (auto g : all_automorphisms(sp))
    for (int l = 1; l <= 2; ++l)
      for (const auto& s : sp.subspaces(l)) ASSERT_TRUE(sp.index_of(apply(sp, g, s)).has_value());
}

TEST(Automorphisms, FrobeniusMatchesFieldFrobenius) {
  const auto& sp = p4();
  for (PointIndex x = 0; x < 31; ++x)
    EXPECT_EQ(sp.point_of(sp.field().frobenius(sp.representative(x))), apply(sp, Automorphism{1, 0}, x));
}

TEST(Automorphisms, OrbitsOfLinesAndPlanes) {
  const auto& sp = p4();
  EXPECT_EQ(orbit(sp, sp.line_through(0, 1)).size(), 155u);
  EXPECT_EQ(orbit(sp, sp.line_through(0, 1), false, true).size(), 31u);
  const PointIndex pts[] = {0, 1, 2};
  EXPECT_EQ(orbit(sp, sp.span(pts)).size(), 155u);
}

TEST(Matchings, SevenBijectionsCoveringEachPlanesLines) {
  const auto& sp = p4();
  const auto ms = build_matchings(sp);
  ASSERT_EQ(ms.size(), 7u);
  const auto& lines = sp.subspaces(1);
  const auto& planes = sp.subspaces(2);
  for (const auto& m : ms) {
    std::set<std::size_t> image(m.map.begin(), m.map.end());
    EXPECT_EQ(image.size(), 155u) << "S" << m.q;
  }
  for (std::size_t h = 0; h < planes.size(); ++h) {
    std::set<std::size_t> matched;
    for (const auto& m : ms) {
      ASSERT_TRUE(incident(lines[m(h)], planes[h]));
      matched.insert(m(h));
    }
    std::set<std::size_t> own;
    for (std::size_t l = 0; l < lines.size(); ++l)
      if (incident(lines[l], planes[h])) own.insert(l);
    ASSERT_EQ(matched, own) << "plane " << h;
  }
}

TEST(Matchings, EquivariantUnderAllAutomorphisms) {
  const auto& sp = p4();
  const auto ms = build_matchings(sp);
  for (const auto& m : ms)
    for (auto g : all_automorphisms(sp))
      for (std::size_t h = 0; h < 155; ++h) {
        const auto gp = sp.id_of(apply(sp, g, sp.subspaces(2)[h]));
        const auto gl = sp.id_of(apply(sp, g, sp.subspaces(1)[m(h)]));
        ASSERT_EQ(m(gp), gl);
      }
}

TEST(Matchings, SeedsAndInverse) {
  const auto& sp = p4();
  const auto ms = build_matchings(sp);
  const PointIndex pts[] = {0, 1, 2};
  const auto seed_plane = sp.id_of(sp.span(pts));
  EXPECT_EQ(ms[0](seed_plane), sp.id_of(sp.line_through(0, 1)));
  for (const auto& m : ms) {
    const auto inv = invert(m);
    EXPECT_EQ(inv.from_dim, 1);
    EXPECT_EQ(inv.to_dim, 2);
    for (std::size_t h = 0; h < 155; ++h) ASSERT_EQ(inv(m(h)), h);
  }
}

TEST(Matchings, OrderedPlaneLinesPutsSeedFirst) {
  const auto& sp = p4();
  const PointIndex pts[] = {0, 1, 2};
  const auto plane = sp.span(pts);
  const auto first = sp.line_through(1, 2);
  const auto ls = ordered_plane_lines(sp, plane, first);
  ASSERT_EQ(ls.size(), 7u);
  EXPECT_EQ(ls.front(), first);
  EXPECT_TRUE(std::is_sorted(ls.begin() + 1, ls.end()));
}

TEST(Matchings, RejectsBadSeeds) {
  const auto& sp = p4();
  const PointIndex pts[] = {0, 1, 2};
  const auto plane = sp.span(pts);
  EXPECT_THROW(build_matching(sp, 1, plane, sp.line_through(0, 3)), ConfigError);
  EXPECT_THROW(build_matching(sp, 1, sp.line_through(0, 1), sp.line_through(0, 1)), std::invalid_argument);
}

TEST(Matchings, NeedLinesAndPlanes) {
  const auto sp = ProjectiveSpace::build(4, 2, {0, 1});
  EXPECT_THROW(build_matchings(sp), std::invalid_argument);
}
