#include <gtest/gtest.h>

#include <algorithm>
#include <queue>
#include <set>

#include "pgkit/block_lu.hpp"
#include "pgkit/errors.hpp"
#include "pgkit/lu_geometry.hpp"
#include "pgkit/lu_schedule.hpp"
#include "pgkit/lu_simulator.hpp"

using namespace pgkit;

namespace {

const PgLuGeometry& geo() { return pg_lu_geometry(); }

struct Run {
  Schedule s;
  DenseMatrix a;
};

// Small blocks keep the numerics cheap; the cycle structure depends on B only.
Run small_run(const std::string& scheme, std::uint32_t B) {
  Schedule s = scheme == "pg2" ? scheme2_schedule(B) : scheme == "pg1" ? scheme1_schedule(B) : mesh_schedule(B, 12);
  return {std::move(s), random_diagdom(B * 2, B)};
}

bool points_on(std::uint32_t line, std::initializer_list<std::uint32_t> pts) {
  for (auto x : pts)
    if (!geo().line_has_point(line, x)) return false;
  return true;
}

}  // namespace

TEST(LuGeometry, DiagonalCopiesPartitionTheLines) {
  std::multiset<std::uint32_t> all;
  for (std::uint32_t x = 0; x < 31; ++x) {
    for (auto l : geo().diagonal_copies(x)) {
      EXPECT_TRUE(geo().line_has_point(l, x));
      all.insert(l);
    }
  }
  EXPECT_EQ(all.size(), 155u);
  EXPECT_EQ(std::set<std::uint32_t>(all.begin(), all.end()).size(), 155u);
}

TEST(LuGeometry, DiagonalBusesReachEveryLineThroughThePoint) {
  const auto& seed = geo().plane(geo().diagonal_bus_seed());
  EXPECT_TRUE(incident(geo().space().line_through(0, 1), seed));
  for (std::uint32_t x = 0; x < 31; ++x) {
    std::set<std::uint32_t> reached;
    for (std::uint32_t b = 0; b < 5; ++b) {
      const auto bus = geo().diagonal_buses(x)[b];
      const auto& members = geo().lines_in(bus);
      ASSERT_NE(std::find(members.begin(), members.end(), geo().diagonal_copies(x)[b]), members.end());
      for (auto l : members)
        if (geo().line_has_point(l, x)) reached.insert(l);
    }
    const auto& through = geo().lines_through(x);
    EXPECT_EQ(reached, std::set<std::uint32_t>(through.begin(), through.end())) << x;
  }
}

TEST(LuGeometry, MapsPlaceWorkOnIncidentLines) {
  for (std::uint32_t i = 0; i < 31; ++i)
    for (std::uint32_t j = 0; j < 31; ++j) {
      const auto home = geo().memory_map(i, j);
      ASSERT_EQ(home.size(), i == j ? 5u : 1u);
      for (auto l : home) ASSERT_TRUE(points_on(l, {i, j}));
    }
  for (std::uint32_t i = 0; i < 31; i += 3)
    for (std::uint32_t j = i + 1; j < 40; j += 2)
      for (std::uint32_t k = i + 1; k < 40; k += 5) {
        EXPECT_EQ(geo().compute_map_c2(i, j, k), geo().memory_map(j, k));
        const auto c1 = geo().compute_map_c1(i, j, k);
        const auto pi = i % 31, pj = j % 31, pk = k % 31;
        if (pj != pk && !geo().collinear(pi, pj, pk)) {
          ASSERT_EQ(c1.size(), 1u);
          ASSERT_TRUE(incident(geo().line(c1[0]), geo().plane(geo().plane_id(pi, pj, pk))));
        }
      }
  // row and column updates sit on the line through the pivot point
  EXPECT_EQ(geo().compute_map_c2(3, 3, 9), std::vector<std::uint32_t>{geo().line_id(3, 9)});
  EXPECT_EQ(geo().compute_map_c2(3, 34, 3), geo().lines_through(3));
}

TEST(LuGeometry, LinkGraphIsSymmetricAndConnected) {
  std::size_t edges = 0;
  for (std::uint32_t l = 0; l < 155; ++l) {
    const auto& nb = geo().neighbors(l);
    edges += nb.size();
    EXPECT_LE(nb.size(), 12u);
    for (auto m : nb) {
      const auto& back = geo().neighbors(m);
      ASSERT_NE(std::find(back.begin(), back.end(), l), back.end());
    }
  }
  EXPECT_EQ(edges % 2, 0u);
  std::vector<char> seen(155, 0);
  std::queue<std::uint32_t> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    auto l = q.front();
    q.pop();
    for (auto m : geo().neighbors(l))
      if (!seen[m]) seen[m] = 1, q.push(m);
  }
  EXPECT_EQ(std::count(seen.begin(), seen.end(), 1), 155);
}

TEST(LuGeometry, Errors) {
  EXPECT_THROW(geo().line_id(4, 35), std::invalid_argument);
  EXPECT_THROW(geo().plane_id(0, 1, geo().line(geo().line_id(0, 1)).points[2]), std::invalid_argument);
}

TEST(LuSchedule, Scheme2ShapeAndCycleTotals) {
  const auto s = scheme2_schedule(31);
  EXPECT_EQ(s.processors, 155u);
  EXPECT_EQ(s.resource_kind, ResourceKind::Bus);
  ASSERT_EQ(s.resource_members.size(), 155u);
  for (const auto& m : s.resource_members) EXPECT_EQ(m.size(), 7u);
  const auto log = cycle_log(s);
  EXPECT_EQ(log.total[int(Category::CompB3)], 393u);
  EXPECT_EQ(log.total[int(Category::CommB2)], 846u);
  EXPECT_EQ(log.total[int(Category::CompB2)], 188u);
  EXPECT_EQ(log.total_cycles(), s.cycles.size());
}

TEST(LuSchedule, CycleLogAgreesWithEventRecount) {
  for (const auto& s : {scheme2_schedule(31), scheme1_schedule(31), mesh_schedule(24, 12)}) {
    const auto log = cycle_log(s);
    std::vector<std::array<std::uint64_t, 3>> active(s.processors, {0, 0, 0});
    for (const auto& c : s.cycles) {
      std::set<std::uint32_t> procs;
      for (const auto& e : s.events_of(c)) procs.insert(e.proc);
      for (auto p : procs) ++active[p][int(c.category)];
    }
    for (int cat = 0; cat < 3; ++cat) {
      double sum = 0;
      for (std::uint32_t p = 0; p < s.processors; ++p) {
        ASSERT_EQ(log.active[p][cat], active[p][cat]);
        sum += double(active[p][cat]);
      }
      EXPECT_DOUBLE_EQ(log.average[cat], sum / s.processors);
      EXPECT_DOUBLE_EQ(log.utilization[cat], sum / s.processors / double(log.total[cat]));
    }
  }
}

TEST(LuSchedule, Scheme1UsesPointToPointLinks) {
  const auto s = scheme1_schedule(31);
  EXPECT_EQ(s.resource_kind, ResourceKind::Link);
  for (const auto& m : s.resource_members) {
    ASSERT_EQ(m.size(), 2u);
    const auto& nb = geo().neighbors(m[0]);
    ASSERT_NE(std::find(nb.begin(), nb.end(), m[1]), nb.end());
  }
  for (const auto& e : s.events)
    if (e.op == Op::Send) ASSERT_EQ(e.recv_count, 1u);
  const auto pg2 = cycle_log(scheme2_schedule(31));
  const auto pg1 = cycle_log(s);
  EXPECT_EQ(pg1.total[int(Category::CompB2)] > 0, true);
  EXPECT_GT(pg1.total[int(Category::CommB2)], pg2.total[int(Category::CommB2)]);
}

TEST(LuSchedule, MeshHomesAreBlockCyclic) {
  const auto s = mesh_schedule(30, 12);
  EXPECT_EQ(s.processors, 144u);
  EXPECT_EQ(s.grid, "12x12");
  for (std::uint32_t j = 0; j < 18; ++j)
    for (std::uint32_t k = 0; k < 18; ++k) {
      ASSERT_EQ(s.home(j, k).size(), 1u);
      ASSERT_EQ(s.home(j, k), s.home(j + 12, k));
      ASSERT_EQ(s.home(j, k), s.home(j, k + 12));
    }
  EXPECT_THROW(mesh_schedule(10, 0), std::invalid_argument);
}

TEST(LuSchedule, FullTrailingPhasesUseEveryProcessor) {
  for (std::uint32_t B : {31u, 62u}) {
    const auto s = scheme2_schedule(B);
    for (std::uint32_t i = 0; i + 1 < B; ++i) {
      const auto multiply = phase_participation(s, i, Phase::Multiply);
      const auto subtract = phase_participation(s, i, Phase::Subtract);
      if (B - i - 1 >= 30) {
        EXPECT_EQ(multiply, 155u) << "B=" << B << " i=" << i;
        EXPECT_EQ(subtract, 155u);
      } else {
        EXPECT_LT(multiply, 155u);
      }
    }
  }
}

TEST(LuSimulator, AllSchemesFactorExactly) {
  for (const char* scheme : {"pg2", "pg1", "mesh"}) {
    for (std::uint32_t B : {5u, 31u, 40u}) {
      auto run = small_run(scheme, B);
      const auto r = simulate(run.s, run.a, SimOptions{true});
      EXPECT_EQ(r.violations.total(), 0u) << scheme << " B=" << B;
      EXPECT_EQ(relative_difference(r.factors, block_lu_reference(run.a, 2)), 0.0) << scheme << " B=" << B;
      EXPECT_EQ(r.cycles, run.s.cycles.size());
    }
  }
}

TEST(LuSimulator, DetectsBusConflicts) {
  auto run = small_run("pg2", 31);
  // Put two concurrent sends on one bus.
  bool done = false;
  for (const auto& c : run.s.cycles) {
    std::vector<Event*> sends;
    for (std::uint32_t t = 0; t < c.event_count; ++t) {
      auto& e = run.s.events[c.first_event + t];
      if (e.op == Op::Send) sends.push_back(&e);
    }
    if (sends.size() >= 2) {
      sends[1]->resource = sends[0]->resource;
      done = true;
      break;
    }
  }
  ASSERT_TRUE(done);
  const auto r = simulate(run.s, run.a);
  EXPECT_GT(r.violations.bus_conflicts, 0u);
  EXPECT_THROW(simulate(run.s, run.a, SimOptions{true}), ScheduleError);
}

TEST(LuSimulator, DetectsMissingOperands) {
  auto run = small_run("pg2", 31);
  auto it = std::find_if(run.s.events.begin(), run.s.events.end(), [](const Event& e) { return e.op == Op::Update; });
  ASSERT_NE(it, run.s.events.end());
  it->in1.version += 3;
  const auto r = simulate(run.s, run.a);
  EXPECT_GT(r.violations.missing_data, 0u);
}

TEST(LuSimulator, DetectsSendAndReceiveInOneCycle) {
  auto run = small_run("pg1", 31);
  for (const auto& c : run.s.cycles) {
    std::vector<Event*> sends;
    for (std::uint32_t t = 0; t < c.event_count; ++t) {
      auto& e = run.s.events[c.first_event + t];
      if (e.op == Op::Send) sends.push_back(&e);
    }
    if (sends.size() >= 2) {
      const auto victim = run.s.receivers[sends[0]->recv_begin];
      sends[1]->proc = victim;
      break;
    }
  }
  const auto r = simulate(run.s, run.a);
  EXPECT_GT(r.violations.send_and_receive + r.violations.multiple_sends, 0u);
}

TEST(LuSimulator, DetectsForeignReceivers) {
  auto run = small_run("pg2", 31);
  auto it = std::find_if(run.s.events.begin(), run.s.events.end(), [](const Event& e) { return e.op == Op::Send; });
  ASSERT_NE(it, run.s.events.end());
  const auto& members = run.s.resource_members[it->resource];
  std::uint32_t outsider = 0;
  while (std::find(members.begin(), members.end(), outsider) != members.end()) ++outsider;
  run.s.receivers[it->recv_begin] = outsider;
  EXPECT_GT(simulate(run.s, run.a).violations.foreign_resource, 0u);
}

TEST(LuSimulator, RejectsMismatchedMatrix) {
  auto run = small_run("pg2", 5);
  EXPECT_THROW(simulate(run.s, random_diagdom(11, 1)), std::invalid_argument);
}

TEST(NormalizedTime, Scaling) {
  EXPECT_DOUBLE_EQ(normalized_time(393, 24, 3), 393.0);
  EXPECT_DOUBLE_EQ(normalized_time(846, 24, 2), 35.25);
  EXPECT_DOUBLE_EQ(normalized_time(8, 12, 3), 1.0);
  EXPECT_THROW(normalized_time(1, 24, 4), std::invalid_argument);
}

TEST(LuSchedule, BlockCountLimits) {
  EXPECT_THROW(scheme2_schedule(0), std::invalid_argument);
  EXPECT_THROW(scheme1_schedule(5000), std::invalid_argument);
}
