#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pgkit/dense.hpp"
#include "pgkit/lu_schedule.hpp"

namespace pgkit {

/// Per-category cycle accounting. A processor is active in a cycle when it
/// computes, or when it transmits.
struct CycleLog {
  std::uint32_t processors = 0;
  std::array<std::uint64_t, kCategories> total{};  // cycles per category
  std::vector<std::array<std::uint64_t, kCategories>> active;  // per processor
  std::array<double, kCategories> average{};
  std::array<double, kCategories> utilization{};
  std::array<std::uint64_t, kCategories> max_active{};

  std::uint64_t total_cycles() const { return total[0] + total[1] + total[2]; }
};

CycleLog cycle_log(const Schedule& s);

/// cycles * b^order / 24^3
double normalized_time(std::uint64_t cycles, std::uint32_t b, int order);

struct Violations {
  std::uint64_t bus_conflicts = 0;        // two senders on one bus or link
  std::uint64_t foreign_resource = 0;     // sender or receiver not attached to the resource
  std::uint64_t send_and_receive = 0;     // processor sends and receives in one cycle
  std::uint64_t multiple_sends = 0;
  std::uint64_t multiple_receives = 0;
  std::uint64_t multiple_computes = 0;
  std::uint64_t writer_conflicts = 0;     // two writes of one key into one memory
  std::uint64_t missing_data = 0;         // operand absent or at the wrong version
  std::uint64_t incoherent_copies = 0;    // same key and version, different bits
  std::uint64_t missing_results = 0;      // home lacks the final block

  std::uint64_t total() const {
    return bus_conflicts + foreign_resource + send_and_receive + multiple_sends + multiple_receives +
           multiple_computes + writer_conflicts + missing_data + incoherent_copies + missing_results;
  }
};

struct SimOptions {
  bool strict = false;  // throw ScheduleError on the first violation
};

struct SimResult {
  DenseMatrix factors;  // packed L\U gathered from the home processors
  CycleLog log;
  Violations violations;
  std::uint64_t cycles = 0;
};

/// Executes the schedule on real data. Each processor has a private memory;
/// all writes of a cycle land at its end. Data that is not homed on a
/// processor is dropped at the end of every iteration.
SimResult simulate(const Schedule& s, const DenseMatrix& a, SimOptions opts = {});

}  // namespace pgkit
