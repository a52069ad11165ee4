#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pgkit {

enum class Category : std::uint8_t { CompB3 = 0, CompB2 = 1, CommB2 = 2 };
inline constexpr int kCategories = 3;
const char* to_string(Category c);

enum class Op : std::uint8_t { Factor, InvL, InvU, ColUpdate, RowUpdate, Product, Update, Send };
const char* to_string(Op op);
Category category_of(Op op);

/// A: matrix block (in place, so later versions hold L or U); LInv/UInv:
/// inverses of the diagonal factors; T: product L_ji * U_ik awaiting the
/// subtraction.
enum class DataKind : std::uint8_t { A, LInv, UInv, T };

struct DataKey {
  DataKind kind = DataKind::A;
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  friend auto operator<=>(const DataKey&, const DataKey&) = default;
};

struct Versioned {
  DataKey key;
  std::uint32_t version = 0;
  friend bool operator==(const Versioned&, const Versioned&) = default;
};

enum class Phase : std::uint8_t { Diagonal, DiagonalComm, RowCol, Broadcast, Gather, Multiply, Subtract, Return };
const char* to_string(Phase p);

inline constexpr std::uint32_t kNoResource = ~std::uint32_t{0};

/// Compute events read in0/in1 and write out on `proc`. Send events move
/// `out` from `proc` to the listed receivers over `resource`.
struct Event {
  std::uint32_t proc = 0;
  Op op = Op::Send;
  Versioned out;
  Versioned in0;
  Versioned in1;
  std::uint32_t resource = kNoResource;
  std::uint32_t recv_begin = 0;
  std::uint32_t recv_count = 0;
};

struct Cycle {
  Category category = Category::CompB3;
  Phase phase = Phase::Diagonal;
  std::uint32_t iteration = 0;
  std::uint32_t first_event = 0;
  std::uint32_t event_count = 0;
};

enum class ResourceKind : std::uint8_t { None, Bus, Link };

struct Schedule {
  std::string scheme;
  std::uint32_t processors = 0;
  std::uint32_t block_count = 0;  // B
  ResourceKind resource_kind = ResourceKind::None;
  std::vector<std::vector<std::uint32_t>> resource_members;  // processors attached to each bus or link
  std::vector<std::vector<std::uint32_t>> homes;             // B*B, owners of A(j,k) between iterations
  std::vector<Cycle> cycles;
  std::vector<Event> events;
  std::vector<std::uint32_t> receivers;
  std::string grid;  // informational, e.g. "12x12"

  const std::vector<std::uint32_t>& home(std::uint32_t j, std::uint32_t k) const {
    return homes.at(std::size_t(j) * block_count + k);
  }
  std::span<const Event> events_of(const Cycle& c) const {
    return {events.data() + c.first_event, c.event_count};
  }
  std::span<const std::uint32_t> receivers_of(const Event& e) const {
    return {receivers.data() + e.recv_begin, e.recv_count};
  }
};

/// Scheme II: lines of P(4,GF(2)) as processors, planes as buses.
Schedule scheme2_schedule(std::uint32_t blocks);
/// Scheme I: same processors, 12 point-to-point links per node.
Schedule scheme1_schedule(std::uint32_t blocks);
/// q x q mesh, block-cyclic homes, nearest-neighbour links.
Schedule mesh_schedule(std::uint32_t blocks, std::uint32_t q);

/// Processors with at least one event in the given phase of an iteration.
std::uint32_t phase_participation(const Schedule& s, std::uint32_t iteration, Phase phase);

}  // namespace pgkit
