#include "pgkit/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pgkit/galois.hpp"
#include "pgkit/projective_space.hpp"

namespace pgkit {

const char* to_string(DistributionKind k) {
  switch (k) {
    case DistributionKind::RowWise: return "rowwise";
    case DistributionKind::Projective: return "projective";
    case DistributionKind::Custom: return "custom";
  }
  return "custom";
}

DistributionMap::DistributionMap(std::uint32_t n, std::vector<std::uint32_t> owners, DistributionKind kind)
    : n_(n), owners_(std::move(owners)), kind_(kind) {
  if (n == 0) throw std::invalid_argument("distribution needs n >= 1");
  if (owners_.size() != std::size_t(n) * n) throw std::invalid_argument("ownership table must have n*n entries");
}

std::vector<Block> DistributionMap::blocks_of(std::uint32_t proc) const {
  std::vector<Block> out;
  for (std::uint32_t i = 0; i < n_; ++i)
    for (std::uint32_t j = 0; j < n_; ++j)
      if (owner(i, j) == proc) out.emplace_back(i, j);
  return out;
}

DistributionMap rowwise_distribution(std::uint32_t n) {
  std::vector<std::uint32_t> owners(std::size_t(n) * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) owners[std::size_t(i) * n + j] = i;
  return DistributionMap(n, std::move(owners), DistributionKind::RowWise);
}

DistributionMap projective_distribution(std::uint32_t q) {
  if (!prime_power(q)) throw std::invalid_argument("projective distribution needs a prime power, got " + std::to_string(q));
  const auto plane = ProjectiveSpace::build(2, q, {0});
  const auto lines = labeled_plane_lines(plane);
  const std::uint32_t n = plane.point_count();
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> owners(std::size_t(n) * n, kUnset);
  for (std::uint32_t i = 0; i < n; ++i) owners[std::size_t(i) * n + i] = i;
  for (std::uint32_t k = 0; k < n; ++k) {
    for (auto a : lines[k].points) {
      for (auto b : lines[k].points) {
        if (a == b) continue;
        auto& slot = owners[std::size_t(a) * n + b];
        if (slot != kUnset) throw std::logic_error("projective distribution: block assigned twice");
        slot = k;
      }
    }
  }
  return DistributionMap(n, std::move(owners), DistributionKind::Projective);
}

WeakCartesianReport validate_weak_cartesian(const DistributionMap& map) {
  WeakCartesianReport rep;
  const std::uint32_t n = map.size();
  auto fail = [&](std::string msg) {
    rep.valid = false;
    rep.violations.push_back(std::move(msg));
  };
  std::vector<std::uint32_t> count(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      const auto o = map.owner(i, j);
      if (o >= n) {
        fail("block (" + std::to_string(i) + "," + std::to_string(j) + ") has no valid owner");
        continue;
      }
      ++count[o];
    }
    if (map.owner(i, i) != i) fail("diagonal block (" + std::to_string(i) + "," + std::to_string(i) + ") not on process " + std::to_string(i));
  }
  for (std::uint32_t p = 0; p < n; ++p)
    if (count[p] != n)
      fail("process " + std::to_string(p) + " owns " + std::to_string(count[p]) + " blocks, expected " + std::to_string(n));
  return rep;
}

CommProfile comm_profile(const DistributionMap& map) {
  const std::uint32_t n = map.size();
  CommProfile prof;
  prof.procs.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      auto& pc = prof.procs.at(map.owner(i, j));
      pc.partial_outputs.insert(i);
      pc.input_blocks.insert(j);
    }
  }
  prof.min_r_plus_c = ~std::uint32_t{0};
  for (std::uint32_t p = 0; p < n; ++p) {
    auto& pc = prof.procs[p];
    pc.r = static_cast<std::uint32_t>(pc.partial_outputs.size());
    pc.c = static_cast<std::uint32_t>(pc.input_blocks.size());
    pc.remote_inputs = pc.c - static_cast<std::uint32_t>(pc.input_blocks.count(p));
    pc.remote_outputs = pc.r - static_cast<std::uint32_t>(pc.partial_outputs.count(p));
    prof.total_messages += pc.messages();
    prof.max_messages = std::max(prof.max_messages, pc.messages());
    prof.max_r_plus_c = std::max(prof.max_r_plus_c, pc.r + pc.c);
    prof.min_r_plus_c = std::min(prof.min_r_plus_c, pc.r + pc.c);
  }
  return prof;
}

std::pair<std::uint32_t, std::uint32_t> minimal_submatrix(const std::vector<Block>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("minimal_submatrix: empty block set");
  std::set<std::uint32_t> rows, cols;
  for (auto [i, j] : blocks) {
    rows.insert(i);
    cols.insert(j);
  }
  return {static_cast<std::uint32_t>(rows.size()), static_cast<std::uint32_t>(cols.size())};
}

std::uint32_t integer_lower_bound(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("integer_lower_bound: n must be positive");
  std::uint32_t best = n + 1;
  for (std::uint32_t r = 1; r <= n; ++r) best = std::min(best, r + (n + r - 1) / r);
  return best;
}

DistributionMap random_weak_cartesian(std::uint32_t n, std::mt19937_64& rng, RandomMapStyle style) {
  std::vector<Block> order;
  order.reserve(std::size_t(n) * n);
  if (style == RandomMapStyle::Shuffle) {
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        if (i != j) order.emplace_back(i, j);
    std::shuffle(order.begin(), order.end(), rng);
  } else {
    const auto t = static_cast<std::uint32_t>(std::ceil(std::sqrt(double(n))));
    std::vector<std::uint32_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0u);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    for (std::uint32_t ti = 0; ti < n; ti += t)
      for (std::uint32_t tj = 0; tj < n; tj += t)
        for (std::uint32_t i = ti; i < std::min(n, ti + t); ++i)
          for (std::uint32_t j = tj; j < std::min(n, tj + t); ++j)
            if (i != j) order.emplace_back(sigma[i], sigma[j]);
  }
  std::vector<std::uint32_t> procs(n);
  std::iota(procs.begin(), procs.end(), 0u);
  std::shuffle(procs.begin(), procs.end(), rng);

  std::vector<std::uint32_t> owners(std::size_t(n) * n);
  for (std::uint32_t i = 0; i < n; ++i) owners[std::size_t(i) * n + i] = i;
  for (std::size_t t = 0; t < order.size(); ++t) {
    owners[std::size_t(order[t].first) * n + order[t].second] = procs[t / (n - 1)];
  }
  return DistributionMap(n, std::move(owners), DistributionKind::Custom);
}

LowerBoundReport lower_bound_check(std::uint32_t n, std::uint32_t samples, std::uint64_t seed) {
  std::uint32_t q = 0;
  for (std::uint32_t c = 2; c * c + c + 1 <= n; ++c)
    if (c * c + c + 1 == n) q = c;
  if (q == 0 || !prime_power(q)) throw std::invalid_argument("lower_bound_check: n must be q^2+q+1 for a prime power q");

  LowerBoundReport rep;
  rep.n = n;
  rep.q = q;
  rep.bound = integer_lower_bound(n);
  rep.samples = samples;

  const auto proj = comm_profile(projective_distribution(q));
  rep.projective_r_plus_c = proj.max_r_plus_c;
  rep.projective_messages = proj.max_messages;
  rep.projective_within_2 = proj.max_r_plus_c <= rep.bound + 2 && proj.min_r_plus_c >= rep.bound;

  std::mt19937_64 rng(seed);
  rep.min_sample_r_plus_c = ~std::uint32_t{0};
  for (std::uint32_t s = 0; s < samples; ++s) {
    const auto style = (s % 2 == 0) ? RandomMapStyle::Shuffle : RandomMapStyle::Compact;
    const auto prof = comm_profile(random_weak_cartesian(n, rng, style));
    for (const auto& pc : prof.procs) {
      if (std::uint64_t(pc.r) * pc.c < n) ++rep.rc_violations;
      if (pc.r + pc.c < rep.bound) ++rep.bound_violations;
      rep.min_sample_r_plus_c = std::min(rep.min_sample_r_plus_c, pc.r + pc.c);
    }
  }
  return rep;
}

}  // namespace pgkit
