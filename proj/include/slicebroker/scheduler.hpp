#pragma once

// Radio-resource assignment for shared cells.
//
// Two-layer mode: allocate_quotas splits a cell's effective capacity into
// per-slice quotas, then each slice's own round-robin scheduler distributes
// its quota over that slice's flows and nothing else. Pooled mode: slices draw
// from one pool in (priority, arrival) order.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slicebroker/domain.hpp"

namespace slicebroker {

enum class SparePolicy { NONE, PROPORTIONAL };

struct QuotaInput {
  SliceId slice_id;
  std::int64_t granted_prb = 0;
  /// NON_GBR slices may receive spare capacity under PROPORTIONAL.
  bool spare_eligible = true;
};

/// Shortfall of a slice's quota below its grant when the cell cannot honor
/// all grants (capacity reduced by an outage).
struct QuotaDeficit {
  SliceId slice_id;
  std::int64_t deficit_prb = 0;
  bool operator==(const QuotaDeficit&) const = default;
};

struct QuotaAssignment {
  std::map<SliceId, std::int64_t> per_slice_quota;
  /// Set when Σ grants exceeded the effective capacity.
  bool overcommitted = false;
  std::vector<QuotaDeficit> deficits;

  std::int64_t total() const;
  bool operator==(const QuotaAssignment&) const = default;
};

/// Hamilton (largest-remainder) apportionment of `total` units in proportion
/// to `weights`. Remainder ties go to the lexicographically smaller key.
/// Result sums exactly to `total` whenever Σ weights > 0; all-zero weights
/// yield all zeros.
std::map<SliceId, std::int64_t> largest_remainder(const std::map<SliceId, std::int64_t>& weights,
                                                  std::int64_t total);

/// Inter-slice quota allocation for one (cell, slot).
QuotaAssignment allocate_quotas(const std::vector<QuotaInput>& active_grants,
                                std::int64_t effective_capacity, SparePolicy spare_policy);

struct Flow {
  std::string flow_id;
  std::int64_t backlog_prb = 0;
};

struct IntraSliceResult {
  std::map<std::string, std::int64_t> per_flow_prb;
  std::size_t next_pointer = 0;
  std::int64_t unused_prb = 0;

  bool operator==(const IntraSliceResult&) const = default;
};

/// Round-robin inside one slice: one PRB at a time starting at `rr_pointer`,
/// skipping exhausted flows. The pointer advances to the flow after the one
/// that received the last PRB. Depends only on its arguments.
IntraSliceResult intra_slice_schedule(std::int64_t quota, const std::vector<Flow>& flows,
                                      std::size_t rr_pointer);

struct PoolDemand {
  SliceId slice_id;
  int priority = 8;
  std::uint64_t arrival_seq = 0;
  std::int64_t demand_prb = 0;
};

/// Strict (priority asc, arrival asc) draw from a shared pool.
std::map<SliceId, std::int64_t> pooled_schedule(std::vector<PoolDemand> demands,
                                                std::int64_t capacity);

template <>
struct EnumNames<SparePolicy> {
  static constexpr std::array<std::pair<SparePolicy, std::string_view>, 2> entries{{
      {SparePolicy::NONE, "NONE"},
      {SparePolicy::PROPORTIONAL, "PROPORTIONAL"},
  }};
};

}  // namespace slicebroker
