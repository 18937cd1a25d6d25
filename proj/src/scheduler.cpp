#include "slicebroker/scheduler.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace slicebroker {

std::int64_t QuotaAssignment::total() const {
  std::int64_t sum = 0;
  for (const auto& [id, q] : per_slice_quota) sum += q;
  return sum;
}

std::map<SliceId, std::int64_t> largest_remainder(const std::map<SliceId, std::int64_t>& weights,
                                                  std::int64_t total) {
  std::map<SliceId, std::int64_t> out;
  __int128 weight_sum = 0;
  for (const auto& [id, w] : weights) {
    out[id] = 0;
    weight_sum += std::max<std::int64_t>(w, 0);
  }
  if (weight_sum == 0 || total <= 0) return out;

  struct Share {
    const SliceId* id;
    __int128 remainder;
  };
  std::vector<Share> shares;
  std::int64_t assigned = 0;
  for (const auto& [id, w] : weights) {
    const __int128 scaled = static_cast<__int128>(std::max<std::int64_t>(w, 0)) * total;
    const auto whole = static_cast<std::int64_t>(scaled / weight_sum);
    out[id] = whole;
    assigned += whole;
    shares.push_back({&id, scaled % weight_sum});
  }
  // map iteration is already key-ascending, so a stable sort on remainder
  // keeps the lexicographic tie-break.
  std::stable_sort(shares.begin(), shares.end(),
                   [](const Share& a, const Share& b) { return a.remainder > b.remainder; });
  for (std::int64_t left = total - assigned, i = 0; left > 0; --left, ++i) {
    out[*shares[static_cast<std::size_t>(i)].id] += 1;
  }
  return out;
}

QuotaAssignment allocate_quotas(const std::vector<QuotaInput>& active_grants,
                                std::int64_t effective_capacity, SparePolicy spare_policy) {
  QuotaAssignment result;
  const std::int64_t capacity = std::max<std::int64_t>(effective_capacity, 0);
  std::map<SliceId, std::int64_t> grants;
  std::int64_t granted = 0;
  for (const auto& g : active_grants) {
    grants[g.slice_id] += g.granted_prb;
    granted += g.granted_prb;
  }

  if (granted > capacity) {
    result.overcommitted = true;
    result.per_slice_quota = largest_remainder(grants, capacity);
    for (const auto& [id, g] : grants) {
      const std::int64_t short_by = g - result.per_slice_quota[id];
      if (short_by > 0) result.deficits.push_back({id, short_by});
    }
    return result;
  }

  result.per_slice_quota = grants;
  if (spare_policy == SparePolicy::PROPORTIONAL) {
    std::map<SliceId, std::int64_t> eligible;
    for (const auto& g : active_grants) {
      if (g.spare_eligible) eligible[g.slice_id] += g.granted_prb;
    }
    for (const auto& [id, extra] : largest_remainder(eligible, capacity - granted)) {
      result.per_slice_quota[id] += extra;
    }
  }
  return result;
}

IntraSliceResult intra_slice_schedule(std::int64_t quota, const std::vector<Flow>& flows,
                                      std::size_t rr_pointer) {
  IntraSliceResult result;
  const std::size_t n = flows.size();
  if (n == 0) {
    result.unused_prb = std::max<std::int64_t>(quota, 0);
    result.next_pointer = 0;
    return result;
  }

  std::vector<std::int64_t> backlog(n);
  std::int64_t pending = 0;
  for (std::size_t i = 0; i < n; ++i) {
    backlog[i] = std::max<std::int64_t>(flows[i].backlog_prb, 0);
    pending += backlog[i];
  }

  std::size_t p = rr_pointer % n;
  std::int64_t left = std::max<std::int64_t>(quota, 0);
  std::vector<std::int64_t> given(n, 0);
  // Whole rounds first: every backlogged flow gets one PRB per round, which
  // is what the one-at-a-time walk does while no flow runs dry.
  while (left > 0 && pending > 0) {
    std::int64_t active = 0;
    std::int64_t min_backlog = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (backlog[i] == 0) continue;
      min_backlog = active == 0 ? backlog[i] : std::min(min_backlog, backlog[i]);
      ++active;
    }
    const std::int64_t rounds = std::min(min_backlog, left / active);
    if (rounds == 0) break;
    // The last PRB of a round goes to the backlogged flow just before p.
    std::size_t last = p;
    for (std::size_t k = 1; k <= n; ++k) {
      last = (p + n - k) % n;
      if (backlog[last] > 0) break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (backlog[i] == 0) continue;
      backlog[i] -= rounds;
      given[i] += rounds;
    }
    left -= rounds * active;
    pending -= rounds * active;
    p = (last + 1) % n;
  }
  // Remainder: one PRB at a time from the pointer.
  while (left > 0 && pending > 0) {
    while (backlog[p] == 0) p = (p + 1) % n;
    backlog[p] -= 1;
    given[p] += 1;
    --left;
    --pending;
    p = (p + 1) % n;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (given[i] > 0) result.per_flow_prb[flows[i].flow_id] += given[i];
  }
  result.next_pointer = p;
  result.unused_prb = left;
  return result;
}

std::map<SliceId, std::int64_t> pooled_schedule(std::vector<PoolDemand> demands, std::int64_t capacity) {
  std::sort(demands.begin(), demands.end(), [](const PoolDemand& a, const PoolDemand& b) {
    return std::tie(a.priority, a.arrival_seq, a.slice_id) < std::tie(b.priority, b.arrival_seq, b.slice_id);
  });
  std::map<SliceId, std::int64_t> out;
  std::int64_t pool = std::max<std::int64_t>(capacity, 0);
  for (const auto& d : demands) {
    const std::int64_t take = std::min(std::max<std::int64_t>(d.demand_prb, 0), pool);
    out[d.slice_id] += take;
    pool -= take;
  }
  return out;
}

}  // namespace slicebroker
