#include "slicebroker/ran_sim.hpp"

#include <algorithm>
#include <cmath>

#include "slicebroker/error.hpp"

namespace slicebroker {
namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Uniform [0, 1) from the top 53 bits; avoids the implementation-defined
// std::uniform_real_distribution so runs match across standard libraries.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

double BackgroundProfile::mean_at(Slot slot_of_day) const {
  double mean = 0.0;
  for (const auto& seg : segments) {
    if (seg.from_slot_of_day > slot_of_day) break;
    mean = seg.mean_prb;
  }
  return mean;
}

BackgroundGenerator::BackgroundGenerator(std::uint64_t seed, Slot slots_per_day,
                                         std::map<CellId, BackgroundProfile> profiles,
                                         const std::map<CellId, std::int64_t>& capacities)
    : slots_per_day_(std::max<Slot>(slots_per_day, 1)) {
  for (auto& [cell, profile] : profiles) {
    const std::uint64_t h = fnv1a(cell);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    auto cap = capacities.find(cell);
    Stream stream{std::move(profile), cap == capacities.end() ? 0 : cap->second, std::mt19937_64(seq)};
    std::sort(stream.profile.segments.begin(), stream.profile.segments.end(),
              [](const auto& a, const auto& b) { return a.from_slot_of_day < b.from_slot_of_day; });
    streams_.emplace(cell, std::move(stream));
  }
}

std::int64_t BackgroundGenerator::draw(const CellId& cell, Slot slot) {
  auto it = streams_.find(cell);
  if (it == streams_.end()) return 0;
  Stream& s = it->second;
  const double mean = s.profile.mean_at(slot % slots_per_day_);
  const double u = unit(s.rng);
  const double value = mean * (1.0 + s.profile.jitter * (2.0 * u - 1.0));
  return std::clamp<std::int64_t>(std::llround(value), 0, s.cap);
}

std::int64_t CellSlotOutcome::total_delivered() const {
  std::int64_t sum = background_delivered;
  for (const auto& s : slices) sum += s.delivered_prb;
  return sum;
}

RanWorld::RanWorld(Topology topology, RanConfig config, BackgroundGenerator background)
    : topology_(std::move(topology)), config_(config), background_(std::move(background)) {}

void RanWorld::add_ue(UeModel ue) {
  if (ues_.count(ue.ue_id) != 0) throw Error(Errc::BAD_REQUEST, "duplicate UE " + ue.ue_id);
  if (ue.serving_cell) {
    const CellId cell = *ue.serving_cell;
    ue.serving_cell.reset();
    slicebroker::attach(ue, cell, topology_);
  }
  recent_prb_[ue.ue_id];
  ues_.emplace(ue.ue_id, std::move(ue));
}

namespace {
template <class Map>
auto& find_ue(Map& ues, const UeId& id) {
  auto it = ues.find(id);
  if (it == ues.end()) throw Error(Errc::UNKNOWN_UE, id);
  return it->second;
}
}  // namespace

AttachResult RanWorld::attach(const UeId& ue, const CellId& cell) {
  return slicebroker::attach(find_ue(ues_, ue), cell, topology_);
}

HandoverResult RanWorld::handover(const UeId& ue, const CellId& target) {
  return slicebroker::handover(find_ue(ues_, ue), target, topology_);
}

void RanWorld::bind_slice(const UeId& ue, const SliceId& slice) { find_ue(ues_, ue).slice_id = slice; }

void RanWorld::set_demand(const UeId& ue, std::int64_t demand_prb) {
  find_ue(ues_, ue).demand_prb_per_slot = std::max<std::int64_t>(demand_prb, 0);
}

const UeModel& RanWorld::ue(const UeId& id) const { return find_ue(ues_, id); }

void RanWorld::configure(const ConfigItfB& msg) {
  if (!topology_.has_cell(msg.cell_id)) throw Error(Errc::UNKNOWN_CELL, msg.cell_id);
  auto& slices = cell_slices_[msg.cell_id];
  if (msg.action == ConfigAction::DEACTIVATE) {
    slices.erase(msg.slice_id);
    return;
  }
  auto [it, inserted] = slices.try_emplace(msg.slice_id, CellSlice{msg, 0});
  if (!inserted) it->second.config = msg;
}

bool RanWorld::slice_configured(const CellId& cell, const SliceId& slice) const {
  auto it = cell_slices_.find(cell);
  return it != cell_slices_.end() && it->second.count(slice) != 0;
}

SlotOutcome RanWorld::step(Slot slot) {
  if ((last_slot_ && slot != *last_slot_ + 1) || (!last_slot_ && slot < 0)) {
    throw Error(Errc::CLOCK_SKEW, "step " + std::to_string(slot) + " after " +
                                      (last_slot_ ? std::to_string(*last_slot_) : std::string("start")));
  }

  // Flows of each configured (cell, slice), in UE-id order. UEs outside a
  // slice configured on their serving cell are not scheduled here.
  std::map<CellId, std::map<SliceId, std::vector<Flow>>> flows;
  for (const auto& [id, ue] : ues_) {
    if (!ue.serving_cell || !ue.slice_id || !slice_configured(*ue.serving_cell, *ue.slice_id)) continue;
    flows[*ue.serving_cell][*ue.slice_id].push_back({id, ue.demand_prb_per_slot});
  }

  SlotOutcome out;
  out.slot = slot;
  std::map<UeId, std::int64_t> ue_prb;

  for (const auto& [cell_id, cell] : topology_.cells) {
    CellSlotOutcome co;
    co.cell_id = cell_id;
    co.effective_capacity = cell.effective_capacity(slot);
    co.background_demand = background_.draw(cell_id, slot);

    auto& slices = cell_slices_[cell_id];
    auto& cell_flows = flows[cell_id];
    std::int64_t consumed = 0;

    auto serve = [&](const SliceId& id, CellSlice& cs, std::int64_t quota) {
      const auto& fl = cell_flows[id];
      const IntraSliceResult r = intra_slice_schedule(quota, fl, cs.rr_pointer);
      cs.rr_pointer = r.next_pointer;
      SliceCellOutcome so;
      so.slice_id = id;
      so.tenant = cs.config.tenant;
      so.mode = cs.config.mode;
      so.granted_prb = cs.config.prb_per_slot;
      so.quota_prb = quota;
      for (const auto& f : fl) so.demanded_prb += f.backlog_prb;
      so.delivered_prb = quota - r.unused_prb;
      so.deficit_prb = std::max<std::int64_t>(0, std::min(so.granted_prb, so.demanded_prb) - so.delivered_prb);
      so.per_ue_prb = r.per_flow_prb;
      for (const auto& [ue, prb] : r.per_flow_prb) ue_prb[ue] += prb;
      return so;
    };

    std::vector<QuotaInput> two_layer;
    for (const auto& [id, cs] : slices) {
      if (cs.config.mode != SchedulingMode::TWO_LAYER) continue;
      two_layer.push_back({id, cs.config.prb_per_slot, cs.config.bearer == Bearer::NON_GBR});
    }
    const QuotaAssignment quotas = allocate_quotas(two_layer, co.effective_capacity, config_.spare_policy);
    co.overcommit = quotas.deficits;
    for (auto& [id, cs] : slices) {
      if (cs.config.mode != SchedulingMode::TWO_LAYER) continue;
      SliceCellOutcome so = serve(id, cs, quotas.per_slice_quota.at(id));
      // GBR reservations hold even when idle.
      consumed += cs.config.bearer == Bearer::GBR ? so.quota_prb : so.delivered_prb;
      co.slices.push_back(std::move(so));
    }

    std::vector<PoolDemand> pooled;
    for (const auto& [id, cs] : slices) {
      if (cs.config.mode != SchedulingMode::POOLED) continue;
      std::int64_t demand = 0;
      for (const auto& f : cell_flows[id]) demand += f.backlog_prb;
      pooled.push_back({id, cs.config.priority, cs.config.admission_seq, std::min(demand, cs.config.prb_per_slot)});
    }
    if (!pooled.empty()) {
      const auto alloc = pooled_schedule(pooled, std::max<std::int64_t>(co.effective_capacity - consumed, 0));
      for (auto& [id, cs] : slices) {
        if (cs.config.mode != SchedulingMode::POOLED) continue;
        SliceCellOutcome so = serve(id, cs, alloc.at(id));
        consumed += so.delivered_prb;
        co.slices.push_back(std::move(so));
      }
    }

    const std::int64_t left = std::max<std::int64_t>(co.effective_capacity - consumed, 0);
    co.background_delivered = std::min(co.background_demand, left);

    for (const auto& so : co.slices) {
      out.records.push_back({slot, cell_id, so.slice_id, so.tenant, so.demanded_prb, so.quota_prb,
                             so.delivered_prb, so.deficit_prb});
    }
    out.records.push_back({slot, cell_id, std::nullopt, std::nullopt, co.background_demand, left,
                           co.background_delivered, 0});
    out.cells.push_back(std::move(co));
  }

  for (auto& [id, hist] : recent_prb_) {
    auto it = ue_prb.find(id);
    hist.push_back(it == ue_prb.end() ? 0 : it->second);
    while (hist.size() > config_.rate_window_slots) hist.pop_front();
  }

  last_slot_ = slot;
  return out;
}

double RanWorld::average_rate_mbps(const UeId& id) const {
  const UeModel& u = ue(id);
  const auto& hist = recent_prb_.at(id);
  if (hist.empty()) return 0.0;
  double sum = 0.0;
  for (auto v : hist) sum += static_cast<double>(v);
  return sum / static_cast<double>(hist.size()) * config_.efficiency.of(u.mobility);
}

}  // namespace slicebroker
