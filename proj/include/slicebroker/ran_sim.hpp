#pragma once

// Deterministic slot-driven model of the shared RAN: cells configured with
// slices over Itf-B, attached UEs producing per-slot demand, seeded seasonal
// background traffic, and the per-slot scheduling step.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "slicebroker/config_push.hpp"
#include "slicebroker/scheduler.hpp"
#include "slicebroker/telemetry.hpp"
#include "slicebroker/topology.hpp"

namespace slicebroker {

/// Piecewise-constant mean background load per slot-of-day.
struct BackgroundProfile {
  struct Segment {
    Slot from_slot_of_day = 0;
    double mean_prb = 0.0;
    bool operator==(const Segment&) const = default;
  };
  std::vector<Segment> segments;  // sorted by from_slot_of_day
  /// Relative uniform spread around the mean, in [0, 1].
  double jitter = 0.0;

  double mean_at(Slot slot_of_day) const;
  bool operator==(const BackgroundProfile&) const = default;
};

/// Seeded per-cell background demand. Each cell draws from its own stream, so
/// a cell's sequence does not depend on any other cell or on slice traffic.
class BackgroundGenerator {
 public:
  BackgroundGenerator() = default;
  BackgroundGenerator(std::uint64_t seed, Slot slots_per_day,
                      std::map<CellId, BackgroundProfile> profiles,
                      const std::map<CellId, std::int64_t>& capacities);

  /// Must be called exactly once per cell per slot, slots in order.
  std::int64_t draw(const CellId& cell, Slot slot);

 private:
  struct Stream {
    BackgroundProfile profile;
    std::int64_t cap = 0;
    std::mt19937_64 rng;
  };
  Slot slots_per_day_ = 86400;
  std::map<CellId, Stream> streams_;
};

struct SliceCellOutcome {
  SliceId slice_id;
  TenantId tenant;
  SchedulingMode mode = SchedulingMode::TWO_LAYER;
  std::int64_t granted_prb = 0;
  std::int64_t quota_prb = 0;
  std::int64_t demanded_prb = 0;
  std::int64_t delivered_prb = 0;
  std::int64_t deficit_prb = 0;
  std::map<UeId, std::int64_t> per_ue_prb;
  bool operator==(const SliceCellOutcome&) const = default;
};

struct CellSlotOutcome {
  CellId cell_id;
  std::int64_t effective_capacity = 0;
  std::int64_t background_demand = 0;
  std::int64_t background_delivered = 0;
  std::vector<SliceCellOutcome> slices;
  /// Grant shortfalls signaled by quota allocation under outage.
  std::vector<QuotaDeficit> overcommit;

  std::int64_t total_delivered() const;
  bool operator==(const CellSlotOutcome&) const = default;
};

struct SlotOutcome {
  Slot slot = 0;
  std::vector<CellSlotOutcome> cells;
  std::vector<MeasurementRecord> records;
  bool operator==(const SlotOutcome&) const = default;
};

struct RanConfig {
  SparePolicy spare_policy = SparePolicy::NONE;
  EfficiencyTable efficiency;
  /// Window for the per-UE average delivered rate.
  std::size_t rate_window_slots = 10;
};

class RanWorld {
 public:
  RanWorld(Topology topology, RanConfig config, BackgroundGenerator background);

  const Topology& topology() const noexcept { return topology_; }
  void add_operator(const CellId& cell, const std::string& plmn) { topology_.add_operator(cell, plmn); }

  /// Registers a UE; attaches it when `serving_cell` is set (throws like attach).
  void add_ue(UeModel ue);
  AttachResult attach(const UeId& ue, const CellId& cell);
  HandoverResult handover(const UeId& ue, const CellId& target);
  void bind_slice(const UeId& ue, const SliceId& slice);
  void set_demand(const UeId& ue, std::int64_t demand_prb);
  const UeModel& ue(const UeId& id) const;
  const std::map<UeId, UeModel>& ues() const noexcept { return ues_; }

  /// Applies a per-cell slice configuration message.
  void configure(const ConfigItfB& msg);
  bool slice_configured(const CellId& cell, const SliceId& slice) const;

  /// Runs one scheduling slot. Slots must be consecutive (CLOCK_SKEW).
  SlotOutcome step(Slot slot);
  std::optional<Slot> last_slot() const noexcept { return last_slot_; }

  /// Mean delivered PRBs over the last `rate_window_slots` slots (fewer
  /// early in a run) times the UE's mobility-class efficiency.
  double average_rate_mbps(const UeId& ue) const;

 private:
  struct CellSlice {
    ConfigItfB config;
    std::size_t rr_pointer = 0;
  };

  Topology topology_;
  RanConfig config_;
  BackgroundGenerator background_;
  std::map<UeId, UeModel> ues_;
  std::map<CellId, std::map<SliceId, CellSlice>> cell_slices_;
  std::map<UeId, std::deque<std::int64_t>> recent_prb_;
  std::optional<Slot> last_slot_;
};

/// Discrete-event queue. Events due in the same slot pop in (rank, insertion
/// order) order regardless of push order across slots.
template <class Payload>
class EventQueue {
 public:
  void push(Slot slot, int rank, Payload payload) {
    events_.emplace(std::make_tuple(slot, rank, next_seq_++), std::move(payload));
  }

  /// Removes and returns every event due at or before `slot`, in order.
  std::vector<Payload> pop_due(Slot slot) {
    std::vector<Payload> due;
    auto it = events_.begin();
    while (it != events_.end() && std::get<0>(it->first) <= slot) {
      due.push_back(std::move(it->second));
      it = events_.erase(it);
    }
    return due;
  }

  bool empty() const noexcept { return events_.empty(); }
  std::size_t size() const noexcept { return events_.size(); }

 private:
  std::map<std::tuple<Slot, int, std::uint64_t>, Payload> events_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace slicebroker
