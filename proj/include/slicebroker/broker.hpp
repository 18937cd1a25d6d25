#pragma once

// The slice broker: a single serialized decision engine that admits requests
// against committed capacity plus forecast background load, tracks every
// grant's lifecycle, and emits the configuration pushed toward the RAN.

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "slicebroker/config_push.hpp"
#include "slicebroker/domain.hpp"
#include "slicebroker/topology.hpp"
#include "slicebroker/validate.hpp"

namespace slicebroker {

enum class SliceState { PENDING, ACTIVE, DORMANT, EXPIRED, RELEASED };

/// PENDING->ACTIVE<->DORMANT->EXPIRED, PENDING->EXPIRED, any->RELEASED.
bool is_allowed_transition(SliceState from, SliceState to) noexcept;

enum class RejectReason { CAPACITY_EXCEEDED, NO_FEASIBLE_CELLS, VALIDATION_FAILED, HORIZON_EXCEEDED };

struct Decision {
  enum class Outcome { GRANTED, REJECTED };

  std::string request_id;
  Outcome outcome = Outcome::REJECTED;
  std::optional<SliceGrant> grant;
  std::optional<RejectReason> reason;
  std::string detail;

  static Decision granted(SliceGrant g) {
    Decision d;
    d.request_id = g.request_id;
    d.outcome = Outcome::GRANTED;
    d.grant = std::move(g);
    return d;
  }
  static Decision rejected(std::string request_id, RejectReason r, std::string detail = {}) {
    Decision d;
    d.request_id = std::move(request_id);
    d.reason = r;
    d.detail = std::move(detail);
    return d;
  }

  bool is_granted() const noexcept { return outcome == Outcome::GRANTED; }
  bool operator==(const Decision&) const = default;
};

/// Predicted background PRB load on a cell at a slot-of-day.
using BackgroundForecast = std::function<double(const CellId&, Slot)>;

/// Cell set for a request: the explicit list when given, otherwise the cells
/// currently serving the tenant's UEs (sorted, unique). A MIOT request with no
/// UEs falls back to every cell. Throws NO_FEASIBLE_CELLS on an empty result.
std::vector<CellId> determine_cells(const ValidatedRequest& req, const Topology& topology,
                                    const std::vector<UeModel>& ues);

/// Per-(cell, slot) committed PRBs over the materialized window
/// [base, base + length). Slots outside the window read as zero.
class CommitmentTable {
 public:
  CommitmentTable() = default;
  CommitmentTable(const std::map<CellId, std::int64_t>& capacities, Slot base, Slot length);

  Slot base() const noexcept { return base_; }
  Slot end() const noexcept { return base_ + length_; }
  std::int64_t capacity(const CellId& cell) const;
  std::int64_t at(const CellId& cell, Slot t) const;
  /// Adds `prb` over `span` clipped to the window.
  void add(const CellId& cell, Interval span, std::int64_t prb);
  /// Slides the window so it starts at `new_base` (never backwards).
  void advance(Slot new_base);
  const std::map<CellId, std::int64_t>& capacities() const noexcept { return capacities_; }
  const std::map<CellId, std::deque<std::int64_t>>& loads() const noexcept { return load_; }

  bool operator==(const CommitmentTable&) const = default;

 private:
  std::map<CellId, std::int64_t> capacities_;
  std::map<CellId, std::deque<std::int64_t>> load_;
  Slot base_ = 0;
  Slot length_ = 0;
};

struct SliceRecord {
  SliceGrant grant;
  SliceState state = SliceState::PENDING;
  std::uint64_t admission_seq = 0;
  Slot admitted_at = 0;
  /// Index of the first recurrence not yet committed in the table.
  std::int64_t next_recurrence = 0;
  /// Periodic without a window end: renewed as the horizon rolls forward.
  bool open_ended = false;
  /// Slots the slice spent ACTIVE; the last span is open while ACTIVE.
  std::vector<Interval> active_spans;
  bool operator==(const SliceRecord&) const = default;
};

struct SliceRegistry {
  std::map<SliceId, SliceRecord> slices;
  CommitmentTable committed;
  std::set<std::string> request_ids;
  std::uint64_t next_seq = 0;
  bool operator==(const SliceRegistry&) const = default;
};

enum class LifecycleKind { ACTIVATE, DEACTIVATE, EXPIRE, RELEASE, RENEWAL_FAILED };

struct LifecycleEvent {
  Slot slot = 0;
  SliceId slice_id;
  TenantId tenant;
  LifecycleKind kind = LifecycleKind::ACTIVATE;
  SliceState new_state = SliceState::ACTIVE;
  bool operator==(const LifecycleEvent&) const = default;
};

struct BrokerOutput {
  std::vector<LifecycleEvent> events;
  std::vector<ConfigPush> pushes;
};

/// One line of the append-only decision log.
struct DecisionLogEntry {
  enum class Kind { ADMIT, RELEASE, CLOCK };
  Kind kind = Kind::ADMIT;
  Slot slot = 0;
  std::uint64_t seq = 0;
  std::optional<SliceRequest> request;  // ADMIT
  std::optional<Decision> decision;     // ADMIT
  std::optional<SliceId> slice_id;      // RELEASE
  bool operator==(const DecisionLogEntry&) const = default;
};

struct BrokerConfig {
  /// Length of the rolling commitment window.
  Slot horizon_slots = 7 * 86400;
  Slot slots_per_day = 86400;
  SchedulingMode mode = SchedulingMode::TWO_LAYER;
  EfficiencyTable efficiency;
  double slot_seconds = 1.0;
};

class Broker {
 public:
  Broker(BrokerConfig config, std::map<CellId, std::int64_t> capacities);

  const BrokerConfig& config() const noexcept { return config_; }
  const SliceRegistry& registry() const noexcept { return registry_; }
  Slot clock() const noexcept { return clock_; }
  std::optional<Slot> last_tick() const noexcept { return last_tick_; }
  const std::vector<DecisionLogEntry>& decision_log() const noexcept { return log_; }

  /// Moves the clock forward, slides the commitment window and renews
  /// open-ended periodic grants into the newly materialized slots. A renewal
  /// that no longer fits stops further renewal (RENEWAL_FAILED); the grant
  /// then runs out its committed recurrences and expires.
  BrokerOutput advance_to(Slot t);

  /// FCFS admission of one request against an already determined cell set.
  /// A rejection leaves the registry untouched, so the same request_id may be
  /// resubmitted; only granted ids are reserved.
  Decision admit(const ValidatedRequest& req, const std::vector<CellId>& cells,
                 const BackgroundForecast& forecast);

  /// determine_cells followed by admit; NO_FEASIBLE_CELLS becomes a rejection.
  Decision submit(const ValidatedRequest& req, const Topology& topology,
                  const std::vector<UeModel>& ues, const BackgroundForecast& forecast);

  /// Logs a request that failed validation upstream.
  Decision reject_invalid(const SliceRequest& req, const std::string& detail);

  /// Removes commitments at slots >= clock and marks the slice RELEASED.
  /// Throws UNKNOWN_SLICE or ALREADY_RELEASED.
  BrokerOutput release(const SliceId& slice_id);

  /// Emits lifecycle transitions for slot `t` (advancing the clock if needed).
  /// Throws CLOCK_SKEW when `t` is not after the previous tick.
  BrokerOutput tick(Slot t);

  /// Appends a CLOCK record carrying the last ticked slot so a replay can
  /// finish at the same point.
  void log_clock();

  /// PRB-slots in which `slice` was ACTIVE within `range`, summed over cells.
  std::int64_t prb_slots_active(const SliceId& slice, Interval range) const;

  /// Rebuilds the registry from a decision log without re-running admission.
  static Broker replay(BrokerConfig config, std::map<CellId, std::int64_t> capacities,
                       const std::vector<DecisionLogEntry>& log);

  /// Brute-force safety check: committed(c, t) <= capacity(c) everywhere.
  bool within_capacity() const;

 private:
  void commit(SliceRecord& rec);
  bool renew(SliceRecord& rec);
  void transition(SliceRecord& rec, SliceState to);
  std::optional<Slot> next_recurrence_start(const TimeSpec& time, Slot after) const;
  SliceGrant make_grant(const ValidatedRequest& req, const std::vector<CellId>& cells,
                        std::int64_t prb) const;
  void apply_grant(const SliceGrant& grant);

  BrokerConfig config_;
  SliceRegistry registry_;
  std::vector<DecisionLogEntry> log_;
  Slot clock_ = 0;
  std::optional<Slot> last_tick_;
};

template <>
struct EnumNames<SliceState> {
  static constexpr std::array<std::pair<SliceState, std::string_view>, 5> entries{{
      {SliceState::PENDING, "PENDING"},
      {SliceState::ACTIVE, "ACTIVE"},
      {SliceState::DORMANT, "DORMANT"},
      {SliceState::EXPIRED, "EXPIRED"},
      {SliceState::RELEASED, "RELEASED"},
  }};
};
template <>
struct EnumNames<RejectReason> {
  static constexpr std::array<std::pair<RejectReason, std::string_view>, 4> entries{{
      {RejectReason::CAPACITY_EXCEEDED, "CAPACITY_EXCEEDED"},
      {RejectReason::NO_FEASIBLE_CELLS, "NO_FEASIBLE_CELLS"},
      {RejectReason::VALIDATION_FAILED, "VALIDATION_FAILED"},
      {RejectReason::HORIZON_EXCEEDED, "HORIZON_EXCEEDED"},
  }};
};
template <>
struct EnumNames<Decision::Outcome> {
  static constexpr std::array<std::pair<Decision::Outcome, std::string_view>, 2> entries{{
      {Decision::Outcome::GRANTED, "GRANTED"},
      {Decision::Outcome::REJECTED, "REJECTED"},
  }};
};
template <>
struct EnumNames<LifecycleKind> {
  static constexpr std::array<std::pair<LifecycleKind, std::string_view>, 5> entries{{
      {LifecycleKind::ACTIVATE, "ACTIVATE"},
      {LifecycleKind::DEACTIVATE, "DEACTIVATE"},
      {LifecycleKind::EXPIRE, "EXPIRE"},
      {LifecycleKind::RELEASE, "RELEASE"},
      {LifecycleKind::RENEWAL_FAILED, "RENEWAL_FAILED"},
  }};
};
template <>
struct EnumNames<DecisionLogEntry::Kind> {
  static constexpr std::array<std::pair<DecisionLogEntry::Kind, std::string_view>, 3> entries{{
      {DecisionLogEntry::Kind::ADMIT, "ADMIT"},
      {DecisionLogEntry::Kind::RELEASE, "RELEASE"},
      {DecisionLogEntry::Kind::CLOCK, "CLOCK"},
  }};
};

}  // namespace slicebroker
