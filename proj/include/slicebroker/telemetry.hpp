#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "slicebroker/domain.hpp"

namespace slicebroker {

/// One per-slot measurement of a slice (or of background traffic when
/// `slice_id` is empty) on one cell. Tagged with the owning tenant.
struct MeasurementRecord {
  Slot slot = 0;
  CellId cell_id;
  std::optional<SliceId> slice_id;  // empty: BACKGROUND
  std::optional<TenantId> tenant;   // empty: BACKGROUND
  std::int64_t demanded_prb = 0;
  std::int64_t quota_prb = 0;
  std::int64_t delivered_prb = 0;
  /// max(0, min(granted, demanded) - delivered): capacity owed but not served.
  std::int64_t deficit_prb = 0;

  bool is_background() const noexcept { return !slice_id.has_value(); }
  bool operator==(const MeasurementRecord&) const = default;
};

struct SlaEvent {
  Slot slot = 0;
  CellId cell_id;
  SliceId slice_id;
  TenantId tenant;
  std::int64_t deficit_prb = 0;
  bool operator==(const SlaEvent&) const = default;
};

/// One event per slice record with a positive deficit.
std::vector<SlaEvent> detect_sla_violations(std::span<const MeasurementRecord> records);

struct SliceKpi {
  SliceId slice_id;
  std::int64_t demanded_prb = 0;
  std::int64_t delivered_prb = 0;
  std::int64_t deficit_prb = 0;
  std::int64_t sla_events = 0;
  std::int64_t handovers = 0;
  bool operator==(const SliceKpi&) const = default;
};

/// Performance feedback for one tenant. Carries only that tenant's own slice
/// records: no background, no other tenants, no cell capacities.
struct KpiReport {
  TenantId tenant;
  Interval range;
  std::vector<SliceKpi> slices;
  std::vector<MeasurementRecord> records;
  bool operator==(const KpiReport&) const = default;
};

struct TelemetryConfig {
  Slot slots_per_day = 86400;
  int forecast_window = 3;
  /// Forecast for a (cell, slot-of-day) without history, as a fraction of the
  /// cell's nominal capacity.
  double default_background_fraction = 0.0;
};

/// Measurement store fed once per slot by the event loop (single writer).
class TelemetryStore {
 public:
  struct Aggregate {
    std::int64_t samples = 0;  // slots observed
    std::int64_t background_prb = 0;
    std::int64_t delivered_prb = 0;  // slices + background
    std::int64_t deficit_prb = 0;
    bool operator==(const Aggregate&) const = default;
  };

  TelemetryStore(TelemetryConfig config, std::map<CellId, std::int64_t> capacities);

  void register_tenant(const TenantId& tenant);
  bool knows_tenant(const TenantId& tenant) const { return tenants_.count(tenant) != 0; }

  /// Appends a batch. Slots must not decrease within the batch or relative to
  /// anything already ingested (OUT_OF_ORDER_BATCH, store untouched).
  void ingest(std::span<const MeasurementRecord> records);

  void record_handover(Slot slot, const TenantId& tenant, const std::optional<SliceId>& slice);

  /// Mean of the last `window` background observations at this slot-of-day.
  double forecast_background(const CellId& cell, Slot slot_of_day, int window) const;
  double forecast_background(const CellId& cell, Slot slot_of_day) const {
    return forecast_background(cell, slot_of_day, config_.forecast_window);
  }

  /// Throws UNKNOWN_TENANT for unregistered tenants.
  KpiReport build_tenant_report(const TenantId& tenant, Interval range) const;

  const std::vector<MeasurementRecord>& records() const noexcept { return records_; }
  std::optional<Aggregate> aggregate(const CellId& cell, Slot slot_of_day) const;
  const std::vector<double>& background_history(const CellId& cell, Slot slot_of_day) const;
  std::optional<Slot> last_slot() const noexcept { return last_slot_; }
  const TelemetryConfig& config() const noexcept { return config_; }

 private:
  struct HandoverEvent {
    Slot slot;
    TenantId tenant;
    std::optional<SliceId> slice;
  };

  using Key = std::pair<CellId, Slot>;

  TelemetryConfig config_;
  std::map<CellId, std::int64_t> capacities_;
  std::set<TenantId> tenants_;
  std::vector<MeasurementRecord> records_;
  std::vector<HandoverEvent> handovers_;
  std::map<Key, Aggregate> aggregates_;
  std::map<Key, std::vector<double>> background_;
  std::optional<Slot> last_slot_;
};

}  // namespace slicebroker
