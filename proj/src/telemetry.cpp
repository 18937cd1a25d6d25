#include "slicebroker/telemetry.hpp"

#include <algorithm>

#include "slicebroker/error.hpp"

namespace slicebroker {

std::vector<SlaEvent> detect_sla_violations(std::span<const MeasurementRecord> records) {
  std::vector<SlaEvent> events;
  for (const auto& r : records) {
    if (r.is_background() || r.deficit_prb <= 0 || !r.tenant) continue;
    events.push_back({r.slot, r.cell_id, *r.slice_id, *r.tenant, r.deficit_prb});
  }
  return events;
}

TelemetryStore::TelemetryStore(TelemetryConfig config, std::map<CellId, std::int64_t> capacities)
    : config_(config), capacities_(std::move(capacities)) {
  if (config_.slots_per_day <= 0) config_.slots_per_day = 1;
}

void TelemetryStore::register_tenant(const TenantId& tenant) { tenants_.insert(tenant); }

void TelemetryStore::ingest(std::span<const MeasurementRecord> records) {
  std::optional<Slot> prev = last_slot_;
  for (const auto& r : records) {
    if (prev && r.slot < *prev) {
      throw Error(Errc::OUT_OF_ORDER_BATCH,
                  "slot " + std::to_string(r.slot) + " after " + std::to_string(*prev));
    }
    prev = r.slot;
  }

  for (const auto& r : records) {
    records_.push_back(r);
    const Key key{r.cell_id, r.slot % config_.slots_per_day};
    Aggregate& agg = aggregates_[key];
    agg.delivered_prb += r.delivered_prb;
    agg.deficit_prb += r.deficit_prb;
    if (r.is_background()) {
      agg.samples += 1;
      agg.background_prb += r.demanded_prb;
      background_[key].push_back(static_cast<double>(r.demanded_prb));
    }
  }
  last_slot_ = prev;
}

void TelemetryStore::record_handover(Slot slot, const TenantId& tenant, const std::optional<SliceId>& slice) {
  handovers_.push_back({slot, tenant, slice});
}

double TelemetryStore::forecast_background(const CellId& cell, Slot slot_of_day, int window) const {
  const auto it = background_.find({cell, slot_of_day});
  if (it == background_.end() || it->second.empty()) {
    const auto cap = capacities_.find(cell);
    const double nominal = cap == capacities_.end() ? 0.0 : static_cast<double>(cap->second);
    return config_.default_background_fraction * nominal;
  }
  const auto& history = it->second;
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(window, 1)), history.size());
  double sum = 0.0;
  for (std::size_t i = history.size() - k; i < history.size(); ++i) sum += history[i];
  return sum / static_cast<double>(k);
}

KpiReport TelemetryStore::build_tenant_report(const TenantId& tenant, Interval range) const {
  if (!knows_tenant(tenant)) throw Error(Errc::UNKNOWN_TENANT, tenant.str());

  KpiReport report;
  report.tenant = tenant;
  report.range = range;
  std::map<SliceId, SliceKpi> per_slice;
  for (const auto& r : records_) {
    if (r.is_background() || !r.tenant || *r.tenant != tenant || !range.contains(r.slot)) continue;
    report.records.push_back(r);
    SliceKpi& kpi = per_slice[*r.slice_id];
    kpi.slice_id = *r.slice_id;
    kpi.demanded_prb += r.demanded_prb;
    kpi.delivered_prb += r.delivered_prb;
    kpi.deficit_prb += r.deficit_prb;
    if (r.deficit_prb > 0) kpi.sla_events += 1;
  }
  for (const auto& h : handovers_) {
    if (h.tenant != tenant || !h.slice || !range.contains(h.slot)) continue;
    SliceKpi& kpi = per_slice[*h.slice];
    kpi.slice_id = *h.slice;
    kpi.handovers += 1;
  }
  for (auto& [id, kpi] : per_slice) report.slices.push_back(std::move(kpi));
  return report;
}

std::optional<TelemetryStore::Aggregate> TelemetryStore::aggregate(const CellId& cell, Slot slot_of_day) const {
  auto it = aggregates_.find({cell, slot_of_day});
  if (it == aggregates_.end()) return std::nullopt;
  return it->second;
}

const std::vector<double>& TelemetryStore::background_history(const CellId& cell, Slot slot_of_day) const {
  static const std::vector<double> kEmpty;
  auto it = background_.find({cell, slot_of_day});
  return it == background_.end() ? kEmpty : it->second;
}

}  // namespace slicebroker
