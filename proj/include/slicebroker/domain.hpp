#pragma once

// Vocabulary types shared by the simulator, the broker and the wire layer.
// All time quantities are slot indices (one slot is one second of simulated
// time unless a scenario says otherwise); radio capacity is counted in
// physical resource blocks per slot.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slicebroker/enum_names.hpp"

namespace slicebroker {

using Slot = std::int64_t;
using CellId = std::string;
using SliceId = std::string;
using UeId = std::string;

enum class TenantKind { OPERATOR, SERVICE };

/// Identifies a tenant. OPERATOR tenants are keyed by their PLMN-id (MCC+MNC,
/// five or six decimal digits); SERVICE tenants (verticals, OTT providers) by
/// a registered service identifier.
struct TenantId {
  TenantKind kind = TenantKind::OPERATOR;
  std::string value;

  static TenantId plmn(std::string id) { return {TenantKind::OPERATOR, std::move(id)}; }
  static TenantId service(std::string id) { return {TenantKind::SERVICE, std::move(id)}; }

  /// "PLMN:00101" or "SVC:grid-util"; used as a flat key in logs and CSV.
  std::string str() const;

  auto operator<=>(const TenantId&) const = default;
  bool operator==(const TenantId&) const = default;
};

bool is_valid_plmn(const std::string& id) noexcept;
bool is_valid(const TenantId& tenant) noexcept;

/// Half-open slot interval [begin, end).
struct Interval {
  Slot begin = 0;
  Slot end = 0;

  bool contains(Slot t) const noexcept { return t >= begin && t < end; }
  Slot length() const noexcept { return end - begin; }
  auto operator<=>(const Interval&) const = default;
  bool operator==(const Interval&) const = default;
};

struct TimeSpec {
  Slot start_slot = 0;
  Slot duration_slots = 1;
  std::optional<Slot> periodicity_slots;
  /// Last slot at which a recurrence may begin.
  std::optional<Slot> window_end_slot;

  bool periodic() const noexcept { return periodicity_slots.has_value(); }
  bool operator==(const TimeSpec&) const = default;
};

/// Recurrences of `time` that begin at or before min(window_end, horizon),
/// sorted and pairwise disjoint.
std::vector<Interval> active_intervals(const TimeSpec& time, Slot horizon_slot);

/// Start of the k-th recurrence (k = 0 for non-periodic specs).
inline Slot recurrence_start(const TimeSpec& time, std::int64_t k) noexcept {
  return time.start_slot + k * time.periodicity_slots.value_or(0);
}

enum class Bearer { GBR, NON_GBR };

struct QosProfile {
  Bearer bearer = Bearer::NON_GBR;
  int priority = 8;  // 1 is highest, 15 lowest
  double delay_budget_ms = 100.0;
  double jitter_ms = 0.0;
  double loss_rate = 0.0;

  bool operator==(const QosProfile&) const = default;
};

enum class ResourceKind { PHYSICAL_PRB, DATA_RATE };

struct ResourceSpec {
  ResourceKind kind = ResourceKind::PHYSICAL_PRB;
  std::optional<std::int64_t> prb_per_slot;
  std::optional<double> rate_mbps;

  static ResourceSpec prbs(std::int64_t n) { return {ResourceKind::PHYSICAL_PRB, n, std::nullopt}; }
  static ResourceSpec rate(double mbps) { return {ResourceKind::DATA_RATE, std::nullopt, mbps}; }

  bool operator==(const ResourceSpec&) const = default;
};

enum class Mobility { STATIONARY, LOW, MEDIUM, HIGH };
enum class OffloadingPolicy { NONE, WIFI_PREFERRED, EDGE_PREFERRED };

struct VolumeDescriptor {
  double file_size_mb = 0.0;  // megabits
  Slot deadline_slot = 0;

  bool operator==(const VolumeDescriptor&) const = default;
};

struct ServiceInfo {
  Mobility mobility = Mobility::STATIONARY;
  OffloadingPolicy offloading_policy = OffloadingPolicy::NONE;
  Slot disruption_tolerance_slots = 0;
  std::optional<VolumeDescriptor> volume_descriptor;

  bool operator==(const ServiceInfo&) const = default;
};

enum class SliceTemplate { EMBB, AUTOMOTIVE, MIOT };
enum class SchedulingMode { TWO_LAYER, POOLED };

/// Default QoS and service profile of each slice archetype: broadband,
/// automotive and massive IoT.
struct TemplateProfile {
  QosProfile qos;
  Mobility mobility;
};
TemplateProfile template_profile(SliceTemplate t) noexcept;

struct SliceRequest {
  std::string request_id;
  TenantId tenant;
  ResourceSpec resources;
  TimeSpec time;
  QosProfile qos;
  ServiceInfo service;
  std::optional<std::vector<CellId>> cells;
  std::optional<SliceTemplate> slice_template;

  bool operator==(const SliceRequest&) const = default;
};

struct SliceGrant {
  SliceId slice_id;
  std::string request_id;
  TenantId tenant;
  std::map<CellId, std::int64_t> per_cell_prb;
  TimeSpec time;
  QosProfile qos;
  SchedulingMode mode = SchedulingMode::TWO_LAYER;

  bool operator==(const SliceGrant&) const = default;
};

/// Spectral efficiency (Mbps per PRB) by mobility class.
struct EfficiencyTable {
  std::array<double, 4> mbps_per_prb{1.0, 0.8, 0.6, 0.4};

  double of(Mobility m) const noexcept { return mbps_per_prb[static_cast<std::size_t>(m)]; }
  double& of(Mobility m) noexcept { return mbps_per_prb[static_cast<std::size_t>(m)]; }
  bool operator==(const EfficiencyTable&) const = default;
};

/// Smallest PRB count whose capacity at the class efficiency covers the rate,
/// i.e. ceil(rate / efficiency) evaluated so that the result never
/// under-provisions in floating point.
std::int64_t rate_to_prb(double rate_mbps, Mobility mobility, const EfficiencyTable& table);

/// PRB/slot the request needs on every cell of its set. DATA_RATE requests go
/// through rate_to_prb; a volume descriptor is spread evenly up to its deadline
/// and the larger of the two requirements wins.
std::int64_t needed_prb(const SliceRequest& req, const EfficiencyTable& table,
                        double slot_seconds = 1.0);

// Wire names -----------------------------------------------------------------

template <>
struct EnumNames<TenantKind> {
  static constexpr std::array<std::pair<TenantKind, std::string_view>, 2> entries{{
      {TenantKind::OPERATOR, "OPERATOR"},
      {TenantKind::SERVICE, "SERVICE"},
  }};
};
template <>
struct EnumNames<Bearer> {
  static constexpr std::array<std::pair<Bearer, std::string_view>, 2> entries{{
      {Bearer::GBR, "GBR"},
      {Bearer::NON_GBR, "NON_GBR"},
  }};
};
template <>
struct EnumNames<ResourceKind> {
  static constexpr std::array<std::pair<ResourceKind, std::string_view>, 2> entries{{
      {ResourceKind::PHYSICAL_PRB, "PHYSICAL_PRB"},
      {ResourceKind::DATA_RATE, "DATA_RATE"},
  }};
};
template <>
struct EnumNames<Mobility> {
  static constexpr std::array<std::pair<Mobility, std::string_view>, 4> entries{{
      {Mobility::STATIONARY, "STATIONARY"},
      {Mobility::LOW, "LOW"},
      {Mobility::MEDIUM, "MEDIUM"},
      {Mobility::HIGH, "HIGH"},
  }};
};
template <>
struct EnumNames<OffloadingPolicy> {
  static constexpr std::array<std::pair<OffloadingPolicy, std::string_view>, 3> entries{{
      {OffloadingPolicy::NONE, "NONE"},
      {OffloadingPolicy::WIFI_PREFERRED, "WIFI_PREFERRED"},
      {OffloadingPolicy::EDGE_PREFERRED, "EDGE_PREFERRED"},
  }};
};
template <>
struct EnumNames<SliceTemplate> {
  static constexpr std::array<std::pair<SliceTemplate, std::string_view>, 3> entries{{
      {SliceTemplate::EMBB, "EMBB"},
      {SliceTemplate::AUTOMOTIVE, "AUTOMOTIVE"},
      {SliceTemplate::MIOT, "MIOT"},
  }};
};
template <>
struct EnumNames<SchedulingMode> {
  static constexpr std::array<std::pair<SchedulingMode, std::string_view>, 2> entries{{
      {SchedulingMode::TWO_LAYER, "TWO_LAYER"},
      {SchedulingMode::POOLED, "POOLED"},
  }};
};

}  // namespace slicebroker
