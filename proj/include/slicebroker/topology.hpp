#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slicebroker/domain.hpp"

namespace slicebroker {

/// A shared cell broadcasts at most this many PLMN-ids.
inline constexpr std::size_t kMaxBroadcastPlmns = 6;

enum class SharingMode { MOCN, GWCN };

/// Network-sharing business scenarios a topology can be configured as.
enum class Archetype {
  CUSTOM,
  MULTI_CORE_SHARED_RAN,
  COVERAGE_COLLABORATION,
  REGIONAL_COVERAGE_SHARING,
  COMMON_SPECTRUM_SHARING,
  MULTI_RAN_SHARED_CORE,
};

/// Reduced capacity over [begin, end).
struct Outage {
  Slot begin = 0;
  Slot end = 0;
  std::int64_t capacity_prb = 0;

  bool operator==(const Outage&) const = default;
};

struct CellModel {
  CellId cell_id;
  std::int64_t capacity_prb_per_slot = 100;
  std::vector<std::string> broadcast_plmns;
  std::vector<CellId> neighbors;
  std::vector<Outage> outages;

  bool broadcasts(const std::string& plmn) const;
  bool is_neighbor(const CellId& other) const;
  /// Nominal capacity, or the lowest reduced capacity of any outage covering
  /// `slot`.
  std::int64_t effective_capacity(Slot slot) const;

  bool operator==(const CellModel&) const = default;
};

/// Appends `plmn` to the cell's broadcast list.
/// Throws DUPLICATE_PLMN or MAX_PLMN_EXCEEDED.
CellModel add_operator(CellModel cell, const std::string& plmn);

struct Topology {
  SharingMode sharing_mode = SharingMode::MOCN;
  std::map<CellId, CellModel> cells;
  /// MOCN: one MME endpoint per PLMN.
  std::map<std::string, std::string> core_endpoints;
  /// GWCN: the single shared MME endpoint.
  std::optional<std::string> shared_endpoint;
  Archetype archetype = Archetype::CUSTOM;

  bool has_cell(const CellId& id) const { return cells.count(id) != 0; }
  const CellModel& cell(const CellId& id) const;
  CellModel& cell(const CellId& id);

  /// In-place add_operator on a deployed cell (UNKNOWN_CELL if absent).
  void add_operator(const CellId& cell_id, const std::string& plmn);

  bool operator==(const Topology&) const = default;
};

/// Structural checks on PLMN lists, outages, neighbor references, core
/// endpoints and the archetype's shape. Throws Error(CONFIG_INVALID) naming
/// the offending field.
void validate_topology(const Topology& topo);

struct UeModel {
  UeId ue_id;
  TenantId owner;
  std::string home_plmn;
  std::optional<CellId> serving_cell;  // empty while detached
  std::optional<SliceId> slice_id;
  std::int64_t demand_prb_per_slot = 0;
  Mobility mobility = Mobility::STATIONARY;

  bool operator==(const UeModel&) const = default;
};

struct AttachResult {
  std::string core_endpoint;
  bool operator==(const AttachResult&) const = default;
};

struct HandoverResult {
  CellId source_cell;
  CellId target_cell;
  std::string core_endpoint;
  bool operator==(const HandoverResult&) const = default;
};

/// Core endpoint that serves `home_plmn` under the topology's sharing mode.
std::string core_endpoint_for(const Topology& topo, const std::string& home_plmn);

/// Attaches the UE to `cell`. Throws UNKNOWN_CELL or PLMN_NOT_BROADCAST; the UE
/// is left untouched on failure.
AttachResult attach(UeModel& ue, const CellId& cell, const Topology& topo);

/// X2-style handover to a neighbor. Throws NOT_ATTACHED, UNKNOWN_CELL,
/// NOT_NEIGHBOR or HANDOVER_REJECTED; the UE is left untouched on failure.
HandoverResult handover(UeModel& ue, const CellId& target_cell, const Topology& topo);

template <>
struct EnumNames<SharingMode> {
  static constexpr std::array<std::pair<SharingMode, std::string_view>, 2> entries{{
      {SharingMode::MOCN, "MOCN"},
      {SharingMode::GWCN, "GWCN"},
  }};
};
template <>
struct EnumNames<Archetype> {
  static constexpr std::array<std::pair<Archetype, std::string_view>, 6> entries{{
      {Archetype::CUSTOM, "CUSTOM"},
      {Archetype::MULTI_CORE_SHARED_RAN, "MULTI_CORE_SHARED_RAN"},
      {Archetype::COVERAGE_COLLABORATION, "COVERAGE_COLLABORATION"},
      {Archetype::REGIONAL_COVERAGE_SHARING, "REGIONAL_COVERAGE_SHARING"},
      {Archetype::COMMON_SPECTRUM_SHARING, "COMMON_SPECTRUM_SHARING"},
      {Archetype::MULTI_RAN_SHARED_CORE, "MULTI_RAN_SHARED_CORE"},
  }};
};

}  // namespace slicebroker
