#pragma once

// Southbound slice configuration: one grant-level message toward the shared
// RAN domain manager (Itf-N) fanned out into one message per cell toward the
// base stations (Itf-B). Every per-cell message carries the tenant identifier.

#include <cstdint>
#include <vector>

#include "slicebroker/domain.hpp"

namespace slicebroker {

enum class ConfigAction { ACTIVATE, DEACTIVATE };

struct ConfigItfN {
  ConfigAction action = ConfigAction::ACTIVATE;
  SliceId slice_id;
  TenantId tenant;
  std::vector<CellId> cells;
  SchedulingMode mode = SchedulingMode::TWO_LAYER;
  bool operator==(const ConfigItfN&) const = default;
};

struct ConfigItfB {
  ConfigAction action = ConfigAction::ACTIVATE;
  CellId cell_id;
  SliceId slice_id;
  TenantId tenant;
  std::int64_t prb_per_slot = 0;
  SchedulingMode mode = SchedulingMode::TWO_LAYER;
  Bearer bearer = Bearer::NON_GBR;
  int priority = 8;
  /// Admission order; breaks priority ties in pooled mode.
  std::uint64_t admission_seq = 0;
  bool operator==(const ConfigItfB&) const = default;
};

struct ConfigPush {
  ConfigItfN itf_n;
  std::vector<ConfigItfB> itf_b;
  bool operator==(const ConfigPush&) const = default;
};

ConfigPush push_config(const SliceGrant& grant, ConfigAction action, std::uint64_t admission_seq);

template <>
struct EnumNames<ConfigAction> {
  static constexpr std::array<std::pair<ConfigAction, std::string_view>, 2> entries{{
      {ConfigAction::ACTIVATE, "ACTIVATE"},
      {ConfigAction::DEACTIVATE, "DEACTIVATE"},
  }};
};

}  // namespace slicebroker
