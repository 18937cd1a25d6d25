#pragma once

// Scenario files: the topology, registered parties, UEs, background load and
// the scripted tenant behavior of one run. JSON, same object grammar as the
// wire format, versioned by the top-level "schema" field.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slicebroker/broker.hpp"
#include "slicebroker/gateway.hpp"
#include "slicebroker/ran_sim.hpp"
#include "slicebroker/scheduler.hpp"
#include "slicebroker/topology.hpp"

namespace slicebroker {

inline constexpr int kScenarioSchema = 1;

struct BrokerSettings {
  Slot commit_horizon_slots = 7 * 86400;
  SchedulingMode mode = SchedulingMode::TWO_LAYER;
  SparePolicy spare_policy = SparePolicy::NONE;
  EfficiencyTable efficiency;
  int forecast_window = 3;
  double default_background_fraction = 0.0;
  bool operator==(const BrokerSettings&) const = default;
};

struct ChargingTariff {
  double gbr_multiplier = 1.5;
  double non_gbr_multiplier = 1.0;

  double multiplier(Bearer b) const noexcept { return b == Bearer::GBR ? gbr_multiplier : non_gbr_multiplier; }
  bool operator==(const ChargingTariff&) const = default;
};

struct UeSpec {
  UeModel ue;  // serving_cell is the initial attachment
  /// The UE joins the slice granted for this request.
  std::optional<std::string> request_id;
  bool operator==(const UeSpec&) const = default;
};

struct ScriptedRequest {
  Slot slot = 0;
  std::string party;
  SliceRequest request;
  bool operator==(const ScriptedRequest&) const = default;
};

struct ScriptedRelease {
  Slot slot = 0;
  std::string party;
  std::string request_id;
  bool operator==(const ScriptedRelease&) const = default;
};

/// Handover to `cell`, or an attach when the UE is detached.
struct ScriptedMove {
  Slot slot = 0;
  UeId ue;
  CellId cell;
  bool operator==(const ScriptedMove&) const = default;
};

struct ScriptedDemand {
  Slot slot = 0;
  UeId ue;
  std::int64_t prb = 0;
  bool operator==(const ScriptedDemand&) const = default;
};

struct ScenarioConfig {
  int schema = kScenarioSchema;
  std::string name;
  std::uint64_t seed = 1;
  /// Number of slots a run executes.
  Slot horizon_slots = 100;
  double slot_seconds = 1.0;
  Slot slots_per_day = 86400;
  /// Serve mode: simulated seconds per wall-clock second.
  double speedup = 1.0;

  Topology topology;
  BrokerSettings broker;
  ChargingTariff charging;
  std::vector<Credentials> parties;
  std::vector<UeSpec> ues;
  std::map<CellId, BackgroundProfile> background;
  std::vector<ScriptedRequest> requests;
  std::vector<ScriptedRelease> releases;
  std::vector<ScriptedMove> moves;
  std::vector<ScriptedDemand> demands;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Parses and validates. Throws Error(CONFIG_INVALID) naming the field path.
ScenarioConfig parse_scenario(const std::string& text);

/// Pretty-printed JSON with every field explicit.
std::string serialize_scenario(const ScenarioConfig& config);

/// Checks every domain invariant of the config. Throws Error(CONFIG_INVALID).
void validate_scenario(const ScenarioConfig& config);

/// Reads and parses a file; IO_ERROR when it cannot be read.
ScenarioConfig load_scenario(const std::filesystem::path& path);

std::map<CellId, std::int64_t> nominal_capacities(const Topology& topology);

BrokerConfig broker_config(const ScenarioConfig& config);

}  // namespace slicebroker
