#pragma once

// Helpers shared by the unit tests and the acceptance runner: small
// topologies, randomized scenarios and messages, and brute-force oracles that
// recompute results without going through the code under test.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "slicebroker/broker.hpp"
#include "slicebroker/messages.hpp"
#include "slicebroker/scenario.hpp"

namespace sbtest {

using namespace slicebroker;

/// Cells C1..Cn in a chain, each broadcasting `plmns`, MOCN endpoints
/// "mme-<plmn>" plus a shared "mme-shared" endpoint.
Topology chain_topology(int cells, const std::vector<std::string>& plmns, std::int64_t capacity = 100,
                        SharingMode mode = SharingMode::MOCN);

SliceRequest prb_request(const std::string& id, const TenantId& tenant, std::int64_t prb, TimeSpec time,
                         std::optional<std::vector<CellId>> cells = std::nullopt);

/// Two shared cells (C1, C2; 100 PRB; PLMNs 00101 and 00102), operator
/// parties "op-a"/"op-b", vertical "grid-util", UEs a1@C1, a2@C2 (00101) and
/// b1@C1 (00102). No scripted traffic.
ScenarioConfig small_config();

struct RandomScenarioOptions {
  SchedulingMode mode = SchedulingMode::TWO_LAYER;
  SparePolicy spare = SparePolicy::NONE;
  SharingMode sharing = SharingMode::MOCN;
  Slot horizon = 60;
  bool outages = true;
};

/// Valid multi-tenant scenario: 2-4 cells, 2-3 operators, 1-2 verticals,
/// random UEs, requests, releases, moves, demand changes and background.
ScenarioConfig random_scenario(std::uint64_t seed, const RandomScenarioOptions& opt = {});

/// Random message of the given type; values stay within what the codec can
/// represent exactly.
MessageBody random_body(std::mt19937_64& rng, MessageType type);

/// Exhaustive feasibility check: for every cell in `cells` and every slot of
/// every recurrence of `time`, committed + ceil(forecast) + prb <= capacity.
/// `committed` is a plain (cell, slot) -> PRB map maintained by the caller.
bool oracle_feasible(const std::map<std::pair<CellId, Slot>, std::int64_t>& committed,
                     const std::map<CellId, std::int64_t>& capacity,
                     const std::map<std::pair<CellId, Slot>, double>& forecast, Slot slots_per_day,
                     const std::vector<CellId>& cells, const TimeSpec& time, Slot horizon_end, std::int64_t prb);

/// Recurrence starts of `time` whose interval ends at or before `horizon_end`
/// and that begin no later than the window end, by direct enumeration.
std::vector<Slot> oracle_recurrences(const TimeSpec& time, Slot horizon_end);

/// Unique scratch directory under the system temp dir.
std::string temp_dir(const std::string& tag);

std::string read_file(const std::string& path);

}  // namespace sbtest
