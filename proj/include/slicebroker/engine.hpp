#pragma once

// Scenario engine: owns the RAN model, the broker and the telemetry store,
// drives scripted tenants through loopback gateway sessions, and writes the
// run artifacts.
//
// Per slot, in order: broker clock advance (horizon renewal), scripted
// releases, scripted requests, broker tick with the resulting Itf-B pushes
// applied to the cells, scripted demand changes, scripted moves, the RAN
// scheduling step, telemetry ingest and SLA detection.
//
// Artifacts (in memory, or files under the output directory):
//   events.jsonl     lifecycle, config pushes, mobility, SLA and per-UE delivery
//   decisions.jsonl  HEADER line then the broker's decision log
//   charging.jsonl   one charging record per granted slice at finish
//   metrics.csv      slot,cell,slice,tenant,demanded,quota,delivered,deficit
//   summary.json     grants, rejections by reason, SLA totals
//   registry.json    final slice registry

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "slicebroker/broker.hpp"
#include "slicebroker/gateway.hpp"
#include "slicebroker/ran_sim.hpp"
#include "slicebroker/scenario.hpp"
#include "slicebroker/telemetry.hpp"

namespace slicebroker {

struct RunSummary {
  Slot slots_run = 0;
  std::vector<SliceGrant> grants;
  std::map<std::string, SliceTemplate> templates;  // by request_id
  std::map<std::string, std::int64_t> rejections;  // by reason
  std::int64_t sla_events = 0;
  std::int64_t deficit_prb = 0;
  std::int64_t handovers = 0;
  std::int64_t handover_failures = 0;
};

/// Contents of a decisions.jsonl artifact.
struct DecisionLogFile {
  BrokerConfig config;
  std::map<CellId, std::int64_t> capacities;
  std::vector<DecisionLogEntry> entries;
};

/// Throws DECODE_ERROR naming the offending line.
DecisionLogFile parse_decision_log(const std::string& text);

/// Rebuilds the broker a decision log describes.
Broker replay_decision_log(const DecisionLogFile& log);

class Engine : public TenantApi {
 public:
  /// Validates `config`; with `out_dir` the artifacts are written there,
  /// otherwise kept in memory (see artifact()). Throws CONFIG_INVALID or
  /// IO_ERROR.
  explicit Engine(ScenarioConfig config, std::optional<std::filesystem::path> out_dir = std::nullopt);
  ~Engine() override;

  /// Runs the remaining slots of the scenario horizon and finishes.
  void run();
  /// Executes slot next_slot(). Throws INVARIANT_VIOLATION when a safety or
  /// conservation check fails.
  void step();
  /// Writes charging, summary and registry artifacts and the closing decision
  /// log record. Idempotent.
  void finish();

  Slot next_slot() const noexcept { return next_slot_; }
  const ScenarioConfig& config() const noexcept { return config_; }
  const Broker& broker() const noexcept { return broker_; }
  const RanWorld& world() const noexcept { return world_; }
  RanWorld& world() noexcept { return world_; }
  const TelemetryStore& telemetry() const noexcept { return telemetry_; }
  Gateway& gateway() noexcept { return *gateway_; }
  const RunSummary& summary() const noexcept { return summary_; }

  /// In-memory artifact contents by file name ("metrics.csv", ...).
  std::string artifact(const std::string& name) const;

  /// Slice id granted for a scripted or wire request id.
  std::optional<SliceId> slice_for_request(const std::string& request_id) const;

  // TenantApi
  Decision submit(const SliceRequest& req) override;
  void release(const TenantId& tenant, const SliceId& slice) override;
  KpiReport report(const TenantId& tenant, Interval range) override;
  std::vector<UeContext> user_context(const TenantId& tenant, const std::vector<UeId>& ues) override;
  std::vector<ChargingRecord> charging(const TenantId& tenant, Interval range) override;

  /// Charging records of every granted slice (all tenants) over `range`.
  std::vector<ChargingRecord> charging_all(Interval range) const;

  static constexpr const char* kMetricsHeader = "slot,cell,slice,tenant,demanded,quota,delivered,deficit\n";

 private:
  struct Sink {
    std::unique_ptr<std::ostream> stream;
    std::ostringstream* memory = nullptr;
  };
  struct ScriptEvent {
    enum class Kind { RELEASE, REQUEST, DEMAND, MOVE } kind;
    std::size_t index;
  };

  std::ostream& sink(const std::string& name);
  void open_sinks();
  void log_event(Slot slot, const std::string& type, nlohmann::json body);
  void apply(const BrokerOutput& out);
  void flush_decisions();
  void on_decision(const Decision& d);
  LoopbackClient& client_for(const std::string& party);
  void check_invariants(const SlotOutcome& outcome);
  std::vector<UeModel> ue_list() const;
  ChargingRecord charge(const SliceRecord& rec, Interval range) const;

  ScenarioConfig config_;
  std::optional<std::filesystem::path> out_dir_;
  RanWorld world_;
  Broker broker_;
  TelemetryStore telemetry_;
  std::unique_ptr<Gateway> gateway_;
  std::map<std::string, std::unique_ptr<LoopbackClient>> clients_;
  EventQueue<ScriptEvent> script_;
  std::map<std::string, Sink> sinks_;
  std::map<std::string, SliceId> request_slices_;
  std::size_t decisions_written_ = 0;
  Slot next_slot_ = 0;
  bool finished_ = false;
  RunSummary summary_;
};

}  // namespace slicebroker
