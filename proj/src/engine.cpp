#include "slicebroker/engine.hpp"

#include <algorithm>
#include <mutex>

#include "slicebroker/json_codec.hpp"
#include "slicebroker/validate.hpp"

namespace slicebroker {
namespace {

using codec::Json;

const char* const kSinks[] = {"events.jsonl", "decisions.jsonl", "charging.jsonl", "metrics.csv", "summary.json",
                              "registry.json"};

[[noreturn]] void violation(const std::string& what) { throw Error(Errc::INVARIANT_VIOLATION, what); }

Json charging_json(const ChargingRecord& r) {
  return {{"slice_id", r.slice_id},
          {"tenant", codec::to_json(r.tenant)},
          {"prb_slots_consumed", r.prb_slots_consumed},
          {"qos_multiplier", r.qos_multiplier},
          {"amount", r.amount}};
}

}  // namespace

Engine::Engine(ScenarioConfig config, std::optional<std::filesystem::path> out_dir)
    : config_((validate_scenario(config), std::move(config))),
      out_dir_(std::move(out_dir)),
      world_(config_.topology, RanConfig{config_.broker.spare_policy, config_.broker.efficiency, 10},
             BackgroundGenerator(config_.seed, config_.slots_per_day, config_.background,
                                 nominal_capacities(config_.topology))),
      broker_(broker_config(config_), nominal_capacities(config_.topology)),
      telemetry_(TelemetryConfig{config_.slots_per_day, config_.broker.forecast_window,
                                 config_.broker.default_background_fraction},
                 nominal_capacities(config_.topology)) {
  open_sinks();
  gateway_ = std::make_unique<Gateway>(*this, config_.parties);
  for (const auto& p : config_.parties) telemetry_.register_tenant(p.tenant);

  for (const auto& u : config_.ues) {
    telemetry_.register_tenant(u.ue.owner);
    world_.add_ue(u.ue);
    if (u.ue.serving_cell) {
      log_event(0, "ATTACH",
                {{"ue", u.ue.ue_id},
                 {"cell", *u.ue.serving_cell},
                 {"home_plmn", u.ue.home_plmn},
                 {"core_endpoint", core_endpoint_for(world_.topology(), u.ue.home_plmn)}});
    }
  }

  for (std::size_t i = 0; i < config_.releases.size(); ++i) {
    script_.push(config_.releases[i].slot, 0, {ScriptEvent::Kind::RELEASE, i});
  }
  for (std::size_t i = 0; i < config_.requests.size(); ++i) {
    script_.push(config_.requests[i].slot, 1, {ScriptEvent::Kind::REQUEST, i});
  }
  for (std::size_t i = 0; i < config_.demands.size(); ++i) {
    script_.push(config_.demands[i].slot, 2, {ScriptEvent::Kind::DEMAND, i});
  }
  for (std::size_t i = 0; i < config_.moves.size(); ++i) {
    script_.push(config_.moves[i].slot, 3, {ScriptEvent::Kind::MOVE, i});
  }

  sink("metrics.csv") << kMetricsHeader;
  const BrokerConfig bc = broker_config(config_);
  Json caps = Json::object();
  for (const auto& [c, cap] : nominal_capacities(config_.topology)) caps[c] = cap;
  sink("decisions.jsonl") << Json{{"kind", "HEADER"},
                                  {"schema", kScenarioSchema},
                                  {"broker",
                                   {{"horizon_slots", bc.horizon_slots},
                                    {"slots_per_day", bc.slots_per_day},
                                    {"mode", codec::write_enum(bc.mode)},
                                    {"efficiency", codec::to_json(bc.efficiency)},
                                    {"slot_seconds", bc.slot_seconds}}},
                                  {"capacities", caps}}
                                 .dump()
                          << "\n";
}

Engine::~Engine() = default;

void Engine::open_sinks() {
  if (out_dir_) {
    std::error_code ec;
    std::filesystem::create_directories(*out_dir_, ec);
    if (ec) throw Error(Errc::IO_ERROR, "cannot create " + out_dir_->string() + ": " + ec.message());
  }
  for (const char* name : kSinks) {
    Sink s;
    if (out_dir_) {
      auto f = std::make_unique<std::ofstream>(*out_dir_ / name, std::ios::out | std::ios::trunc | std::ios::binary);
      if (!*f) throw Error(Errc::IO_ERROR, "cannot write " + (*out_dir_ / name).string());
      s.stream = std::move(f);
    } else {
      auto m = std::make_unique<std::ostringstream>();
      s.memory = m.get();
      s.stream = std::move(m);
    }
    sinks_.emplace(name, std::move(s));
  }
}

std::ostream& Engine::sink(const std::string& name) { return *sinks_.at(name).stream; }

std::string Engine::artifact(const std::string& name) const {
  const Sink& s = sinks_.at(name);
  if (s.memory) return s.memory->str();
  s.stream->flush();
  std::ifstream in(*out_dir_ / name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Engine::log_event(Slot slot, const std::string& type, Json body) {
  sink("events.jsonl") << Json{{"slot", slot}, {"type", type}, {"body", std::move(body)}}.dump() << "\n";
}

void Engine::apply(const BrokerOutput& out) {
  for (const auto& e : out.events) log_event(e.slot, "LIFECYCLE", codec::to_json(e));
  const Slot slot = broker_.clock();
  for (const auto& push : out.pushes) {
    log_event(slot, "CONFIG_ITFN", codec::to_json(push.itf_n));
    for (const auto& b : push.itf_b) {
      log_event(slot, "CONFIG_ITFB", codec::to_json(b));
      world_.configure(b);
    }
  }
}

void Engine::flush_decisions() {
  const auto& log = broker_.decision_log();
  auto& out = sink("decisions.jsonl");
  for (; decisions_written_ < log.size(); ++decisions_written_) {
    out << codec::canonical(codec::to_json(log[decisions_written_])) << "\n";
  }
}

std::vector<UeModel> Engine::ue_list() const {
  std::vector<UeModel> out;
  out.reserve(world_.ues().size());
  for (const auto& [id, ue] : world_.ues()) out.push_back(ue);
  return out;
}

std::optional<SliceId> Engine::slice_for_request(const std::string& request_id) const {
  auto it = request_slices_.find(request_id);
  if (it == request_slices_.end()) return std::nullopt;
  return it->second;
}

LoopbackClient& Engine::client_for(const std::string& party) {
  auto it = clients_.find(party);
  if (it != clients_.end()) return *it->second;
  const auto cred = std::find_if(config_.parties.begin(), config_.parties.end(),
                                 [&](const Credentials& c) { return c.party == party; });
  if (cred == config_.parties.end()) throw Error(Errc::CONFIG_INVALID, "unknown party " + party);
  auto client = std::make_unique<LoopbackClient>(*gateway_);
  client->authenticate(cred->party, cred->secret);
  return *clients_.emplace(party, std::move(client)).first->second;
}

// TenantApi -----------------------------------------------------------------

Decision Engine::submit(const SliceRequest& req) {
  if (broker_.clock() < next_slot_) apply(broker_.advance_to(next_slot_));
  Decision d;
  try {
    const ValidatedRequest v = validate_request(req, world_.topology());
    d = broker_.submit(
        v, world_.topology(), ue_list(),
        [this](const CellId& cell, Slot sod) { return telemetry_.forecast_background(cell, sod); });
  } catch (const Error& e) {
    d = broker_.reject_invalid(req, std::string(to_string(e.code())) + ": " + e.detail());
  }
  on_decision(d);
  if (d.is_granted() && req.slice_template) summary_.templates[req.request_id] = *req.slice_template;
  flush_decisions();
  return d;
}

void Engine::on_decision(const Decision& d) {
  log_event(broker_.clock(), "DECISION", codec::to_json(d));
  if (!d.is_granted()) {
    summary_.rejections[std::string(enum_name(*d.reason))] += 1;
    return;
  }
  const SliceGrant& g = *d.grant;
  request_slices_[g.request_id] = g.slice_id;
  summary_.grants.push_back(g);
  for (const auto& u : config_.ues) {
    if (u.request_id == g.request_id && u.ue.owner == g.tenant) world_.bind_slice(u.ue.ue_id, g.slice_id);
  }
}

void Engine::release(const TenantId& tenant, const SliceId& slice) {
  const auto& slices = broker_.registry().slices;
  auto it = slices.find(slice);
  // Foreign slices are indistinguishable from nonexistent ones.
  if (it == slices.end() || it->second.grant.tenant != tenant) throw Error(Errc::UNKNOWN_SLICE, slice);
  if (broker_.clock() < next_slot_) apply(broker_.advance_to(next_slot_));
  apply(broker_.release(slice));
  flush_decisions();
}

KpiReport Engine::report(const TenantId& tenant, Interval range) { return telemetry_.build_tenant_report(tenant, range); }

std::vector<UeContext> Engine::user_context(const TenantId& tenant, const std::vector<UeId>& ues) {
  std::vector<UeId> ids = ues;
  if (ids.empty()) {
    for (const auto& [id, ue] : world_.ues()) {
      if (ue.owner == tenant) ids.push_back(id);
    }
  }
  std::vector<UeContext> out;
  for (const auto& id : ids) {
    auto it = world_.ues().find(id);
    // Unknown and foreign UEs get the same answer.
    if (it == world_.ues().end() || it->second.owner != tenant) {
      throw Error(Errc::SCOPE_VIOLATION, "UE " + id + " is not visible to " + tenant.str());
    }
    out.push_back({id, it->second.serving_cell, it->second.mobility, world_.average_rate_mbps(id)});
  }
  return out;
}

ChargingRecord Engine::charge(const SliceRecord& rec, Interval range) const {
  ChargingRecord r;
  r.slice_id = rec.grant.slice_id;
  r.tenant = rec.grant.tenant;
  r.prb_slots_consumed = broker_.prb_slots_active(rec.grant.slice_id, range);
  r.qos_multiplier = config_.charging.multiplier(rec.grant.qos.bearer);
  r.amount = static_cast<double>(r.prb_slots_consumed) * r.qos_multiplier;
  return r;
}

std::vector<ChargingRecord> Engine::charging(const TenantId& tenant, Interval range) {
  std::vector<ChargingRecord> out;
  for (const auto& [id, rec] : broker_.registry().slices) {
    if (rec.grant.tenant == tenant) out.push_back(charge(rec, range));
  }
  return out;
}

std::vector<ChargingRecord> Engine::charging_all(Interval range) const {
  std::vector<ChargingRecord> out;
  for (const auto& [id, rec] : broker_.registry().slices) out.push_back(charge(rec, range));
  return out;
}

// Event loop ----------------------------------------------------------------

void Engine::step() {
  if (finished_) throw Error(Errc::INVARIANT_VIOLATION, "step after finish");
  const Slot t = next_slot_;
  std::mutex& mu = gateway_->mutex();
  {
    std::lock_guard lock(mu);
    apply(broker_.advance_to(t));
  }

  const std::vector<ScriptEvent> due = script_.pop_due(t);
  auto report_error = [&](const Message& reply, const std::string& party) {
    if (const auto* err = std::get_if<ErrorMsg>(&reply.body)) {
      std::lock_guard lock(mu);
      log_event(t, "REQUEST_ERROR",
                {{"party", party}, {"code", std::string(to_string(err->code))}, {"message", err->message}});
    }
  };
  // Tenant traffic goes through the gateway, which takes the lock itself.
  for (const auto& ev : due) {
    if (ev.kind == ScriptEvent::Kind::RELEASE) {
      const auto& r = config_.releases[ev.index];
      std::optional<SliceId> slice;
      {
        std::lock_guard lock(mu);
        slice = slice_for_request(r.request_id);
        if (!slice) log_event(t, "RELEASE_SKIPPED", {{"party", r.party}, {"request_id", r.request_id}});
      }
      if (slice) report_error(client_for(r.party).call(SliceRelease{*slice, false}), r.party);
    } else if (ev.kind == ScriptEvent::Kind::REQUEST) {
      const auto& r = config_.requests[ev.index];
      report_error(client_for(r.party).call(r.request), r.party);
    }
  }

  std::lock_guard lock(mu);
  apply(broker_.tick(t));

  for (const auto& ev : due) {
    if (ev.kind == ScriptEvent::Kind::DEMAND) {
      const auto& d = config_.demands[ev.index];
      world_.set_demand(d.ue, d.prb);
    } else if (ev.kind == ScriptEvent::Kind::MOVE) {
      const auto& m = config_.moves[ev.index];
      const UeModel& ue = world_.ue(m.ue);
      try {
        if (ue.serving_cell) {
          const HandoverResult h = world_.handover(m.ue, m.cell);
          log_event(t, "HANDOVER",
                    {{"ue", m.ue},
                     {"from", h.source_cell},
                     {"to", h.target_cell},
                     {"home_plmn", ue.home_plmn},
                     {"core_endpoint", h.core_endpoint}});
          telemetry_.record_handover(t, ue.owner, ue.slice_id);
          summary_.handovers += 1;
        } else {
          const AttachResult a = world_.attach(m.ue, m.cell);
          log_event(t, "ATTACH",
                    {{"ue", m.ue}, {"cell", m.cell}, {"home_plmn", ue.home_plmn}, {"core_endpoint", a.core_endpoint}});
        }
      } catch (const Error& e) {
        log_event(t, "HANDOVER_FAILED",
                  {{"ue", m.ue}, {"cell", m.cell}, {"code", std::string(to_string(e.code()))}, {"message", e.detail()}});
        summary_.handover_failures += 1;
      }
    }
  }

  const SlotOutcome outcome = world_.step(t);
  check_invariants(outcome);
  telemetry_.ingest(outcome.records);

  for (const auto& cell : outcome.cells) {
    for (const auto& d : cell.overcommit) {
      log_event(t, "OVERCOMMIT", {{"cell", cell.cell_id}, {"slice_id", d.slice_id}, {"deficit", d.deficit_prb}});
    }
    for (const auto& s : cell.slices) {
      for (const auto& [ue, prb] : s.per_ue_prb) {
        log_event(t, "UE_DELIVERY", {{"ue", ue}, {"cell", cell.cell_id}, {"slice_id", s.slice_id}, {"prb", prb}});
      }
    }
  }
  for (const auto& ev : detect_sla_violations(outcome.records)) {
    log_event(t, "SLA_VIOLATION",
              {{"cell", ev.cell_id},
               {"slice_id", ev.slice_id},
               {"tenant", codec::to_json(ev.tenant)},
               {"deficit", ev.deficit_prb}});
    summary_.sla_events += 1;
    summary_.deficit_prb += ev.deficit_prb;
  }

  auto& csv = sink("metrics.csv");
  for (const auto& r : outcome.records) {
    csv << r.slot << ',' << r.cell_id << ',' << (r.slice_id ? *r.slice_id : std::string("BACKGROUND")) << ','
        << (r.tenant ? r.tenant->str() : std::string()) << ',' << r.demanded_prb << ',' << r.quota_prb << ','
        << r.delivered_prb << ',' << r.deficit_prb << '\n';
  }

  next_slot_ = t + 1;
  summary_.slots_run = next_slot_;
}

void Engine::check_invariants(const SlotOutcome& outcome) {
  const auto& table = broker_.registry().committed;
  for (const auto& cell : outcome.cells) {
    if (cell.total_delivered() > cell.effective_capacity) {
      violation("cell " + cell.cell_id + " slot " + std::to_string(outcome.slot) + " delivered " +
                std::to_string(cell.total_delivered()) + " > capacity " + std::to_string(cell.effective_capacity));
    }
    if (table.at(cell.cell_id, outcome.slot) > table.capacity(cell.cell_id)) {
      violation("cell " + cell.cell_id + " slot " + std::to_string(outcome.slot) + " overcommitted");
    }
  }
  for (const auto& r : outcome.records) {
    if (r.deficit_prb < 0 || r.delivered_prb < 0 || r.delivered_prb > r.quota_prb) {
      violation("inconsistent measurement on " + r.cell_id + " slot " + std::to_string(r.slot));
    }
  }
}

void Engine::run() {
  while (next_slot_ < config_.horizon_slots) step();
  finish();
}

void Engine::finish() {
  if (finished_) return;
  std::lock_guard lock(gateway_->mutex());
  finished_ = true;
  broker_.log_clock();
  flush_decisions();

  const Interval all{0, next_slot_};
  for (const auto& r : charging_all(all)) sink("charging.jsonl") << codec::canonical(charging_json(r)) << "\n";

  if (!broker_.within_capacity()) violation("commitment table exceeds capacity");

  Json grants = Json::array();
  for (const auto& g : summary_.grants) {
    Json e{{"slice_id", g.slice_id},
           {"request_id", g.request_id},
           {"tenant", g.tenant.str()},
           {"cells", g.per_cell_prb},
           {"mode", codec::write_enum(g.mode)}};
    auto t = summary_.templates.find(g.request_id);
    if (t != summary_.templates.end()) e["template"] = codec::write_enum(t->second);
    grants.push_back(std::move(e));
  }
  Json summary{{"name", config_.name},
               {"seed", config_.seed},
               {"slots_run", summary_.slots_run},
               {"grants", grants},
               {"rejections", summary_.rejections},
               {"sla_events", summary_.sla_events},
               {"deficit_prb", summary_.deficit_prb},
               {"handovers", summary_.handovers},
               {"handover_failures", summary_.handover_failures}};
  sink("summary.json") << summary.dump(2) << "\n";
  sink("registry.json") << codec::canonical(codec::to_json(broker_.registry())) << "\n";

  for (auto& [name, s] : sinks_) {
    s.stream->flush();
    if (!*s.stream) throw Error(Errc::IO_ERROR, "write failed: " + name);
  }
}

}  // namespace slicebroker

namespace slicebroker {

DecisionLogFile parse_decision_log(const std::string& text) {
  DecisionLogFile out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw Error(Errc::DECODE_ERROR, where + ": " + e.what());
    }
    if (!header) {
      codec::expect_object(j, where, {"kind", "schema", "broker", "capacities"});
      if (codec::read_string(codec::field(j, "kind", where), where + ".kind") != "HEADER") {
        codec::fail(where, "expected HEADER record");
      }
      const Json& b = codec::field(j, "broker", where);
      const std::string bp = where + ".broker";
      codec::expect_object(b, bp, {"horizon_slots", "slots_per_day", "mode", "efficiency", "slot_seconds"});
      out.config.horizon_slots = codec::read_int(codec::field(b, "horizon_slots", bp), bp + ".horizon_slots");
      out.config.slots_per_day = codec::read_int(codec::field(b, "slots_per_day", bp), bp + ".slots_per_day");
      out.config.mode = codec::read_enum<SchedulingMode>(codec::field(b, "mode", bp), bp + ".mode");
      codec::from_json(codec::field(b, "efficiency", bp), bp + ".efficiency", out.config.efficiency);
      out.config.slot_seconds = codec::read_number(codec::field(b, "slot_seconds", bp), bp + ".slot_seconds");
      const Json& caps = codec::field(j, "capacities", where);
      if (!caps.is_object()) codec::fail(where + ".capacities", "expected object");
      for (const auto& [cell, cap] : caps.items()) {
        out.capacities[cell] = codec::read_int(cap, where + ".capacities." + cell);
      }
      header = true;
      continue;
    }
    out.entries.push_back(codec::read<DecisionLogEntry>(j, where));
  }
  if (!header) throw Error(Errc::DECODE_ERROR, "missing HEADER record");
  return out;
}

Broker replay_decision_log(const DecisionLogFile& log) {
  return Broker::replay(log.config, log.capacities, log.entries);
}

}  // namespace slicebroker
