#include "slicebroker/json_codec.hpp"

#include <algorithm>
#include <cmath>

namespace slicebroker::codec {

void fail(const std::string& path, const std::string& what) {
  throw Error(Errc::DECODE_ERROR, path + ": " + what);
}

void expect_object(const Json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) fail(path, "expected object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(path + "." + key, "unknown field");
    }
  }
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

std::int64_t read_int(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) {
    const auto u = j.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) fail(path, "integer out of range");
    return static_cast<std::int64_t>(u);
  }
  if (!j.is_number_integer()) fail(path, "expected integer");
  return j.get<std::int64_t>();
}

double read_number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected number");
  return j.get<double>();
}

std::string read_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected string");
  return j.get<std::string>();
}

bool read_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected boolean");
  return j.get<bool>();
}

namespace {

std::int64_t req_int(const Json& j, const char* key, const std::string& path) {
  return read_int(field(j, key, path), path + "." + key);
}
double req_number(const Json& j, const char* key, const std::string& path) {
  return read_number(field(j, key, path), path + "." + key);
}
std::string req_string(const Json& j, const char* key, const std::string& path) {
  return read_string(field(j, key, path), path + "." + key);
}
template <class E>
E req_enum(const Json& j, const char* key, const std::string& path) {
  return read_enum<E>(field(j, key, path), path + "." + key);
}
template <class T>
T req(const Json& j, const char* key, const std::string& path) {
  return read<T>(field(j, key, path), path + "." + key);
}

}  // namespace

// Domain ---------------------------------------------------------------------

Json to_json(const TenantId& v) { return {{"kind", write_enum(v.kind)}, {"id", v.value}}; }

void from_json(const Json& j, const std::string& path, TenantId& out) {
  expect_object(j, path, {"kind", "id"});
  out.kind = req_enum<TenantKind>(j, "kind", path);
  out.value = req_string(j, "id", path);
}

Json to_json(const Interval& v) { return {{"begin", v.begin}, {"end", v.end}}; }

void from_json(const Json& j, const std::string& path, Interval& out) {
  expect_object(j, path, {"begin", "end"});
  out.begin = req_int(j, "begin", path);
  out.end = req_int(j, "end", path);
}

Json to_json(const TimeSpec& v) {
  Json j{{"start_slot", v.start_slot}, {"duration_slots", v.duration_slots}};
  if (v.periodicity_slots) j["periodicity_slots"] = *v.periodicity_slots;
  if (v.window_end_slot) j["window_end_slot"] = *v.window_end_slot;
  return j;
}

void from_json(const Json& j, const std::string& path, TimeSpec& out) {
  expect_object(j, path, {"start_slot", "duration_slots", "periodicity_slots", "window_end_slot"});
  out.start_slot = req_int(j, "start_slot", path);
  out.duration_slots = req_int(j, "duration_slots", path);
  read_optional(j, "periodicity_slots", path, out.periodicity_slots);
  read_optional(j, "window_end_slot", path, out.window_end_slot);
}

Json to_json(const QosProfile& v) {
  return {{"bearer", write_enum(v.bearer)},
          {"priority", v.priority},
          {"delay_budget_ms", v.delay_budget_ms},
          {"jitter_ms", v.jitter_ms},
          {"loss_rate", v.loss_rate}};
}

void from_json(const Json& j, const std::string& path, QosProfile& out) {
  expect_object(j, path, {"bearer", "priority", "delay_budget_ms", "jitter_ms", "loss_rate"});
  out.bearer = req_enum<Bearer>(j, "bearer", path);
  const auto prio = req_int(j, "priority", path);
  if (prio < INT32_MIN || prio > INT32_MAX) fail(path + ".priority", "out of range");
  out.priority = static_cast<int>(prio);
  out.delay_budget_ms = req_number(j, "delay_budget_ms", path);
  out.jitter_ms = req_number(j, "jitter_ms", path);
  out.loss_rate = req_number(j, "loss_rate", path);
}

Json to_json(const ResourceSpec& v) {
  Json j{{"kind", write_enum(v.kind)}};
  if (v.prb_per_slot) j["prb_per_slot"] = *v.prb_per_slot;
  if (v.rate_mbps) j["rate_mbps"] = *v.rate_mbps;
  return j;
}

void from_json(const Json& j, const std::string& path, ResourceSpec& out) {
  expect_object(j, path, {"kind", "prb_per_slot", "rate_mbps"});
  out.kind = req_enum<ResourceKind>(j, "kind", path);
  read_optional(j, "prb_per_slot", path, out.prb_per_slot);
  read_optional(j, "rate_mbps", path, out.rate_mbps);
}

Json to_json(const ServiceInfo& v) {
  Json j{{"mobility", write_enum(v.mobility)},
         {"offloading_policy", write_enum(v.offloading_policy)},
         {"disruption_tolerance_slots", v.disruption_tolerance_slots}};
  if (v.volume_descriptor) {
    j["volume_descriptor"] = {{"file_size_mb", v.volume_descriptor->file_size_mb},
                              {"deadline_slot", v.volume_descriptor->deadline_slot}};
  }
  return j;
}

void from_json(const Json& j, const std::string& path, ServiceInfo& out) {
  expect_object(j, path, {"mobility", "offloading_policy", "disruption_tolerance_slots", "volume_descriptor"});
  out.mobility = req_enum<Mobility>(j, "mobility", path);
  out.offloading_policy = req_enum<OffloadingPolicy>(j, "offloading_policy", path);
  out.disruption_tolerance_slots = req_int(j, "disruption_tolerance_slots", path);
  if (j.contains("volume_descriptor")) {
    const std::string sub = path + ".volume_descriptor";
    const Json& v = j.at("volume_descriptor");
    expect_object(v, sub, {"file_size_mb", "deadline_slot"});
    out.volume_descriptor = VolumeDescriptor{req_number(v, "file_size_mb", sub), req_int(v, "deadline_slot", sub)};
  }
}

Json to_json(const SliceRequest& v) {
  Json j{{"request_id", v.request_id},  {"tenant", to_json(v.tenant)}, {"resources", to_json(v.resources)},
         {"time", to_json(v.time)},     {"qos", to_json(v.qos)},       {"service", to_json(v.service)}};
  if (v.cells) j["cells"] = write_array(*v.cells);
  if (v.slice_template) j["template"] = write_enum(*v.slice_template);
  return j;
}

void from_json(const Json& j, const std::string& path, SliceRequest& out) {
  expect_object(j, path, {"request_id", "tenant", "resources", "time", "qos", "service", "cells", "template"});
  out.request_id = req_string(j, "request_id", path);
  out.tenant = req<TenantId>(j, "tenant", path);
  out.resources = req<ResourceSpec>(j, "resources", path);
  out.time = req<TimeSpec>(j, "time", path);
  out.qos = req<QosProfile>(j, "qos", path);
  out.service = req<ServiceInfo>(j, "service", path);
  if (j.contains("cells")) out.cells = read_array<std::string>(j.at("cells"), path + ".cells");
  read_optional(j, "template", path, out.slice_template);
}

Json to_json(const SliceGrant& v) {
  Json cells = Json::object();
  for (const auto& [c, prb] : v.per_cell_prb) cells[c] = prb;
  return {{"slice_id", v.slice_id},     {"request_id", v.request_id}, {"tenant", to_json(v.tenant)},
          {"per_cell_prb", cells},      {"time", to_json(v.time)},    {"qos", to_json(v.qos)},
          {"mode", write_enum(v.mode)}};
}

void from_json(const Json& j, const std::string& path, SliceGrant& out) {
  expect_object(j, path, {"slice_id", "request_id", "tenant", "per_cell_prb", "time", "qos", "mode"});
  out.slice_id = req_string(j, "slice_id", path);
  out.request_id = req_string(j, "request_id", path);
  out.tenant = req<TenantId>(j, "tenant", path);
  const Json& cells = field(j, "per_cell_prb", path);
  if (!cells.is_object()) fail(path + ".per_cell_prb", "expected object");
  out.per_cell_prb.clear();
  for (const auto& [c, prb] : cells.items()) out.per_cell_prb[c] = read_int(prb, path + ".per_cell_prb." + c);
  out.time = req<TimeSpec>(j, "time", path);
  out.qos = req<QosProfile>(j, "qos", path);
  out.mode = req_enum<SchedulingMode>(j, "mode", path);
}

Json to_json(const Decision& v) {
  Json j{{"request_id", v.request_id}, {"outcome", write_enum(v.outcome)}};
  if (v.grant) j["grant"] = to_json(*v.grant);
  if (v.reason) j["reason"] = write_enum(*v.reason);
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

void from_json(const Json& j, const std::string& path, Decision& out) {
  expect_object(j, path, {"request_id", "outcome", "grant", "reason", "detail"});
  out.request_id = req_string(j, "request_id", path);
  out.outcome = req_enum<Decision::Outcome>(j, "outcome", path);
  read_optional(j, "grant", path, out.grant);
  read_optional(j, "reason", path, out.reason);
  out.detail = j.contains("detail") ? read_string(j.at("detail"), path + ".detail") : std::string{};
  if (out.is_granted() != out.grant.has_value() || out.is_granted() == out.reason.has_value()) {
    fail(path, "GRANTED must carry a grant and REJECTED a reason");
  }
}

// Telemetry ------------------------------------------------------------------

Json to_json(const MeasurementRecord& v) {
  Json j{{"slot", v.slot},
         {"cell", v.cell_id},
         {"demanded", v.demanded_prb},
         {"quota", v.quota_prb},
         {"delivered", v.delivered_prb},
         {"deficit", v.deficit_prb}};
  if (v.slice_id) j["slice_id"] = *v.slice_id;
  if (v.tenant) j["tenant"] = to_json(*v.tenant);
  return j;
}

void from_json(const Json& j, const std::string& path, MeasurementRecord& out) {
  expect_object(j, path, {"slot", "cell", "demanded", "quota", "delivered", "deficit", "slice_id", "tenant"});
  out.slot = req_int(j, "slot", path);
  out.cell_id = req_string(j, "cell", path);
  out.demanded_prb = req_int(j, "demanded", path);
  out.quota_prb = req_int(j, "quota", path);
  out.delivered_prb = req_int(j, "delivered", path);
  out.deficit_prb = req_int(j, "deficit", path);
  read_optional(j, "slice_id", path, out.slice_id);
  read_optional(j, "tenant", path, out.tenant);
}

Json to_json(const SliceKpi& v) {
  return {{"slice_id", v.slice_id},   {"demanded", v.demanded_prb},  {"delivered", v.delivered_prb},
          {"deficit", v.deficit_prb}, {"sla_events", v.sla_events}, {"handovers", v.handovers}};
}

void from_json(const Json& j, const std::string& path, SliceKpi& out) {
  expect_object(j, path, {"slice_id", "demanded", "delivered", "deficit", "sla_events", "handovers"});
  out.slice_id = req_string(j, "slice_id", path);
  out.demanded_prb = req_int(j, "demanded", path);
  out.delivered_prb = req_int(j, "delivered", path);
  out.deficit_prb = req_int(j, "deficit", path);
  out.sla_events = req_int(j, "sla_events", path);
  out.handovers = req_int(j, "handovers", path);
}

Json to_json(const KpiReport& v) {
  return {{"tenant", to_json(v.tenant)},
          {"range", to_json(v.range)},
          {"slices", write_array(v.slices)},
          {"records", write_array(v.records)}};
}

void from_json(const Json& j, const std::string& path, KpiReport& out) {
  expect_object(j, path, {"tenant", "range", "slices", "records"});
  out.tenant = req<TenantId>(j, "tenant", path);
  out.range = req<Interval>(j, "range", path);
  out.slices = read_array<SliceKpi>(field(j, "slices", path), path + ".slices");
  out.records = read_array<MeasurementRecord>(field(j, "records", path), path + ".records");
}

// Configuration and lifecycle ------------------------------------------------

Json to_json(const ConfigItfN& v) {
  return {{"action", write_enum(v.action)},
          {"slice_id", v.slice_id},
          {"tenant", to_json(v.tenant)},
          {"cells", write_array(v.cells)},
          {"mode", write_enum(v.mode)}};
}

void from_json(const Json& j, const std::string& path, ConfigItfN& out) {
  expect_object(j, path, {"action", "slice_id", "tenant", "cells", "mode"});
  out.action = req_enum<ConfigAction>(j, "action", path);
  out.slice_id = req_string(j, "slice_id", path);
  out.tenant = req<TenantId>(j, "tenant", path);
  out.cells = read_array<std::string>(field(j, "cells", path), path + ".cells");
  out.mode = req_enum<SchedulingMode>(j, "mode", path);
}

Json to_json(const ConfigItfB& v) {
  return {{"action", write_enum(v.action)},
          {"cell", v.cell_id},
          {"slice_id", v.slice_id},
          {"tenant", to_json(v.tenant)},
          {"prb_per_slot", v.prb_per_slot},
          {"mode", write_enum(v.mode)},
          {"bearer", write_enum(v.bearer)},
          {"priority", v.priority},
          {"admission_seq", v.admission_seq}};
}

void from_json(const Json& j, const std::string& path, ConfigItfB& out) {
  expect_object(j, path,
                {"action", "cell", "slice_id", "tenant", "prb_per_slot", "mode", "bearer", "priority", "admission_seq"});
  out.action = req_enum<ConfigAction>(j, "action", path);
  out.cell_id = req_string(j, "cell", path);
  out.slice_id = req_string(j, "slice_id", path);
  out.tenant = req<TenantId>(j, "tenant", path);
  out.prb_per_slot = req_int(j, "prb_per_slot", path);
  out.mode = req_enum<SchedulingMode>(j, "mode", path);
  out.bearer = req_enum<Bearer>(j, "bearer", path);
  out.priority = static_cast<int>(req_int(j, "priority", path));
  const auto seq = req_int(j, "admission_seq", path);
  if (seq < 0) fail(path + ".admission_seq", "negative");
  out.admission_seq = static_cast<std::uint64_t>(seq);
}

Json to_json(const LifecycleEvent& v) {
  return {{"slot", v.slot},
          {"slice_id", v.slice_id},
          {"tenant", to_json(v.tenant)},
          {"kind", write_enum(v.kind)},
          {"state", write_enum(v.new_state)}};
}

void from_json(const Json& j, const std::string& path, LifecycleEvent& out) {
  expect_object(j, path, {"slot", "slice_id", "tenant", "kind", "state"});
  out.slot = req_int(j, "slot", path);
  out.slice_id = req_string(j, "slice_id", path);
  out.tenant = req<TenantId>(j, "tenant", path);
  out.kind = req_enum<LifecycleKind>(j, "kind", path);
  out.new_state = req_enum<SliceState>(j, "state", path);
}

Json to_json(const DecisionLogEntry& v) {
  Json j{{"kind", write_enum(v.kind)}, {"slot", v.slot}, {"seq", v.seq}};
  if (v.request) j["request"] = to_json(*v.request);
  if (v.decision) j["decision"] = to_json(*v.decision);
  if (v.slice_id) j["slice_id"] = *v.slice_id;
  return j;
}

void from_json(const Json& j, const std::string& path, DecisionLogEntry& out) {
  expect_object(j, path, {"kind", "slot", "seq", "request", "decision", "slice_id"});
  out.kind = req_enum<DecisionLogEntry::Kind>(j, "kind", path);
  out.slot = req_int(j, "slot", path);
  out.seq = static_cast<std::uint64_t>(req_int(j, "seq", path));
  read_optional(j, "request", path, out.request);
  read_optional(j, "decision", path, out.decision);
  read_optional(j, "slice_id", path, out.slice_id);
}

Json to_json(const EfficiencyTable& v) {
  Json j = Json::object();
  for (const auto& [m, name] : EnumNames<Mobility>::entries) j[std::string(name)] = v.of(m);
  return j;
}

void from_json(const Json& j, const std::string& path, EfficiencyTable& out) {
  expect_object(j, path, {"STATIONARY", "LOW", "MEDIUM", "HIGH"});
  for (const auto& [m, name] : EnumNames<Mobility>::entries) {
    const std::string key(name);
    if (!j.contains(key)) continue;
    const double e = read_number(j.at(key), path + "." + key);
    if (!(std::isfinite(e) && e > 0)) fail(path + "." + key, "efficiency must be > 0");
    out.of(m) = e;
  }
}

Json to_json(const SliceRegistry& v) {
  Json slices = Json::object();
  for (const auto& [id, rec] : v.slices) {
    slices[id] = {{"grant", to_json(rec.grant)},
                  {"state", write_enum(rec.state)},
                  {"admission_seq", rec.admission_seq},
                  {"admitted_at", rec.admitted_at},
                  {"next_recurrence", rec.next_recurrence},
                  {"open_ended", rec.open_ended},
                  {"active_spans", write_array(rec.active_spans)}};
  }
  // Run-length encoded [value, count] pairs keep long horizons small.
  Json loads = Json::object();
  for (const auto& [cell, load] : v.committed.loads()) {
    Json runs = Json::array();
    for (std::size_t i = 0; i < load.size();) {
      std::size_t k = i;
      while (k < load.size() && load[k] == load[i]) ++k;
      runs.push_back({load[i], k - i});
      i = k;
    }
    loads[cell] = std::move(runs);
  }
  Json ids = Json::array();
  for (const auto& id : v.request_ids) ids.push_back(id);
  return {{"slices", std::move(slices)},
          {"committed", {{"base", v.committed.base()}, {"end", v.committed.end()}, {"load", std::move(loads)}}},
          {"request_ids", std::move(ids)},
          {"next_seq", v.next_seq}};
}

}  // namespace slicebroker::codec
