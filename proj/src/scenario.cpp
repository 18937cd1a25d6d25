#include "slicebroker/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "slicebroker/json_codec.hpp"
#include "slicebroker/validate.hpp"

namespace slicebroker {
namespace {

using codec::Json;

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(Errc::CONFIG_INVALID, path + ": " + what);
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::int64_t opt_int(const Json& j, const char* key, const std::string& path, std::int64_t def) {
  return j.contains(key) ? codec::read_int(j.at(key), path + "." + key) : def;
}
double opt_number(const Json& j, const char* key, const std::string& path, double def) {
  return j.contains(key) ? codec::read_number(j.at(key), path + "." + key) : def;
}
std::string opt_string(const Json& j, const char* key, const std::string& path, std::string def = {}) {
  return j.contains(key) ? codec::read_string(j.at(key), path + "." + key) : def;
}
template <class E>
E opt_enum(const Json& j, const char* key, const std::string& path, E def) {
  return j.contains(key) ? codec::read_enum<E>(j.at(key), path + "." + key) : def;
}
const Json& opt_array(const Json& j, const char* key, const std::string& path) {
  static const Json empty = Json::array();
  if (!j.contains(key)) return empty;
  const Json& a = j.at(key);
  if (!a.is_array()) codec::fail(path + "." + key, "expected array");
  return a;
}
std::vector<std::string> opt_strings(const Json& j, const char* key, const std::string& path) {
  return j.contains(key) ? codec::read_array<std::string>(j.at(key), path + "." + key) : std::vector<std::string>{};
}

Topology read_topology(const Json& j, const std::string& p) {
  codec::expect_object(j, p, {"archetype", "sharing_mode", "cells", "core_endpoints", "shared_endpoint"});
  Topology t;
  t.archetype = opt_enum(j, "archetype", p, Archetype::CUSTOM);
  t.sharing_mode = opt_enum(j, "sharing_mode", p, SharingMode::MOCN);
  const Json& cells = opt_array(j, "cells", p);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string cp = at(p + ".cells", i);
    const Json& c = cells[i];
    codec::expect_object(c, cp, {"id", "capacity_prb", "plmns", "neighbors", "outages"});
    CellModel m;
    m.cell_id = codec::read_string(codec::field(c, "id", cp), cp + ".id");
    m.capacity_prb_per_slot = opt_int(c, "capacity_prb", cp, 100);
    m.broadcast_plmns = opt_strings(c, "plmns", cp);
    m.neighbors = opt_strings(c, "neighbors", cp);
    const Json& outages = opt_array(c, "outages", cp);
    for (std::size_t k = 0; k < outages.size(); ++k) {
      const std::string op = at(cp + ".outages", k);
      codec::expect_object(outages[k], op, {"begin", "end", "capacity_prb"});
      m.outages.push_back({codec::read_int(codec::field(outages[k], "begin", op), op + ".begin"),
                           codec::read_int(codec::field(outages[k], "end", op), op + ".end"),
                           codec::read_int(codec::field(outages[k], "capacity_prb", op), op + ".capacity_prb")});
    }
    const CellId id = m.cell_id;
    if (!t.cells.emplace(id, std::move(m)).second) invalid(cp + ".id", "duplicate cell '" + id + "'");
  }
  if (j.contains("core_endpoints")) {
    const Json& eps = j.at("core_endpoints");
    if (!eps.is_object()) codec::fail(p + ".core_endpoints", "expected object");
    for (const auto& [plmn, ep] : eps.items()) {
      t.core_endpoints[plmn] = codec::read_string(ep, p + ".core_endpoints." + plmn);
    }
  }
  if (j.contains("shared_endpoint")) t.shared_endpoint = codec::read_string(j.at("shared_endpoint"), p + ".shared_endpoint");
  return t;
}

Json write_topology(const Topology& t) {
  Json cells = Json::array();
  for (const auto& [id, c] : t.cells) {
    Json outages = Json::array();
    for (const auto& o : c.outages) outages.push_back({{"begin", o.begin}, {"end", o.end}, {"capacity_prb", o.capacity_prb}});
    cells.push_back({{"id", id},
                     {"capacity_prb", c.capacity_prb_per_slot},
                     {"plmns", c.broadcast_plmns},
                     {"neighbors", c.neighbors},
                     {"outages", outages}});
  }
  Json j{{"archetype", codec::write_enum(t.archetype)},
         {"sharing_mode", codec::write_enum(t.sharing_mode)},
         {"cells", cells},
         {"core_endpoints", t.core_endpoints}};
  if (t.shared_endpoint) j["shared_endpoint"] = *t.shared_endpoint;
  return j;
}

BrokerSettings read_broker(const Json& j, const std::string& p) {
  codec::expect_object(j, p, {"commit_horizon_slots", "mode", "spare_policy", "efficiency", "forecast_window",
                              "default_background_fraction"});
  BrokerSettings b;
  b.commit_horizon_slots = opt_int(j, "commit_horizon_slots", p, b.commit_horizon_slots);
  b.mode = opt_enum(j, "mode", p, b.mode);
  b.spare_policy = opt_enum(j, "spare_policy", p, b.spare_policy);
  if (j.contains("efficiency")) codec::from_json(j.at("efficiency"), p + ".efficiency", b.efficiency);
  const auto window = opt_int(j, "forecast_window", p, b.forecast_window);
  if (window < 1 || window > 1000) invalid(p + ".forecast_window", "must be in [1, 1000]");
  b.forecast_window = static_cast<int>(window);
  b.default_background_fraction = opt_number(j, "default_background_fraction", p, b.default_background_fraction);
  return b;
}

Json write_broker(const BrokerSettings& b) {
  return {{"commit_horizon_slots", b.commit_horizon_slots},
          {"mode", codec::write_enum(b.mode)},
          {"spare_policy", codec::write_enum(b.spare_policy)},
          {"efficiency", codec::to_json(b.efficiency)},
          {"forecast_window", b.forecast_window},
          {"default_background_fraction", b.default_background_fraction}};
}

/// Fills qos and service from the template when a scripted request names one
/// and leaves them out.
Json apply_template(Json req, const std::string& p) {
  if (!req.is_object() || !req.contains("template")) return req;
  const auto t = codec::read_enum<SliceTemplate>(req.at("template"), p + ".template");
  const TemplateProfile prof = template_profile(t);
  if (!req.contains("qos")) req["qos"] = codec::to_json(prof.qos);
  if (!req.contains("service")) {
    ServiceInfo s;
    s.mobility = prof.mobility;
    req["service"] = codec::to_json(s);
  }
  return req;
}

ScenarioConfig read_config(const Json& j) {
  const std::string p = "config";
  codec::expect_object(j, p, {"schema", "name", "seed", "horizon_slots", "slot_seconds", "slots_per_day", "speedup",
                              "topology", "broker", "charging", "parties", "ues", "background", "requests",
                              "releases", "moves", "demands"});
  ScenarioConfig c;
  c.schema = static_cast<int>(codec::read_int(codec::field(j, "schema", p), p + ".schema"));
  if (c.schema != kScenarioSchema) invalid(p + ".schema", "unsupported schema " + std::to_string(c.schema));
  c.name = opt_string(j, "name", p);
  if (j.contains("seed")) {
    const Json& s = j.at("seed");
    if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<std::int64_t>() < 0)) {
      invalid(p + ".seed", "expected non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  c.horizon_slots = opt_int(j, "horizon_slots", p, c.horizon_slots);
  c.slot_seconds = opt_number(j, "slot_seconds", p, c.slot_seconds);
  c.slots_per_day = opt_int(j, "slots_per_day", p, c.slots_per_day);
  c.speedup = opt_number(j, "speedup", p, c.speedup);
  c.topology = read_topology(codec::field(j, "topology", p), p + ".topology");
  if (j.contains("broker")) c.broker = read_broker(j.at("broker"), p + ".broker");
  if (j.contains("charging")) {
    const std::string cp = p + ".charging";
    codec::expect_object(j.at("charging"), cp, {"GBR", "NON_GBR"});
    c.charging.gbr_multiplier = opt_number(j.at("charging"), "GBR", cp, c.charging.gbr_multiplier);
    c.charging.non_gbr_multiplier = opt_number(j.at("charging"), "NON_GBR", cp, c.charging.non_gbr_multiplier);
  }

  const Json& parties = opt_array(j, "parties", p);
  for (std::size_t i = 0; i < parties.size(); ++i) {
    const std::string pp = at(p + ".parties", i);
    const Json& e = parties[i];
    codec::expect_object(e, pp, {"party", "secret", "tenant", "scope"});
    Credentials cr;
    cr.party = codec::read_string(codec::field(e, "party", pp), pp + ".party");
    cr.secret = codec::read_string(codec::field(e, "secret", pp), pp + ".secret");
    cr.tenant = codec::read<TenantId>(codec::field(e, "tenant", pp), pp + ".tenant");
    cr.scope = opt_enum(e, "scope", pp,
                        cr.tenant.kind == TenantKind::OPERATOR ? SessionScope::OPERATOR : SessionScope::THIRD_PARTY);
    c.parties.push_back(std::move(cr));
  }

  const Json& ues = opt_array(j, "ues", p);
  for (std::size_t i = 0; i < ues.size(); ++i) {
    const std::string up = at(p + ".ues", i);
    const Json& e = ues[i];
    codec::expect_object(e, up, {"id", "owner", "home_plmn", "cell", "demand_prb", "mobility", "request_id"});
    UeSpec u;
    u.ue.ue_id = codec::read_string(codec::field(e, "id", up), up + ".id");
    u.ue.owner = codec::read<TenantId>(codec::field(e, "owner", up), up + ".owner");
    u.ue.home_plmn = codec::read_string(codec::field(e, "home_plmn", up), up + ".home_plmn");
    codec::read_optional(e, "cell", up, u.ue.serving_cell);
    u.ue.demand_prb_per_slot = opt_int(e, "demand_prb", up, 0);
    u.ue.mobility = opt_enum(e, "mobility", up, Mobility::STATIONARY);
    codec::read_optional(e, "request_id", up, u.request_id);
    c.ues.push_back(std::move(u));
  }

  const Json& bg = opt_array(j, "background", p);
  for (std::size_t i = 0; i < bg.size(); ++i) {
    const std::string bp = at(p + ".background", i);
    const Json& e = bg[i];
    codec::expect_object(e, bp, {"cell", "jitter", "segments"});
    const CellId cell = codec::read_string(codec::field(e, "cell", bp), bp + ".cell");
    BackgroundProfile prof;
    prof.jitter = opt_number(e, "jitter", bp, 0.0);
    const Json& segs = opt_array(e, "segments", bp);
    for (std::size_t k = 0; k < segs.size(); ++k) {
      const std::string sp = at(bp + ".segments", k);
      codec::expect_object(segs[k], sp, {"from", "mean_prb"});
      prof.segments.push_back({codec::read_int(codec::field(segs[k], "from", sp), sp + ".from"),
                               codec::read_number(codec::field(segs[k], "mean_prb", sp), sp + ".mean_prb")});
    }
    if (!c.background.emplace(cell, std::move(prof)).second) invalid(bp + ".cell", "duplicate profile for " + cell);
  }

  const Json& reqs = opt_array(j, "requests", p);
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    const std::string rp = at(p + ".requests", i);
    const Json& e = reqs[i];
    codec::expect_object(e, rp, {"slot", "party", "request"});
    ScriptedRequest r;
    r.slot = codec::read_int(codec::field(e, "slot", rp), rp + ".slot");
    r.party = codec::read_string(codec::field(e, "party", rp), rp + ".party");
    r.request = codec::read<SliceRequest>(apply_template(codec::field(e, "request", rp), rp + ".request"),
                                          rp + ".request");
    c.requests.push_back(std::move(r));
  }
  const Json& rels = opt_array(j, "releases", p);
  for (std::size_t i = 0; i < rels.size(); ++i) {
    const std::string rp = at(p + ".releases", i);
    codec::expect_object(rels[i], rp, {"slot", "party", "request_id"});
    c.releases.push_back({codec::read_int(codec::field(rels[i], "slot", rp), rp + ".slot"),
                          codec::read_string(codec::field(rels[i], "party", rp), rp + ".party"),
                          codec::read_string(codec::field(rels[i], "request_id", rp), rp + ".request_id")});
  }
  const Json& moves = opt_array(j, "moves", p);
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const std::string mp = at(p + ".moves", i);
    codec::expect_object(moves[i], mp, {"slot", "ue", "cell"});
    c.moves.push_back({codec::read_int(codec::field(moves[i], "slot", mp), mp + ".slot"),
                       codec::read_string(codec::field(moves[i], "ue", mp), mp + ".ue"),
                       codec::read_string(codec::field(moves[i], "cell", mp), mp + ".cell")});
  }
  const Json& dem = opt_array(j, "demands", p);
  for (std::size_t i = 0; i < dem.size(); ++i) {
    const std::string dp = at(p + ".demands", i);
    codec::expect_object(dem[i], dp, {"slot", "ue", "prb"});
    c.demands.push_back({codec::read_int(codec::field(dem[i], "slot", dp), dp + ".slot"),
                         codec::read_string(codec::field(dem[i], "ue", dp), dp + ".ue"),
                         codec::read_int(codec::field(dem[i], "prb", dp), dp + ".prb")});
  }
  return c;
}

Json write_config(const ScenarioConfig& c) {
  Json parties = Json::array();
  for (const auto& p : c.parties) {
    parties.push_back({{"party", p.party},
                       {"secret", p.secret},
                       {"tenant", codec::to_json(p.tenant)},
                       {"scope", codec::write_enum(p.scope)}});
  }
  Json ues = Json::array();
  for (const auto& u : c.ues) {
    Json e{{"id", u.ue.ue_id},
           {"owner", codec::to_json(u.ue.owner)},
           {"home_plmn", u.ue.home_plmn},
           {"demand_prb", u.ue.demand_prb_per_slot},
           {"mobility", codec::write_enum(u.ue.mobility)}};
    if (u.ue.serving_cell) e["cell"] = *u.ue.serving_cell;
    if (u.request_id) e["request_id"] = *u.request_id;
    ues.push_back(std::move(e));
  }
  Json bg = Json::array();
  for (const auto& [cell, prof] : c.background) {
    Json segs = Json::array();
    for (const auto& s : prof.segments) segs.push_back({{"from", s.from_slot_of_day}, {"mean_prb", s.mean_prb}});
    bg.push_back({{"cell", cell}, {"jitter", prof.jitter}, {"segments", segs}});
  }
  Json reqs = Json::array();
  for (const auto& r : c.requests) {
    reqs.push_back({{"slot", r.slot}, {"party", r.party}, {"request", codec::to_json(r.request)}});
  }
  Json rels = Json::array();
  for (const auto& r : c.releases) rels.push_back({{"slot", r.slot}, {"party", r.party}, {"request_id", r.request_id}});
  Json moves = Json::array();
  for (const auto& m : c.moves) moves.push_back({{"slot", m.slot}, {"ue", m.ue}, {"cell", m.cell}});
  Json dem = Json::array();
  for (const auto& d : c.demands) dem.push_back({{"slot", d.slot}, {"ue", d.ue}, {"prb", d.prb}});

  return {{"schema", c.schema},
          {"name", c.name},
          {"seed", c.seed},
          {"horizon_slots", c.horizon_slots},
          {"slot_seconds", c.slot_seconds},
          {"slots_per_day", c.slots_per_day},
          {"speedup", c.speedup},
          {"topology", write_topology(c.topology)},
          {"broker", write_broker(c.broker)},
          {"charging", {{"GBR", c.charging.gbr_multiplier}, {"NON_GBR", c.charging.non_gbr_multiplier}}},
          {"parties", parties},
          {"ues", ues},
          {"background", bg},
          {"requests", reqs},
          {"releases", rels},
          {"moves", moves},
          {"demands", dem}};
}

bool finite_in(double v, double lo, double hi) { return std::isfinite(v) && v >= lo && v <= hi; }

}  // namespace

std::map<CellId, std::int64_t> nominal_capacities(const Topology& topology) {
  std::map<CellId, std::int64_t> caps;
  for (const auto& [id, c] : topology.cells) caps[id] = c.capacity_prb_per_slot;
  return caps;
}

BrokerConfig broker_config(const ScenarioConfig& config) {
  BrokerConfig b;
  b.horizon_slots = config.broker.commit_horizon_slots;
  b.slots_per_day = config.slots_per_day;
  b.mode = config.broker.mode;
  b.efficiency = config.broker.efficiency;
  b.slot_seconds = config.slot_seconds;
  return b;
}

void validate_scenario(const ScenarioConfig& c) {
  const std::string p = "config";
  if (c.schema != kScenarioSchema) invalid(p + ".schema", "unsupported schema");
  if (c.horizon_slots < 0) invalid(p + ".horizon_slots", "must be >= 0");
  if (!(std::isfinite(c.slot_seconds) && c.slot_seconds > 0)) invalid(p + ".slot_seconds", "must be > 0");
  if (c.slots_per_day <= 0) invalid(p + ".slots_per_day", "must be > 0");
  if (!(std::isfinite(c.speedup) && c.speedup > 0)) invalid(p + ".speedup", "must be > 0");
  try {
    validate_topology(c.topology);
  } catch (const Error& e) {
    invalid(p + ".topology", e.detail());
  }
  if (c.broker.commit_horizon_slots <= 0) invalid(p + ".broker.commit_horizon_slots", "must be > 0");
  if (c.broker.forecast_window < 1) invalid(p + ".broker.forecast_window", "must be >= 1");
  if (!finite_in(c.broker.default_background_fraction, 0.0, 1.0)) {
    invalid(p + ".broker.default_background_fraction", "must be in [0, 1]");
  }
  for (const auto& [m, name] : EnumNames<Mobility>::entries) {
    const double e = c.broker.efficiency.of(m);
    if (!(std::isfinite(e) && e > 0)) invalid(p + ".broker.efficiency." + std::string(name), "must be > 0");
  }
  if (!finite_in(c.charging.gbr_multiplier, 0.0, 1e9)) invalid(p + ".charging.GBR", "must be >= 0");
  if (!finite_in(c.charging.non_gbr_multiplier, 0.0, 1e9)) invalid(p + ".charging.NON_GBR", "must be >= 0");

  std::map<std::string, const Credentials*> parties;
  std::set<TenantId> service_ids;
  for (std::size_t i = 0; i < c.parties.size(); ++i) {
    const auto& cr = c.parties[i];
    const std::string pp = at(p + ".parties", i);
    if (cr.party.empty()) invalid(pp + ".party", "empty");
    if (!parties.emplace(cr.party, &cr).second) invalid(pp + ".party", "duplicate party '" + cr.party + "'");
    if (!is_valid(cr.tenant)) invalid(pp + ".tenant", "invalid tenant id '" + cr.tenant.value + "'");
    if ((cr.tenant.kind == TenantKind::OPERATOR) != (cr.scope == SessionScope::OPERATOR)) {
      invalid(pp + ".scope", "OPERATOR scope needs a PLMN tenant, THIRD_PARTY a SERVICE tenant");
    }
    if (cr.tenant.kind == TenantKind::SERVICE && !service_ids.insert(cr.tenant).second) {
      invalid(pp + ".tenant", "service identifier registered twice");
    }
  }

  std::map<UeId, const UeSpec*> ues;
  for (std::size_t i = 0; i < c.ues.size(); ++i) {
    const auto& u = c.ues[i];
    const std::string up = at(p + ".ues", i);
    if (u.ue.ue_id.empty()) invalid(up + ".id", "empty");
    if (!ues.emplace(u.ue.ue_id, &u).second) invalid(up + ".id", "duplicate UE '" + u.ue.ue_id + "'");
    if (!is_valid(u.ue.owner)) invalid(up + ".owner", "invalid tenant id");
    if (!is_valid_plmn(u.ue.home_plmn)) invalid(up + ".home_plmn", "not a PLMN-id");
    if (u.ue.owner.kind == TenantKind::OPERATOR && u.ue.owner.value != u.ue.home_plmn) {
      invalid(up + ".home_plmn", "operator UEs must be homed on the operator's PLMN");
    }
    if (u.ue.demand_prb_per_slot < 0) invalid(up + ".demand_prb", "must be >= 0");
    if (u.ue.serving_cell) {
      if (!c.topology.has_cell(*u.ue.serving_cell)) invalid(up + ".cell", "unknown cell '" + *u.ue.serving_cell + "'");
      if (!c.topology.cell(*u.ue.serving_cell).broadcasts(u.ue.home_plmn)) {
        invalid(up + ".cell", "cell does not broadcast " + u.ue.home_plmn);
      }
    }
  }

  for (const auto& [cell, prof] : c.background) {
    const std::string bp = p + ".background." + cell;
    if (!c.topology.has_cell(cell)) invalid(bp, "unknown cell");
    if (!finite_in(prof.jitter, 0.0, 1.0)) invalid(bp + ".jitter", "must be in [0, 1]");
    for (const auto& s : prof.segments) {
      if (s.from_slot_of_day < 0 || s.from_slot_of_day >= c.slots_per_day) invalid(bp + ".segments", "from out of day");
      if (!finite_in(s.mean_prb, 0.0, 1e12)) invalid(bp + ".segments", "mean_prb must be >= 0");
    }
  }

  auto in_run = [&](Slot s) { return s >= 0 && s < c.horizon_slots; };
  std::map<std::string, std::string> request_owner;
  for (std::size_t i = 0; i < c.requests.size(); ++i) {
    const auto& r = c.requests[i];
    const std::string rp = at(p + ".requests", i);
    if (!in_run(r.slot)) invalid(rp + ".slot", "outside the run");
    auto it = parties.find(r.party);
    if (it == parties.end()) invalid(rp + ".party", "unknown party '" + r.party + "'");
    if (r.request.tenant != it->second->tenant) invalid(rp + ".request.tenant", "does not match the party's tenant");
    if (r.request.time.start_slot < r.slot) invalid(rp + ".request.time.start_slot", "before the submission slot");
    try {
      validate_request(r.request, c.topology);
    } catch (const Error& e) {
      invalid(rp + ".request", std::string(to_string(e.code())) + " " + e.detail());
    }
    if (!request_owner.emplace(r.request.request_id, r.party).second) {
      invalid(rp + ".request.request_id", "duplicate request_id '" + r.request.request_id + "'");
    }
  }
  for (std::size_t i = 0; i < c.releases.size(); ++i) {
    const auto& r = c.releases[i];
    const std::string rp = at(p + ".releases", i);
    if (!in_run(r.slot)) invalid(rp + ".slot", "outside the run");
    auto it = request_owner.find(r.request_id);
    if (it == request_owner.end()) invalid(rp + ".request_id", "no scripted request '" + r.request_id + "'");
    if (it->second != r.party) invalid(rp + ".party", "request belongs to another party");
  }
  for (const auto& [id, u] : ues) {
    if (u->request_id && request_owner.count(*u->request_id) == 0) {
      invalid(p + ".ues." + id + ".request_id", "no scripted request '" + *u->request_id + "'");
    }
  }
  for (std::size_t i = 0; i < c.moves.size(); ++i) {
    const auto& m = c.moves[i];
    const std::string mp = at(p + ".moves", i);
    if (!in_run(m.slot)) invalid(mp + ".slot", "outside the run");
    if (ues.count(m.ue) == 0) invalid(mp + ".ue", "unknown UE '" + m.ue + "'");
    if (!c.topology.has_cell(m.cell)) invalid(mp + ".cell", "unknown cell '" + m.cell + "'");
  }
  for (std::size_t i = 0; i < c.demands.size(); ++i) {
    const auto& d = c.demands[i];
    const std::string dp = at(p + ".demands", i);
    if (!in_run(d.slot)) invalid(dp + ".slot", "outside the run");
    if (ues.count(d.ue) == 0) invalid(dp + ".ue", "unknown UE '" + d.ue + "'");
    if (d.prb < 0) invalid(dp + ".prb", "must be >= 0");
  }
}

ScenarioConfig parse_scenario(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(Errc::CONFIG_INVALID, std::string("config: malformed JSON: ") + e.what());
  }
  ScenarioConfig c;
  try {
    c = read_config(j);
  } catch (const Error& e) {
    if (e.code() != Errc::DECODE_ERROR) throw;
    throw Error(Errc::CONFIG_INVALID, e.detail());
  }
  validate_scenario(c);
  return c;
}

std::string serialize_scenario(const ScenarioConfig& config) { return write_config(config).dump(2) + "\n"; }

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IO_ERROR, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(Errc::IO_ERROR, "cannot read " + path.string());
  return parse_scenario(ss.str());
}

}  // namespace slicebroker
