#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace sbtest {
namespace {

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}
double real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(v.size()) - 1))];
}

template <class E>
E random_enum(Rng& rng) {
  const auto& e = EnumNames<E>::entries;
  return e[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(e.size()) - 1))].first;
}

std::string word(Rng& rng, std::size_t max_len = 8) {
  static const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789-_ \"\\/\xc3\xa9";
  const auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_len)));
  std::string s;
  while (s.size() < n) {
    const char c = alphabet[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(alphabet.size()) - 1))];
    if (static_cast<unsigned char>(c) >= 0x80) {
      s += "\xc3\xa9";  // keep UTF-8 well formed
    } else {
      s += c;
    }
  }
  return s;
}

std::string plmn(Rng& rng) {
  const int digits = coin(rng) ? 5 : 6;
  std::string s;
  for (int i = 0; i < digits; ++i) s += static_cast<char>('0' + uniform(rng, 0, 9));
  return s;
}

TenantId tenant(Rng& rng) { return coin(rng) ? TenantId::plmn(plmn(rng)) : TenantId::service(word(rng)); }

Interval interval(Rng& rng) {
  const Slot b = uniform(rng, 0, 100000);
  return {b, b + uniform(rng, 0, 5000)};
}

TimeSpec time_spec(Rng& rng) {
  TimeSpec t;
  t.start_slot = uniform(rng, 0, 100000);
  t.duration_slots = uniform(rng, 1, 500);
  if (coin(rng)) t.periodicity_slots = t.duration_slots + uniform(rng, 1, 500);
  if (coin(rng)) t.window_end_slot = t.start_slot + uniform(rng, 0, 10000);
  return t;
}

QosProfile qos(Rng& rng) {
  QosProfile q;
  q.bearer = random_enum<Bearer>(rng);
  q.priority = static_cast<int>(uniform(rng, 1, 15));
  q.delay_budget_ms = real(rng, 0.1, 1000.0);
  q.jitter_ms = real(rng, 0.0, 100.0);
  q.loss_rate = real(rng, 0.0, 1.0);
  return q;
}

std::vector<CellId> cell_list(Rng& rng) {
  std::vector<CellId> cells;
  const auto n = uniform(rng, 1, 4);
  for (std::int64_t i = 0; i < n; ++i) cells.push_back("C" + std::to_string(uniform(rng, 1, 9)));
  return cells;
}

SliceRequest slice_request(Rng& rng) {
  SliceRequest r;
  r.request_id = word(rng);
  r.tenant = tenant(rng);
  r.resources = coin(rng) ? ResourceSpec::prbs(uniform(rng, 1, 500)) : ResourceSpec::rate(real(rng, 0.01, 1000.0));
  r.time = time_spec(rng);
  r.qos = qos(rng);
  r.service.mobility = random_enum<Mobility>(rng);
  r.service.offloading_policy = random_enum<OffloadingPolicy>(rng);
  r.service.disruption_tolerance_slots = uniform(rng, 0, 50);
  if (coin(rng, 0.3)) r.service.volume_descriptor = VolumeDescriptor{real(rng, 0.5, 5000.0), r.time.start_slot + 10};
  if (coin(rng)) r.cells = cell_list(rng);
  if (coin(rng)) r.slice_template = random_enum<SliceTemplate>(rng);
  return r;
}

SliceGrant slice_grant(Rng& rng) {
  SliceGrant g;
  g.slice_id = "slice-" + std::to_string(uniform(rng, 0, 1000));
  g.request_id = word(rng);
  g.tenant = tenant(rng);
  for (const auto& c : cell_list(rng)) g.per_cell_prb[c] = uniform(rng, 1, 200);
  g.time = time_spec(rng);
  g.qos = qos(rng);
  g.mode = random_enum<SchedulingMode>(rng);
  return g;
}

MeasurementRecord record(Rng& rng) {
  MeasurementRecord r;
  r.slot = uniform(rng, 0, 100000);
  r.cell_id = "C" + std::to_string(uniform(rng, 1, 9));
  if (coin(rng, 0.8)) {
    r.slice_id = "slice-" + std::to_string(uniform(rng, 0, 99));
    r.tenant = tenant(rng);
  }
  r.demanded_prb = uniform(rng, 0, 200);
  r.quota_prb = uniform(rng, 0, 200);
  r.delivered_prb = uniform(rng, 0, r.quota_prb);
  r.deficit_prb = uniform(rng, 0, 50);
  return r;
}

ConfigItfB itf_b(Rng& rng) {
  ConfigItfB b;
  b.action = random_enum<ConfigAction>(rng);
  b.cell_id = "C" + std::to_string(uniform(rng, 1, 9));
  b.slice_id = "slice-" + std::to_string(uniform(rng, 0, 99));
  b.tenant = tenant(rng);
  b.prb_per_slot = uniform(rng, 1, 200);
  b.mode = random_enum<SchedulingMode>(rng);
  b.bearer = random_enum<Bearer>(rng);
  b.priority = static_cast<int>(uniform(rng, 1, 15));
  b.admission_seq = static_cast<std::uint64_t>(uniform(rng, 0, 1000000));
  return b;
}

}  // namespace

Topology chain_topology(int cells, const std::vector<std::string>& plmns, std::int64_t capacity, SharingMode mode) {
  Topology t;
  t.sharing_mode = mode;
  for (int i = 1; i <= cells; ++i) {
    CellModel c;
    c.cell_id = "C" + std::to_string(i);
    c.capacity_prb_per_slot = capacity;
    c.broadcast_plmns = plmns;
    if (i > 1) c.neighbors.push_back("C" + std::to_string(i - 1));
    if (i < cells) c.neighbors.push_back("C" + std::to_string(i + 1));
    t.cells[c.cell_id] = c;
  }
  for (const auto& p : plmns) t.core_endpoints[p] = "mme-" + p;
  t.shared_endpoint = "mme-shared";
  return t;
}

SliceRequest prb_request(const std::string& id, const TenantId& tenant, std::int64_t prb, TimeSpec time,
                         std::optional<std::vector<CellId>> cells) {
  SliceRequest r;
  r.request_id = id;
  r.tenant = tenant;
  r.resources = ResourceSpec::prbs(prb);
  r.time = time;
  r.cells = std::move(cells);
  return r;
}

ScenarioConfig small_config() {
  ScenarioConfig c;
  c.name = "small";
  c.seed = 5;
  c.horizon_slots = 100;
  c.slots_per_day = 50;
  c.topology = chain_topology(2, {"00101", "00102"});
  c.broker.commit_horizon_slots = 1000;
  c.parties = {{"op-a", "a-secret", TenantId::plmn("00101"), SessionScope::OPERATOR},
               {"op-b", "b-secret", TenantId::plmn("00102"), SessionScope::OPERATOR},
               {"grid-util", "g-secret", TenantId::service("grid-util"), SessionScope::THIRD_PARTY}};
  auto add_ue = [&](const std::string& id, const std::string& plmn, const CellId& cell) {
    UeSpec u;
    u.ue.ue_id = id;
    u.ue.owner = TenantId::plmn(plmn);
    u.ue.home_plmn = plmn;
    u.ue.serving_cell = cell;
    u.ue.demand_prb_per_slot = 20;
    c.ues.push_back(u);
  };
  add_ue("a1", "00101", "C1");
  add_ue("a2", "00101", "C2");
  add_ue("b1", "00102", "C1");
  return c;
}

ScenarioConfig random_scenario(std::uint64_t seed, const RandomScenarioOptions& opt) {
  Rng rng(seed);
  ScenarioConfig c;
  c.name = "random-" + std::to_string(seed);
  c.seed = seed;
  c.horizon_slots = opt.horizon;
  c.slots_per_day = uniform(rng, 10, 30);

  std::vector<std::string> plmns{"00101", "00102", "00103"};
  plmns.resize(static_cast<std::size_t>(uniform(rng, 2, 3)));

  auto& topo = c.topology;
  topo.sharing_mode = opt.sharing;
  const int ncells = static_cast<int>(uniform(rng, 2, 4));
  for (int i = 1; i <= ncells; ++i) {
    CellModel cell;
    cell.cell_id = "C" + std::to_string(i);
    cell.capacity_prb_per_slot = uniform(rng, 50, 150);
    for (const auto& p : plmns) {
      if (coin(rng, 0.7)) cell.broadcast_plmns.push_back(p);
    }
    if (cell.broadcast_plmns.empty()) cell.broadcast_plmns.push_back(pick(rng, plmns));
    topo.cells[cell.cell_id] = cell;
  }
  for (int i = 1; i < ncells; ++i) {
    const CellId a = "C" + std::to_string(i);
    const CellId b = "C" + std::to_string(i + 1);
    topo.cells[a].neighbors.push_back(b);
    topo.cells[b].neighbors.push_back(a);
  }
  for (const auto& p : plmns) topo.core_endpoints[p] = "mme-" + p;
  topo.shared_endpoint = "mme-shared";
  if (opt.outages && coin(rng, 0.6)) {
    auto& cell = topo.cells["C" + std::to_string(uniform(rng, 1, ncells))];
    const Slot b = uniform(rng, 0, opt.horizon - 1);
    cell.outages.push_back({b, b + uniform(rng, 1, 20), uniform(rng, 0, cell.capacity_prb_per_slot)});
  }

  c.broker.commit_horizon_slots = opt.horizon * 3;
  c.broker.mode = opt.mode;
  c.broker.spare_policy = opt.spare;
  c.broker.forecast_window = static_cast<int>(uniform(rng, 1, 3));

  std::vector<TenantId> tenants;
  std::vector<std::string> party_names;
  for (const auto& p : plmns) {
    c.parties.push_back({"op-" + p, "secret-" + p, TenantId::plmn(p), SessionScope::OPERATOR});
  }
  const auto nsvc = uniform(rng, 1, 2);
  for (std::int64_t i = 0; i < nsvc; ++i) {
    const std::string id = "svc-" + std::to_string(i);
    c.parties.push_back({id, "secret-" + id, TenantId::service(id), SessionScope::THIRD_PARTY});
  }
  for (const auto& p : c.parties) {
    tenants.push_back(p.tenant);
    party_names.push_back(p.party);
  }

  const auto nreq = uniform(rng, 1, 6);
  std::vector<std::pair<std::string, std::size_t>> req_owner;  // request_id, party index
  for (std::int64_t i = 0; i < nreq; ++i) {
    const auto pi = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(c.parties.size()) - 1));
    ScriptedRequest sr;
    sr.slot = uniform(rng, 0, opt.horizon / 2);
    sr.party = c.parties[pi].party;
    SliceRequest& r = sr.request;
    r.request_id = "r" + std::to_string(i);
    r.tenant = c.parties[pi].tenant;
    if (coin(rng, 0.7)) {
      r.resources = ResourceSpec::prbs(uniform(rng, 5, 40));
    } else {
      r.resources = ResourceSpec::rate(real(rng, 2.0, 20.0));
    }
    r.time.start_slot = sr.slot + uniform(rng, 0, 5);
    r.time.duration_slots = uniform(rng, 5, 30);
    if (coin(rng, 0.4)) {
      r.time.periodicity_slots = r.time.duration_slots + uniform(rng, 1, 20);
      if (coin(rng)) r.time.window_end_slot = r.time.start_slot + uniform(rng, 0, opt.horizon);
    }
    r.qos.bearer = coin(rng) ? Bearer::GBR : Bearer::NON_GBR;
    r.qos.priority = static_cast<int>(uniform(rng, 1, 15));
    r.service.mobility = random_enum<Mobility>(rng);
    if (coin(rng, 0.3)) r.slice_template = SliceTemplate::MIOT;
    if (coin(rng, 0.4)) {
      std::vector<CellId> cells;
      for (const auto& [id, cell] : topo.cells) {
        if (coin(rng)) cells.push_back(id);
      }
      if (!cells.empty()) r.cells = cells;
    }
    c.requests.push_back(sr);
    req_owner.emplace_back(r.request_id, pi);
  }

  const auto nue = uniform(rng, 2, 8);
  for (std::int64_t i = 0; i < nue; ++i) {
    UeSpec u;
    u.ue.ue_id = "ue" + std::to_string(i);
    const auto ti = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(tenants.size()) - 1));
    u.ue.owner = tenants[ti];
    u.ue.home_plmn = u.ue.owner.kind == TenantKind::OPERATOR ? u.ue.owner.value : pick(rng, plmns);
    u.ue.demand_prb_per_slot = uniform(rng, 0, 40);
    u.ue.mobility = random_enum<Mobility>(rng);
    std::vector<CellId> candidates;
    for (const auto& [id, cell] : topo.cells) {
      if (cell.broadcasts(u.ue.home_plmn)) candidates.push_back(id);
    }
    if (!candidates.empty() && coin(rng, 0.85)) u.ue.serving_cell = pick(rng, candidates);
    std::vector<std::string> own;
    for (const auto& [rid, pi] : req_owner) {
      if (c.parties[pi].tenant == u.ue.owner) own.push_back(rid);
    }
    if (!own.empty() && coin(rng, 0.8)) u.request_id = pick(rng, own);
    c.ues.push_back(u);
  }

  for (const auto& [rid, pi] : req_owner) {
    if (coin(rng, 0.25)) c.releases.push_back({uniform(rng, 0, opt.horizon - 1), c.parties[pi].party, rid});
  }
  const auto nmove = uniform(rng, 0, 6);
  for (std::int64_t i = 0; i < nmove; ++i) {
    c.moves.push_back({uniform(rng, 0, opt.horizon - 1), pick(rng, c.ues).ue.ue_id,
                       "C" + std::to_string(uniform(rng, 1, ncells))});
  }
  const auto ndem = uniform(rng, 0, 6);
  for (std::int64_t i = 0; i < ndem; ++i) {
    c.demands.push_back({uniform(rng, 0, opt.horizon - 1), pick(rng, c.ues).ue.ue_id, uniform(rng, 0, 60)});
  }

  for (const auto& [id, cell] : topo.cells) {
    BackgroundProfile bp;
    bp.jitter = real(rng, 0.0, 0.5);
    bp.segments.push_back({0, real(rng, 0.0, 30.0)});
    bp.segments.push_back({c.slots_per_day / 2, real(rng, 0.0, 60.0)});
    c.background[id] = bp;
  }
  (void)party_names;
  return c;
}

MessageBody random_body(Rng& rng, MessageType type) {
  switch (type) {
    case MessageType::AUTH_REQ:
      return AuthRequest{word(rng), word(rng, 16)};
    case MessageType::AUTH_RESP:
      return AuthResponse{"sess-" + std::to_string(uniform(rng, 0, 999)), word(rng, 16), tenant(rng),
                          random_enum<SessionScope>(rng)};
    case MessageType::SLICE_REQ:
      return slice_request(rng);
    case MessageType::SLICE_DECISION:
      if (coin(rng)) return Decision::granted(slice_grant(rng));
      return Decision::rejected(word(rng), random_enum<RejectReason>(rng), word(rng, 20));
    case MessageType::SLICE_RELEASE:
      return SliceRelease{"slice-" + std::to_string(uniform(rng, 0, 99)), coin(rng)};
    case MessageType::KPI_REPORT: {
      KpiReportMsg m;
      m.range = interval(rng);
      if (coin(rng)) {
        KpiReport rep;
        rep.tenant = tenant(rng);
        rep.range = m.range;
        const auto n = uniform(rng, 0, 4);
        for (std::int64_t i = 0; i < n; ++i) {
          rep.slices.push_back({"slice-" + std::to_string(i), uniform(rng, 0, 9999), uniform(rng, 0, 9999),
                                uniform(rng, 0, 999), uniform(rng, 0, 99), uniform(rng, 0, 9)});
        }
        const auto nr = uniform(rng, 0, 6);
        for (std::int64_t i = 0; i < nr; ++i) rep.records.push_back(record(rng));
        m.report = rep;
      }
      return m;
    }
    case MessageType::CONTEXT_QUERY: {
      ContextQuery q;
      const auto n = uniform(rng, 0, 4);
      for (std::int64_t i = 0; i < n; ++i) q.ue_ids.push_back("ue" + std::to_string(uniform(rng, 0, 99)));
      return q;
    }
    case MessageType::CONTEXT_RESP: {
      ContextResponse r;
      const auto n = uniform(rng, 0, 4);
      for (std::int64_t i = 0; i < n; ++i) {
        UeContext u;
        u.ue_id = "ue" + std::to_string(i);
        if (coin(rng)) u.serving_cell = "C" + std::to_string(uniform(rng, 1, 9));
        u.mobility = random_enum<Mobility>(rng);
        u.avg_rate_mbps = real(rng, 0.0, 300.0);
        r.records.push_back(u);
      }
      return r;
    }
    case MessageType::CHARGING_QUERY:
      return ChargingQuery{interval(rng)};
    case MessageType::CHARGING_RESP: {
      ChargingResponse r;
      r.range = interval(rng);
      const auto n = uniform(rng, 0, 4);
      for (std::int64_t i = 0; i < n; ++i) {
        ChargingRecord cr;
        cr.slice_id = "slice-" + std::to_string(i);
        cr.tenant = tenant(rng);
        cr.prb_slots_consumed = uniform(rng, 0, 1000000);
        cr.qos_multiplier = coin(rng) ? 1.5 : real(rng, 0.0, 3.0);
        cr.amount = static_cast<double>(cr.prb_slots_consumed) * cr.qos_multiplier;
        r.records.push_back(cr);
      }
      return r;
    }
    case MessageType::CONFIG_ITFN: {
      ConfigItfN n;
      n.action = random_enum<ConfigAction>(rng);
      n.slice_id = "slice-" + std::to_string(uniform(rng, 0, 99));
      n.tenant = tenant(rng);
      n.cells = cell_list(rng);
      n.mode = random_enum<SchedulingMode>(rng);
      return n;
    }
    case MessageType::CONFIG_ITFB:
      return itf_b(rng);
    case MessageType::ERROR:
      return ErrorMsg{static_cast<Errc>(uniform(rng, 0, static_cast<std::int64_t>(Errc::BIND_FAILED))), word(rng, 30)};
  }
  return ErrorMsg{};
}

bool oracle_feasible(const std::map<std::pair<CellId, Slot>, std::int64_t>& committed,
                     const std::map<CellId, std::int64_t>& capacity,
                     const std::map<std::pair<CellId, Slot>, double>& forecast, Slot slots_per_day,
                     const std::vector<CellId>& cells, const TimeSpec& time, Slot horizon_end, std::int64_t prb) {
  for (const auto& cell : cells) {
    for (Slot s : oracle_recurrences(time, horizon_end)) {
      for (Slot t = s; t < s + time.duration_slots; ++t) {
        std::int64_t load = prb;
        if (auto it = committed.find({cell, t}); it != committed.end()) load += it->second;
        if (auto it = forecast.find({cell, t % slots_per_day}); it != forecast.end()) {
          load += static_cast<std::int64_t>(std::ceil(it->second));
        }
        if (load > capacity.at(cell)) return false;
      }
    }
  }
  return true;
}

std::vector<Slot> oracle_recurrences(const TimeSpec& time, Slot horizon_end) {
  std::vector<Slot> out;
  if (!time.periodicity_slots) {
    if (time.start_slot + time.duration_slots <= horizon_end) out.push_back(time.start_slot);
    return out;
  }
  for (Slot s = time.start_slot;; s += *time.periodicity_slots) {
    if (time.window_end_slot && s > *time.window_end_slot) break;
    if (s + time.duration_slots > horizon_end) break;
    out.push_back(s);
  }
  return out;
}

std::string temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("sbtest-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sbtest
