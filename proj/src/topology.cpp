#include "slicebroker/topology.hpp"

#include <algorithm>
#include <set>

#include "slicebroker/error.hpp"

namespace slicebroker {

bool CellModel::broadcasts(const std::string& plmn) const {
  return std::find(broadcast_plmns.begin(), broadcast_plmns.end(), plmn) != broadcast_plmns.end();
}

bool CellModel::is_neighbor(const CellId& other) const {
  return std::find(neighbors.begin(), neighbors.end(), other) != neighbors.end();
}

std::int64_t CellModel::effective_capacity(Slot slot) const {
  std::int64_t cap = capacity_prb_per_slot;
  for (const auto& o : outages) {
    if (slot >= o.begin && slot < o.end) cap = std::min(cap, o.capacity_prb);
  }
  return cap;
}

CellModel add_operator(CellModel cell, const std::string& plmn) {
  if (cell.broadcasts(plmn)) {
    throw Error(Errc::DUPLICATE_PLMN, cell.cell_id + " already broadcasts " + plmn);
  }
  if (cell.broadcast_plmns.size() >= kMaxBroadcastPlmns) {
    throw Error(Errc::MAX_PLMN_EXCEEDED, cell.cell_id + " already broadcasts 6 PLMNs");
  }
  cell.broadcast_plmns.push_back(plmn);
  return cell;
}

const CellModel& Topology::cell(const CellId& id) const {
  auto it = cells.find(id);
  if (it == cells.end()) throw Error(Errc::UNKNOWN_CELL, id);
  return it->second;
}

CellModel& Topology::cell(const CellId& id) {
  auto it = cells.find(id);
  if (it == cells.end()) throw Error(Errc::UNKNOWN_CELL, id);
  return it->second;
}

void Topology::add_operator(const CellId& cell_id, const std::string& plmn) {
  CellModel& c = cell(cell_id);
  c = slicebroker::add_operator(c, plmn);
}

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(Errc::CONFIG_INVALID, field + ": " + why);
}

void check_archetype(const Topology& topo) {
  std::set<std::string> all_plmns;
  std::size_t single = 0;
  std::size_t shared = 0;
  for (const auto& [id, c] : topo.cells) {
    all_plmns.insert(c.broadcast_plmns.begin(), c.broadcast_plmns.end());
    (c.broadcast_plmns.size() >= 2 ? shared : single) += 1;
  }
  const std::string field = "topology.archetype";
  switch (topo.archetype) {
    case Archetype::CUSTOM:
      return;
    case Archetype::MULTI_CORE_SHARED_RAN:
      if (topo.sharing_mode != SharingMode::MOCN) invalid(field, "MULTI_CORE_SHARED_RAN requires MOCN");
      if (single != 0) invalid(field, "MULTI_CORE_SHARED_RAN requires >= 2 PLMNs on every shared cell");
      return;
    case Archetype::COVERAGE_COLLABORATION:
      if (shared != 0 || all_plmns.size() < 2) {
        invalid(field, "COVERAGE_COLLABORATION requires single-PLMN cells from >= 2 operators");
      }
      return;
    case Archetype::REGIONAL_COVERAGE_SHARING:
      if (shared == 0 || single == 0) {
        invalid(field, "REGIONAL_COVERAGE_SHARING requires both shared and single-operator cells");
      }
      return;
    case Archetype::COMMON_SPECTRUM_SHARING:
      if (single != 0) invalid(field, "COMMON_SPECTRUM_SHARING requires >= 2 PLMNs on every cell");
      return;
    case Archetype::MULTI_RAN_SHARED_CORE:
      if (topo.sharing_mode != SharingMode::GWCN) invalid(field, "MULTI_RAN_SHARED_CORE requires GWCN");
      if (shared != 0 || all_plmns.size() < 2) {
        invalid(field, "MULTI_RAN_SHARED_CORE requires single-PLMN cells from >= 2 operators");
      }
      return;
  }
}

}  // namespace

void validate_topology(const Topology& topo) {
  if (topo.cells.empty()) invalid("topology.cells", "no cells deployed");
  std::set<std::string> plmns;
  for (const auto& [id, c] : topo.cells) {
    const std::string field = "topology.cells." + id;
    if (c.cell_id != id) invalid(field + ".id", "key mismatch");
    if (c.capacity_prb_per_slot <= 0) invalid(field + ".capacity_prb", "must be > 0");
    if (c.broadcast_plmns.size() > kMaxBroadcastPlmns) invalid(field + ".plmns", "more than 6 PLMNs");
    std::set<std::string> seen;
    for (const auto& p : c.broadcast_plmns) {
      if (!is_valid_plmn(p)) invalid(field + ".plmns", "'" + p + "' is not a PLMN-id");
      if (!seen.insert(p).second) invalid(field + ".plmns", "duplicate " + p);
      plmns.insert(p);
    }
    for (const auto& n : c.neighbors) {
      if (n == id || !topo.has_cell(n)) invalid(field + ".neighbors", "bad neighbor '" + n + "'");
    }
    for (const auto& o : c.outages) {
      if (o.end <= o.begin) invalid(field + ".outages", "empty interval");
      if (o.capacity_prb < 0 || o.capacity_prb > c.capacity_prb_per_slot) {
        invalid(field + ".outages", "reduced capacity outside [0, nominal]");
      }
    }
  }

  if (topo.sharing_mode == SharingMode::MOCN) {
    std::set<std::string> endpoints;
    for (const auto& p : plmns) {
      auto it = topo.core_endpoints.find(p);
      if (it == topo.core_endpoints.end()) invalid("topology.core_endpoints", "no core for " + p);
      if (!endpoints.insert(it->second).second) {
        invalid("topology.core_endpoints", "endpoint " + it->second + " shared under MOCN");
      }
    }
  } else if (!topo.shared_endpoint || topo.shared_endpoint->empty()) {
    invalid("topology.shared_endpoint", "GWCN requires one shared MME endpoint");
  }

  check_archetype(topo);
}

std::string core_endpoint_for(const Topology& topo, const std::string& home_plmn) {
  if (topo.sharing_mode == SharingMode::GWCN) return topo.shared_endpoint.value_or("");
  auto it = topo.core_endpoints.find(home_plmn);
  if (it == topo.core_endpoints.end()) {
    throw Error(Errc::PLMN_NOT_BROADCAST, "no core network for " + home_plmn);
  }
  return it->second;
}

AttachResult attach(UeModel& ue, const CellId& cell, const Topology& topo) {
  const CellModel& c = topo.cell(cell);
  if (!c.broadcasts(ue.home_plmn)) {
    throw Error(Errc::PLMN_NOT_BROADCAST, cell + " does not broadcast " + ue.home_plmn);
  }
  AttachResult result{core_endpoint_for(topo, ue.home_plmn)};
  ue.serving_cell = cell;
  return result;
}

HandoverResult handover(UeModel& ue, const CellId& target_cell, const Topology& topo) {
  if (!ue.serving_cell) throw Error(Errc::NOT_ATTACHED, ue.ue_id);
  const CellModel& source = topo.cell(*ue.serving_cell);
  const CellModel& target = topo.cell(target_cell);
  if (!source.is_neighbor(target_cell)) {
    throw Error(Errc::NOT_NEIGHBOR, target_cell + " is not a neighbor of " + source.cell_id);
  }
  if (!target.broadcasts(ue.home_plmn)) {
    throw Error(Errc::HANDOVER_REJECTED, target_cell + " does not broadcast " + ue.home_plmn);
  }
  HandoverResult result{source.cell_id, target_cell, core_endpoint_for(topo, ue.home_plmn)};
  ue.serving_cell = target_cell;
  return result;
}

}  // namespace slicebroker
