#include "slicebroker/config_push.hpp"

namespace slicebroker {

ConfigPush push_config(const SliceGrant& grant, ConfigAction action, std::uint64_t admission_seq) {
  ConfigPush push;
  push.itf_n.action = action;
  push.itf_n.slice_id = grant.slice_id;
  push.itf_n.tenant = grant.tenant;
  push.itf_n.mode = grant.mode;
  for (const auto& [cell, prb] : grant.per_cell_prb) {
    push.itf_n.cells.push_back(cell);
    ConfigItfB b;
    b.action = action;
    b.cell_id = cell;
    b.slice_id = grant.slice_id;
    b.tenant = grant.tenant;
    b.prb_per_slot = prb;
    b.mode = grant.mode;
    b.bearer = grant.qos.bearer;
    b.priority = grant.qos.priority;
    b.admission_seq = admission_seq;
    push.itf_b.push_back(std::move(b));
  }
  return push;
}

}  // namespace slicebroker
