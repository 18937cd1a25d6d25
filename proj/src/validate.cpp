#include "slicebroker/validate.hpp"

#include <algorithm>
#include <cmath>

#include "slicebroker/error.hpp"

namespace slicebroker {
namespace {

[[noreturn]] void fail(Errc code, const std::string& field, const std::string& why) {
  throw Error(code, field + ": " + why);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

ValidatedRequest validate_request(const SliceRequest& req, const Topology& topology) {
  SliceRequest out = req;

  if (req.request_id.empty()) fail(Errc::BAD_REQUEST, "request_id", "empty");
  if (!is_valid(req.tenant)) {
    fail(Errc::BAD_TENANT_ID, "tenant",
         req.tenant.kind == TenantKind::OPERATOR ? "PLMN-id must be 5 or 6 digits"
                                                 : "service identifier is empty");
  }

  const auto& res = req.resources;
  if (res.kind == ResourceKind::PHYSICAL_PRB) {
    if (!res.prb_per_slot || *res.prb_per_slot <= 0 || res.rate_mbps) {
      fail(Errc::EMPTY_RESOURCES, "resources.prb_per_slot", "PHYSICAL_PRB needs a positive PRB count only");
    }
  } else {
    if (!res.rate_mbps || !finite_positive(*res.rate_mbps) || res.prb_per_slot) {
      fail(Errc::EMPTY_RESOURCES, "resources.rate_mbps", "DATA_RATE needs a positive rate only");
    }
  }

  const auto& t = req.time;
  if (t.start_slot < 0) fail(Errc::BAD_TIME_SPEC, "time.start_slot", "negative");
  if (t.duration_slots <= 0) fail(Errc::BAD_TIME_SPEC, "time.duration_slots", "must be > 0");
  if (t.periodicity_slots && *t.periodicity_slots <= t.duration_slots) {
    fail(Errc::BAD_TIME_SPEC, "time.periodicity_slots", "must exceed duration");
  }
  if (t.window_end_slot && *t.window_end_slot < t.start_slot) {
    fail(Errc::BAD_TIME_SPEC, "time.window_end_slot", "before start");
  }

  const auto& q = req.qos;
  if (q.priority < 1 || q.priority > 15) fail(Errc::BAD_QOS_RANGE, "qos.priority", "outside 1..15");
  if (!finite_positive(q.delay_budget_ms)) fail(Errc::BAD_QOS_RANGE, "qos.delay_budget_ms", "must be > 0");
  if (!std::isfinite(q.jitter_ms) || q.jitter_ms < 0) fail(Errc::BAD_QOS_RANGE, "qos.jitter_ms", "negative");
  if (!(q.loss_rate >= 0.0 && q.loss_rate <= 1.0)) fail(Errc::BAD_QOS_RANGE, "qos.loss_rate", "outside [0,1]");

  const auto& svc = req.service;
  if (svc.disruption_tolerance_slots < 0) {
    fail(Errc::BAD_REQUEST, "service.disruption_tolerance_slots", "negative");
  }
  if (const auto& vol = svc.volume_descriptor) {
    if (!finite_positive(vol->file_size_mb)) {
      fail(Errc::BAD_REQUEST, "service.volume_descriptor.file_size_mb", "must be > 0");
    }
    if (vol->deadline_slot <= t.start_slot) {
      fail(Errc::BAD_TIME_SPEC, "service.volume_descriptor.deadline_slot", "must exceed start_slot");
    }
  }

  if (out.cells) {
    auto& cells = *out.cells;
    for (const auto& c : cells) {
      if (!topology.has_cell(c)) fail(Errc::UNKNOWN_CELL, "cells", "'" + c + "' is not deployed");
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    if (cells.empty()) out.cells.reset();
  }

  return ValidatedRequest(std::move(out));
}

}  // namespace slicebroker
