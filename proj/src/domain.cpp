#include "slicebroker/domain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace slicebroker {

std::string TenantId::str() const {
  return (kind == TenantKind::OPERATOR ? "PLMN:" : "SVC:") + value;
}

bool is_valid_plmn(const std::string& id) noexcept {
  if (id.size() != 5 && id.size() != 6) return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

bool is_valid(const TenantId& tenant) noexcept {
  if (tenant.kind == TenantKind::OPERATOR) return is_valid_plmn(tenant.value);
  return !tenant.value.empty();
}

std::vector<Interval> active_intervals(const TimeSpec& time, Slot horizon_slot) {
  std::vector<Interval> out;
  Slot last_start = horizon_slot;
  if (time.window_end_slot) last_start = std::min(last_start, *time.window_end_slot);

  if (!time.periodicity_slots) {
    if (time.start_slot <= last_start) {
      out.push_back({time.start_slot, time.start_slot + time.duration_slots});
    }
    return out;
  }
  const Slot period = *time.periodicity_slots;
  for (Slot s = time.start_slot; s <= last_start; s += period) {
    out.push_back({s, s + time.duration_slots});
  }
  return out;
}

TemplateProfile template_profile(SliceTemplate t) noexcept {
  switch (t) {
    case SliceTemplate::EMBB:
      return {QosProfile{Bearer::NON_GBR, 8, 100.0, 10.0, 1e-3}, Mobility::LOW};
    case SliceTemplate::AUTOMOTIVE:
      return {QosProfile{Bearer::GBR, 2, 10.0, 1.0, 1e-5}, Mobility::HIGH};
    case SliceTemplate::MIOT:
      return {QosProfile{Bearer::NON_GBR, 12, 1000.0, 100.0, 1e-2}, Mobility::STATIONARY};
  }
  return {};
}

std::int64_t rate_to_prb(double rate_mbps, Mobility mobility, const EfficiencyTable& table) {
  const double eff = table.of(mobility);
  auto prb = static_cast<std::int64_t>(std::ceil(rate_mbps / eff));
  // The quotient can land one ulp on either side of an integer.
  while (prb > 1 && static_cast<double>(prb - 1) * eff >= rate_mbps) --prb;
  while (static_cast<double>(prb) * eff < rate_mbps) ++prb;
  return std::max<std::int64_t>(prb, 1);
}

std::int64_t needed_prb(const SliceRequest& req, const EfficiencyTable& table, double slot_seconds) {
  std::int64_t prb = 0;
  const Mobility mobility = req.service.mobility;
  if (req.resources.kind == ResourceKind::PHYSICAL_PRB) {
    prb = req.resources.prb_per_slot.value_or(0);
  } else if (req.resources.rate_mbps) {
    prb = rate_to_prb(*req.resources.rate_mbps, mobility, table);
  }
  if (const auto& vol = req.service.volume_descriptor) {
    const double seconds = static_cast<double>(vol->deadline_slot - req.time.start_slot) * slot_seconds;
    if (seconds > 0 && vol->file_size_mb > 0) {
      prb = std::max(prb, rate_to_prb(vol->file_size_mb / seconds, mobility, table));
    }
  }
  return prb;
}

}  // namespace slicebroker
