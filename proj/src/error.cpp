#include "slicebroker/error.hpp"

#include <array>
#include <utility>

namespace slicebroker {
namespace {

constexpr std::array<std::pair<Errc, std::string_view>, 28> kNames{{
    {Errc::UNKNOWN_CELL, "UNKNOWN_CELL"},
    {Errc::BAD_TIME_SPEC, "BAD_TIME_SPEC"},
    {Errc::BAD_QOS_RANGE, "BAD_QOS_RANGE"},
    {Errc::EMPTY_RESOURCES, "EMPTY_RESOURCES"},
    {Errc::BAD_TENANT_ID, "BAD_TENANT_ID"},
    {Errc::BAD_REQUEST, "BAD_REQUEST"},
    {Errc::MAX_PLMN_EXCEEDED, "MAX_PLMN_EXCEEDED"},
    {Errc::DUPLICATE_PLMN, "DUPLICATE_PLMN"},
    {Errc::PLMN_NOT_BROADCAST, "PLMN_NOT_BROADCAST"},
    {Errc::NOT_NEIGHBOR, "NOT_NEIGHBOR"},
    {Errc::HANDOVER_REJECTED, "HANDOVER_REJECTED"},
    {Errc::NOT_ATTACHED, "NOT_ATTACHED"},
    {Errc::UNKNOWN_UE, "UNKNOWN_UE"},
    {Errc::CLOCK_SKEW, "CLOCK_SKEW"},
    {Errc::OUT_OF_ORDER_BATCH, "OUT_OF_ORDER_BATCH"},
    {Errc::UNKNOWN_TENANT, "UNKNOWN_TENANT"},
    {Errc::NO_FEASIBLE_CELLS, "NO_FEASIBLE_CELLS"},
    {Errc::UNKNOWN_SLICE, "UNKNOWN_SLICE"},
    {Errc::ALREADY_RELEASED, "ALREADY_RELEASED"},
    {Errc::AUTH_FAILED, "AUTH_FAILED"},
    {Errc::AUTH_REQUIRED, "AUTH_REQUIRED"},
    {Errc::SCOPE_VIOLATION, "SCOPE_VIOLATION"},
    {Errc::TENANT_MISMATCH, "TENANT_MISMATCH"},
    {Errc::DECODE_ERROR, "DECODE_ERROR"},
    {Errc::CONFIG_INVALID, "CONFIG_INVALID"},
    {Errc::INVARIANT_VIOLATION, "INVARIANT_VIOLATION"},
    {Errc::IO_ERROR, "IO_ERROR"},
    {Errc::BIND_FAILED, "BIND_FAILED"},
}};

}  // namespace

std::string_view to_string(Errc code) noexcept {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "UNKNOWN";
}

Errc errc_from_string(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  throw Error(Errc::DECODE_ERROR, "unknown error code '" + std::string(name) + "'");
}

}  // namespace slicebroker
