#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slicebroker {

/// Machine-readable failure codes shared by every module and carried on the
/// wire inside ERROR messages.
enum class Errc {
  // request validation
  UNKNOWN_CELL,
  BAD_TIME_SPEC,
  BAD_QOS_RANGE,
  EMPTY_RESOURCES,
  BAD_TENANT_ID,
  BAD_REQUEST,
  // ran-sim
  MAX_PLMN_EXCEEDED,
  DUPLICATE_PLMN,
  PLMN_NOT_BROADCAST,
  NOT_NEIGHBOR,
  HANDOVER_REJECTED,
  NOT_ATTACHED,
  UNKNOWN_UE,
  CLOCK_SKEW,
  // telemetry
  OUT_OF_ORDER_BATCH,
  UNKNOWN_TENANT,
  // broker
  NO_FEASIBLE_CELLS,
  UNKNOWN_SLICE,
  ALREADY_RELEASED,
  // interfaces
  AUTH_FAILED,
  AUTH_REQUIRED,
  SCOPE_VIOLATION,
  TENANT_MISMATCH,
  DECODE_ERROR,
  // cli
  CONFIG_INVALID,
  INVARIANT_VIOLATION,
  IO_ERROR,
  BIND_FAILED,
};

std::string_view to_string(Errc code) noexcept;
Errc errc_from_string(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace slicebroker
