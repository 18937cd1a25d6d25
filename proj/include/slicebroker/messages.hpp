#pragma once

// Wire messages: newline-delimited JSON objects {"v":1,"type":...,"seq":...,
// "body":{...}} in canonical form (sorted keys, no whitespace).

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "slicebroker/broker.hpp"
#include "slicebroker/config_push.hpp"
#include "slicebroker/domain.hpp"
#include "slicebroker/error.hpp"
#include "slicebroker/telemetry.hpp"

namespace slicebroker {

inline constexpr int kProtocolVersion = 1;

enum class SessionScope { OPERATOR, THIRD_PARTY };

struct AuthRequest {
  std::string party;
  std::string secret;
  bool operator==(const AuthRequest&) const = default;
};

struct AuthResponse {
  std::string session_id;
  std::string token;
  TenantId tenant;
  SessionScope scope = SessionScope::OPERATOR;
  bool operator==(const AuthResponse&) const = default;
};

/// Client sends {slice_id}; the reply echoes it with released = true.
struct SliceRelease {
  SliceId slice_id;
  bool released = false;
  bool operator==(const SliceRelease&) const = default;
};

/// Client sends {range}; the reply carries the report.
struct KpiReportMsg {
  Interval range;
  std::optional<KpiReport> report;
  bool operator==(const KpiReportMsg&) const = default;
};

/// An empty id list asks for every UE of the session's tenant.
struct ContextQuery {
  std::vector<UeId> ue_ids;
  bool operator==(const ContextQuery&) const = default;
};

struct UeContext {
  UeId ue_id;
  std::optional<CellId> serving_cell;
  Mobility mobility = Mobility::STATIONARY;
  double avg_rate_mbps = 0.0;
  bool operator==(const UeContext&) const = default;
};

struct ContextResponse {
  std::vector<UeContext> records;
  bool operator==(const ContextResponse&) const = default;
};

struct ChargingQuery {
  Interval range;
  bool operator==(const ChargingQuery&) const = default;
};

struct ChargingRecord {
  SliceId slice_id;
  TenantId tenant;
  std::int64_t prb_slots_consumed = 0;
  double qos_multiplier = 1.0;
  double amount = 0.0;
  bool operator==(const ChargingRecord&) const = default;
};

struct ChargingResponse {
  Interval range;
  std::vector<ChargingRecord> records;
  bool operator==(const ChargingResponse&) const = default;
};

struct ErrorMsg {
  Errc code = Errc::BAD_REQUEST;
  std::string message;
  bool operator==(const ErrorMsg&) const = default;
};

/// Alternative order matches MessageType.
using MessageBody = std::variant<AuthRequest, AuthResponse, SliceRequest, Decision, SliceRelease, KpiReportMsg,
                                 ContextQuery, ContextResponse, ChargingQuery, ChargingResponse, ConfigItfN,
                                 ConfigItfB, ErrorMsg>;

enum class MessageType {
  AUTH_REQ,
  AUTH_RESP,
  SLICE_REQ,
  SLICE_DECISION,
  SLICE_RELEASE,
  KPI_REPORT,
  CONTEXT_QUERY,
  CONTEXT_RESP,
  CHARGING_QUERY,
  CHARGING_RESP,
  CONFIG_ITFN,
  CONFIG_ITFB,
  ERROR,
};

struct Message {
  std::int64_t seq = 0;
  MessageBody body;

  MessageType type() const noexcept { return static_cast<MessageType>(body.index()); }
  bool operator==(const Message&) const = default;
};

/// Canonical single-line encoding (no trailing newline).
std::string encode(const Message& m);

/// Strict decode; throws Error(DECODE_ERROR) on malformed input, a wrong
/// version, an unknown type or unknown fields.
Message decode(const std::string& line);

template <>
struct EnumNames<SessionScope> {
  static constexpr std::array<std::pair<SessionScope, std::string_view>, 2> entries{{
      {SessionScope::OPERATOR, "OPERATOR"},
      {SessionScope::THIRD_PARTY, "THIRD_PARTY"},
  }};
};
template <>
struct EnumNames<MessageType> {
  static constexpr std::array<std::pair<MessageType, std::string_view>, 13> entries{{
      {MessageType::AUTH_REQ, "AUTH_REQ"},
      {MessageType::AUTH_RESP, "AUTH_RESP"},
      {MessageType::SLICE_REQ, "SLICE_REQ"},
      {MessageType::SLICE_DECISION, "SLICE_DECISION"},
      {MessageType::SLICE_RELEASE, "SLICE_RELEASE"},
      {MessageType::KPI_REPORT, "KPI_REPORT"},
      {MessageType::CONTEXT_QUERY, "CONTEXT_QUERY"},
      {MessageType::CONTEXT_RESP, "CONTEXT_RESP"},
      {MessageType::CHARGING_QUERY, "CHARGING_QUERY"},
      {MessageType::CHARGING_RESP, "CHARGING_RESP"},
      {MessageType::CONFIG_ITFN, "CONFIG_ITFN"},
      {MessageType::CONFIG_ITFB, "CONFIG_ITFB"},
      {MessageType::ERROR, "ERROR"},
  }};
};

}  // namespace slicebroker
