#pragma once

// Tenant-facing endpoint. Operators (Type 5 style) and verticals / OTT
// providers (exposure-function style) authenticate against the registered
// party list; the session scope then gates which messages are accepted and
// every request is pinned to the session's tenant.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "slicebroker/messages.hpp"

namespace slicebroker {

struct Credentials {
  std::string party;
  std::string secret;
  TenantId tenant;
  SessionScope scope = SessionScope::OPERATOR;
  bool operator==(const Credentials&) const = default;
};

struct Session {
  std::string session_id;
  TenantId tenant;
  std::string auth_token;
  SessionScope scope = SessionScope::OPERATOR;
};

/// Backend the gateway forwards to. Calls arrive serialized under the
/// gateway's mutex and always carry the authenticated tenant.
class TenantApi {
 public:
  virtual ~TenantApi() = default;
  virtual Decision submit(const SliceRequest& req) = 0;
  /// Throws UNKNOWN_SLICE, ALREADY_RELEASED or SCOPE_VIOLATION.
  virtual void release(const TenantId& tenant, const SliceId& slice) = 0;
  virtual KpiReport report(const TenantId& tenant, Interval range) = 0;
  /// Throws SCOPE_VIOLATION when any listed UE is not the tenant's.
  virtual std::vector<UeContext> user_context(const TenantId& tenant, const std::vector<UeId>& ues) = 0;
  virtual std::vector<ChargingRecord> charging(const TenantId& tenant, Interval range) = 0;
};

/// Whether a session of `scope` may send a message of `type`.
bool scope_allows(SessionScope scope, MessageType type) noexcept;

class GatewaySession;

class Gateway {
 public:
  /// Throws CONFIG_INVALID when a party's scope and tenant kind disagree or
  /// a party is listed twice.
  Gateway(TenantApi& api, std::vector<Credentials> parties);

  /// Serializes every backend call; hosts advancing the backend's clock take
  /// it too.
  std::mutex& mutex() noexcept { return mutex_; }

  GatewaySession open_session();

  /// Throws AUTH_FAILED.
  Session authenticate(const AuthRequest& req);

 private:
  friend class GatewaySession;

  TenantApi& api_;
  std::map<std::string, Credentials> parties_;
  std::mutex mutex_;
  std::uint64_t next_session_ = 0;
};

/// One connection's protocol state. Lines are handled strictly in arrival
/// order, which keeps per-session completion order equal to submission order.
class GatewaySession {
 public:
  /// Handles one request line and returns the canonical response line.
  std::string handle_line(const std::string& line);
  Message handle(const Message& m);

  const std::optional<Session>& session() const noexcept { return session_; }

 private:
  friend class Gateway;
  explicit GatewaySession(Gateway& gw) : gw_(&gw) {}

  Message dispatch(const Message& m);

  Gateway* gw_;
  std::optional<Session> session_;
};

/// In-process client bound to one gateway session.
class LoopbackClient {
 public:
  explicit LoopbackClient(Gateway& gw) : session_(gw.open_session()) {}

  /// Sends `body` with the next sequence number and returns the reply.
  Message call(MessageBody body);
  /// AUTH_REQ; throws Error with the returned code on failure.
  AuthResponse authenticate(const std::string& party, const std::string& secret);

  GatewaySession& session() noexcept { return session_; }

 private:
  GatewaySession session_;
  std::int64_t next_seq_ = 1;
};

}  // namespace slicebroker
