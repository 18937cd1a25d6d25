#include "slicebroker/gateway.hpp"

#include <cstdio>

namespace slicebroker {
namespace {

std::string make_token(const std::string& party, const std::string& session_id) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : party + "/" + session_id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Message error_reply(std::int64_t seq, Errc code, std::string message) {
  return {seq, ErrorMsg{code, std::move(message)}};
}

}  // namespace

bool scope_allows(SessionScope scope, MessageType type) noexcept {
  switch (type) {
    case MessageType::SLICE_REQ:
    case MessageType::SLICE_RELEASE:
    case MessageType::CONTEXT_QUERY:
    case MessageType::CHARGING_QUERY:
      return true;
    case MessageType::KPI_REPORT:
      return scope == SessionScope::OPERATOR;
    default:
      return false;
  }
}

Gateway::Gateway(TenantApi& api, std::vector<Credentials> parties) : api_(api) {
  for (auto& c : parties) {
    const bool operator_tenant = c.tenant.kind == TenantKind::OPERATOR;
    if (operator_tenant != (c.scope == SessionScope::OPERATOR)) {
      throw Error(Errc::CONFIG_INVALID, "parties." + c.party + ": scope does not match tenant kind");
    }
    if (!is_valid(c.tenant)) throw Error(Errc::CONFIG_INVALID, "parties." + c.party + ".tenant");
    const std::string name = c.party;
    if (!parties_.emplace(name, std::move(c)).second) {
      throw Error(Errc::CONFIG_INVALID, "parties." + name + ": duplicate party");
    }
  }
}

GatewaySession Gateway::open_session() { return GatewaySession(*this); }

Session Gateway::authenticate(const AuthRequest& req) {
  std::lock_guard lock(mutex_);
  auto it = parties_.find(req.party);
  if (it == parties_.end() || it->second.secret != req.secret) {
    throw Error(Errc::AUTH_FAILED, "bad credentials for '" + req.party + "'");
  }
  Session s;
  s.session_id = "sess-" + std::to_string(++next_session_);
  s.tenant = it->second.tenant;
  s.scope = it->second.scope;
  s.auth_token = make_token(req.party, s.session_id);
  return s;
}

std::string GatewaySession::handle_line(const std::string& line) {
  Message in;
  try {
    in = decode(line);
  } catch (const Error& e) {
    return encode(error_reply(0, e.code(), e.detail()));
  }
  return encode(handle(in));
}

Message GatewaySession::handle(const Message& m) {
  try {
    return dispatch(m);
  } catch (const Error& e) {
    return error_reply(m.seq, e.code(), e.detail());
  }
}

Message GatewaySession::dispatch(const Message& m) {
  if (const auto* auth = std::get_if<AuthRequest>(&m.body)) {
    if (session_) throw Error(Errc::BAD_REQUEST, "session already authenticated");
    session_ = gw_->authenticate(*auth);
    return {m.seq, AuthResponse{session_->session_id, session_->auth_token, session_->tenant, session_->scope}};
  }
  if (!session_) throw Error(Errc::AUTH_REQUIRED, "authenticate first");
  if (!scope_allows(session_->scope, m.type())) {
    throw Error(Errc::SCOPE_VIOLATION,
                std::string(enum_name(m.type())) + " not permitted for " + std::string(enum_name(session_->scope)));
  }

  const TenantId& tenant = session_->tenant;
  TenantApi& api = gw_->api_;
  std::lock_guard lock(gw_->mutex_);

  switch (m.type()) {
    case MessageType::SLICE_REQ: {
      const auto& req = std::get<SliceRequest>(m.body);
      if (req.tenant != tenant) throw Error(Errc::TENANT_MISMATCH, req.tenant.str() + " != " + tenant.str());
      return {m.seq, api.submit(req)};
    }
    case MessageType::SLICE_RELEASE: {
      const auto& rel = std::get<SliceRelease>(m.body);
      api.release(tenant, rel.slice_id);
      return {m.seq, SliceRelease{rel.slice_id, true}};
    }
    case MessageType::KPI_REPORT: {
      const auto& q = std::get<KpiReportMsg>(m.body);
      return {m.seq, KpiReportMsg{q.range, api.report(tenant, q.range)}};
    }
    case MessageType::CONTEXT_QUERY: {
      const auto& q = std::get<ContextQuery>(m.body);
      return {m.seq, ContextResponse{api.user_context(tenant, q.ue_ids)}};
    }
    case MessageType::CHARGING_QUERY: {
      const auto& q = std::get<ChargingQuery>(m.body);
      return {m.seq, ChargingResponse{q.range, api.charging(tenant, q.range)}};
    }
    default:
      throw Error(Errc::SCOPE_VIOLATION, "unexpected message");
  }
}

Message LoopbackClient::call(MessageBody body) {
  Message m{next_seq_++, std::move(body)};
  return decode(session_.handle_line(encode(m)));
}

AuthResponse LoopbackClient::authenticate(const std::string& party, const std::string& secret) {
  Message reply = call(AuthRequest{party, secret});
  if (const auto* err = std::get_if<ErrorMsg>(&reply.body)) throw Error(err->code, err->message);
  return std::get<AuthResponse>(reply.body);
}

}  // namespace slicebroker
