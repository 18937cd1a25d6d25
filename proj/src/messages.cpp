#include "slicebroker/messages.hpp"

#include "slicebroker/json_codec.hpp"

namespace slicebroker {
namespace codec {
namespace {

Json body_json(const AuthRequest& v) { return {{"party", v.party}, {"secret", v.secret}}; }
void body_read(const Json& j, const std::string& p, AuthRequest& out) {
  expect_object(j, p, {"party", "secret"});
  out.party = read_string(field(j, "party", p), p + ".party");
  out.secret = read_string(field(j, "secret", p), p + ".secret");
}

Json body_json(const AuthResponse& v) {
  return {{"session_id", v.session_id}, {"token", v.token}, {"tenant", to_json(v.tenant)}, {"scope", write_enum(v.scope)}};
}
void body_read(const Json& j, const std::string& p, AuthResponse& out) {
  expect_object(j, p, {"session_id", "token", "tenant", "scope"});
  out.session_id = read_string(field(j, "session_id", p), p + ".session_id");
  out.token = read_string(field(j, "token", p), p + ".token");
  out.tenant = read<TenantId>(field(j, "tenant", p), p + ".tenant");
  out.scope = read_enum<SessionScope>(field(j, "scope", p), p + ".scope");
}

Json body_json(const SliceRequest& v) { return to_json(v); }
void body_read(const Json& j, const std::string& p, SliceRequest& out) { from_json(j, p, out); }

Json body_json(const Decision& v) { return to_json(v); }
void body_read(const Json& j, const std::string& p, Decision& out) { from_json(j, p, out); }

Json body_json(const SliceRelease& v) { return {{"slice_id", v.slice_id}, {"released", v.released}}; }
void body_read(const Json& j, const std::string& p, SliceRelease& out) {
  expect_object(j, p, {"slice_id", "released"});
  out.slice_id = read_string(field(j, "slice_id", p), p + ".slice_id");
  out.released = j.contains("released") ? read_bool(j.at("released"), p + ".released") : false;
}

Json body_json(const KpiReportMsg& v) {
  Json j{{"range", to_json(v.range)}};
  if (v.report) j["report"] = to_json(*v.report);
  return j;
}
void body_read(const Json& j, const std::string& p, KpiReportMsg& out) {
  expect_object(j, p, {"range", "report"});
  out.range = read<Interval>(field(j, "range", p), p + ".range");
  read_optional(j, "report", p, out.report);
}

Json body_json(const ContextQuery& v) { return {{"ue_ids", write_array(v.ue_ids)}}; }
void body_read(const Json& j, const std::string& p, ContextQuery& out) {
  expect_object(j, p, {"ue_ids"});
  out.ue_ids = read_array<std::string>(field(j, "ue_ids", p), p + ".ue_ids");
}

Json ue_json(const UeContext& v) {
  Json j{{"ue_id", v.ue_id}, {"mobility", write_enum(v.mobility)}, {"avg_rate_mbps", v.avg_rate_mbps}};
  if (v.serving_cell) j["serving_cell"] = *v.serving_cell;
  return j;
}
UeContext ue_read(const Json& j, const std::string& p) {
  expect_object(j, p, {"ue_id", "mobility", "avg_rate_mbps", "serving_cell"});
  UeContext out;
  out.ue_id = read_string(field(j, "ue_id", p), p + ".ue_id");
  out.mobility = read_enum<Mobility>(field(j, "mobility", p), p + ".mobility");
  out.avg_rate_mbps = read_number(field(j, "avg_rate_mbps", p), p + ".avg_rate_mbps");
  read_optional(j, "serving_cell", p, out.serving_cell);
  return out;
}

Json body_json(const ContextResponse& v) {
  Json arr = Json::array();
  for (const auto& r : v.records) arr.push_back(ue_json(r));
  return {{"records", arr}};
}
void body_read(const Json& j, const std::string& p, ContextResponse& out) {
  expect_object(j, p, {"records"});
  const Json& arr = field(j, "records", p);
  if (!arr.is_array()) fail(p + ".records", "expected array");
  out.records.clear();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.records.push_back(ue_read(arr[i], p + ".records[" + std::to_string(i) + "]"));
  }
}

Json body_json(const ChargingQuery& v) { return {{"range", to_json(v.range)}}; }
void body_read(const Json& j, const std::string& p, ChargingQuery& out) {
  expect_object(j, p, {"range"});
  out.range = read<Interval>(field(j, "range", p), p + ".range");
}

Json charge_json(const ChargingRecord& v) {
  return {{"slice_id", v.slice_id},
          {"tenant", to_json(v.tenant)},
          {"prb_slots_consumed", v.prb_slots_consumed},
          {"qos_multiplier", v.qos_multiplier},
          {"amount", v.amount}};
}
ChargingRecord charge_read(const Json& j, const std::string& p) {
  expect_object(j, p, {"slice_id", "tenant", "prb_slots_consumed", "qos_multiplier", "amount"});
  ChargingRecord out;
  out.slice_id = read_string(field(j, "slice_id", p), p + ".slice_id");
  out.tenant = read<TenantId>(field(j, "tenant", p), p + ".tenant");
  out.prb_slots_consumed = read_int(field(j, "prb_slots_consumed", p), p + ".prb_slots_consumed");
  out.qos_multiplier = read_number(field(j, "qos_multiplier", p), p + ".qos_multiplier");
  out.amount = read_number(field(j, "amount", p), p + ".amount");
  return out;
}

Json body_json(const ChargingResponse& v) {
  Json arr = Json::array();
  for (const auto& r : v.records) arr.push_back(charge_json(r));
  return {{"range", to_json(v.range)}, {"records", arr}};
}
void body_read(const Json& j, const std::string& p, ChargingResponse& out) {
  expect_object(j, p, {"range", "records"});
  out.range = read<Interval>(field(j, "range", p), p + ".range");
  const Json& arr = field(j, "records", p);
  if (!arr.is_array()) fail(p + ".records", "expected array");
  out.records.clear();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.records.push_back(charge_read(arr[i], p + ".records[" + std::to_string(i) + "]"));
  }
}

Json body_json(const ConfigItfN& v) { return to_json(v); }
void body_read(const Json& j, const std::string& p, ConfigItfN& out) { from_json(j, p, out); }

Json body_json(const ConfigItfB& v) { return to_json(v); }
void body_read(const Json& j, const std::string& p, ConfigItfB& out) { from_json(j, p, out); }

Json body_json(const ErrorMsg& v) { return {{"code", std::string(to_string(v.code))}, {"message", v.message}}; }
void body_read(const Json& j, const std::string& p, ErrorMsg& out) {
  expect_object(j, p, {"code", "message"});
  try {
    out.code = errc_from_string(read_string(field(j, "code", p), p + ".code"));
  } catch (const Error&) {
    fail(p + ".code", "unknown error code");
  }
  out.message = read_string(field(j, "message", p), p + ".message");
}

template <std::size_t I = 0>
MessageBody read_body(std::size_t index, const Json& j) {
  if constexpr (I < std::variant_size_v<MessageBody>) {
    if (index == I) {
      std::variant_alternative_t<I, MessageBody> out{};
      body_read(j, "body", out);
      return MessageBody(std::in_place_index<I>, std::move(out));
    }
    return read_body<I + 1>(index, j);
  } else {
    fail("type", "unknown message type");
  }
}

}  // namespace
}  // namespace codec

std::string encode(const Message& m) {
  codec::Json j{{"v", kProtocolVersion},
                {"type", std::string(enum_name(m.type()))},
                {"seq", m.seq},
                {"body", std::visit([](const auto& b) { return codec::body_json(b); }, m.body)}};
  return codec::canonical(j);
}

Message decode(const std::string& line) {
  codec::Json j;
  try {
    j = codec::Json::parse(line);
  } catch (const codec::Json::exception& e) {
    throw Error(Errc::DECODE_ERROR, std::string("malformed JSON: ") + e.what());
  }
  codec::expect_object(j, "$", {"v", "type", "seq", "body"});
  if (codec::read_int(codec::field(j, "v", "$"), "v") != kProtocolVersion) codec::fail("v", "unsupported version");
  const auto type = codec::read_enum<MessageType>(codec::field(j, "type", "$"), "type");
  Message m;
  m.seq = codec::read_int(codec::field(j, "seq", "$"), "seq");
  m.body = codec::read_body(static_cast<std::size_t>(type), codec::field(j, "body", "$"));
  return m;
}

}  // namespace slicebroker
