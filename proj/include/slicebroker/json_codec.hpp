#pragma once

// JSON mapping of the vocabulary types. Shared by the wire protocol, the
// scenario files and the on-disk logs, so all three use one object grammar.
//
// Writers omit absent optionals. Readers are strict: missing required keys,
// unknown keys and type mismatches throw Error(DECODE_ERROR) naming the
// dotted path of the offending field.

#include "json.hpp"

#include "slicebroker/broker.hpp"
#include "slicebroker/config_push.hpp"
#include "slicebroker/domain.hpp"
#include "slicebroker/error.hpp"
#include "slicebroker/telemetry.hpp"
#include "slicebroker/topology.hpp"

namespace slicebroker::codec {

using Json = nlohmann::json;

/// Compact, key-sorted serialization.
inline std::string canonical(const Json& j) { return j.dump(); }

[[noreturn]] void fail(const std::string& path, const std::string& what);

/// Throws unless `j` is an object whose keys all appear in `allowed`.
void expect_object(const Json& j, const std::string& path, std::initializer_list<std::string_view> allowed);

const Json& field(const Json& j, const std::string& key, const std::string& path);

std::int64_t read_int(const Json& j, const std::string& path);
double read_number(const Json& j, const std::string& path);
std::string read_string(const Json& j, const std::string& path);
bool read_bool(const Json& j, const std::string& path);

template <class E>
E read_enum(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected string");
  auto v = enum_from_name<E>(j.get_ref<const std::string&>());
  if (!v) fail(path, "unknown value '" + j.get<std::string>() + "'");
  return *v;
}

template <class E>
Json write_enum(E v) {
  return std::string(enum_name(v));
}

Json to_json(const TenantId& v);
Json to_json(const Interval& v);
Json to_json(const TimeSpec& v);
Json to_json(const QosProfile& v);
Json to_json(const ResourceSpec& v);
Json to_json(const ServiceInfo& v);
Json to_json(const SliceRequest& v);
Json to_json(const SliceGrant& v);
Json to_json(const Decision& v);
Json to_json(const MeasurementRecord& v);
Json to_json(const SliceKpi& v);
Json to_json(const KpiReport& v);
Json to_json(const ConfigItfN& v);
Json to_json(const ConfigItfB& v);
Json to_json(const LifecycleEvent& v);
Json to_json(const DecisionLogEntry& v);
Json to_json(const EfficiencyTable& v);
Json to_json(const SliceRegistry& v);

void from_json(const Json& j, const std::string& path, TenantId& out);
void from_json(const Json& j, const std::string& path, Interval& out);
void from_json(const Json& j, const std::string& path, TimeSpec& out);
void from_json(const Json& j, const std::string& path, QosProfile& out);
void from_json(const Json& j, const std::string& path, ResourceSpec& out);
void from_json(const Json& j, const std::string& path, ServiceInfo& out);
void from_json(const Json& j, const std::string& path, SliceRequest& out);
void from_json(const Json& j, const std::string& path, SliceGrant& out);
void from_json(const Json& j, const std::string& path, Decision& out);
void from_json(const Json& j, const std::string& path, MeasurementRecord& out);
void from_json(const Json& j, const std::string& path, SliceKpi& out);
void from_json(const Json& j, const std::string& path, KpiReport& out);
void from_json(const Json& j, const std::string& path, ConfigItfN& out);
void from_json(const Json& j, const std::string& path, ConfigItfB& out);
void from_json(const Json& j, const std::string& path, LifecycleEvent& out);
void from_json(const Json& j, const std::string& path, DecisionLogEntry& out);
void from_json(const Json& j, const std::string& path, EfficiencyTable& out);

template <class T>
T read(const Json& j, const std::string& path) {
  T out{};
  from_json(j, path, out);
  return out;
}

/// Reads `key` into `out` when present; leaves `out` untouched otherwise.
template <class T>
void read_optional(const Json& j, const std::string& key, const std::string& path, std::optional<T>& out) {
  if (!j.contains(key)) return;
  const std::string sub = path + "." + key;
  if constexpr (std::is_same_v<T, std::int64_t>) {
    out = read_int(j.at(key), sub);
  } else if constexpr (std::is_same_v<T, double>) {
    out = read_number(j.at(key), sub);
  } else if constexpr (std::is_same_v<T, std::string>) {
    out = read_string(j.at(key), sub);
  } else if constexpr (std::is_enum_v<T>) {
    out = read_enum<T>(j.at(key), sub);
  } else {
    out = read<T>(j.at(key), sub);
  }
}

template <class T>
std::vector<T> read_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected array");
  std::vector<T> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string sub = path + "[" + std::to_string(i) + "]";
    if constexpr (std::is_same_v<T, std::string>) {
      out.push_back(read_string(j[i], sub));
    } else {
      out.push_back(read<T>(j[i], sub));
    }
  }
  return out;
}

template <class T>
Json write_array(const std::vector<T>& items) {
  Json arr = Json::array();
  for (const auto& item : items) {
    if constexpr (std::is_same_v<T, std::string>) {
      arr.push_back(item);
    } else {
      arr.push_back(to_json(item));
    }
  }
  return arr;
}

}  // namespace slicebroker::codec
