#pragma once

#include "slicebroker/domain.hpp"
#include "slicebroker/topology.hpp"

namespace slicebroker {

/// A request that passed validate_request. Only constructible through it.
class ValidatedRequest {
 public:
  const SliceRequest& request() const noexcept { return request_; }
  bool operator==(const ValidatedRequest&) const = default;

 private:
  friend ValidatedRequest validate_request(const SliceRequest&, const Topology&);
  explicit ValidatedRequest(SliceRequest r) : request_(std::move(r)) {}
  SliceRequest request_;
};

/// Schema gate in front of admission. Returns a normalized copy (explicit cell
/// list sorted and deduplicated, an empty explicit list treated as absent) or
/// throws Error naming the first violated field with one of UNKNOWN_CELL,
/// BAD_TIME_SPEC, BAD_QOS_RANGE, EMPTY_RESOURCES, BAD_TENANT_ID, BAD_REQUEST.
ValidatedRequest validate_request(const SliceRequest& req, const Topology& topology);

inline ValidatedRequest validate_request(const ValidatedRequest& req, const Topology& topology) {
  return validate_request(req.request(), topology);
}

}  // namespace slicebroker
