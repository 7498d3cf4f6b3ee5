#pragma once

#include <string>
#include <string_view>

#include "cgate/common/year_month.h"
#include "cgate/common/vendor_json.h"

namespace cgate::timeline {

// HTTP status class of an archived robots.txt capture. kNone marks a month
// that was checked and had no capture, so re-runs need not ask again.
enum class StatusClass { k2xx, k3xx, k4xx, k5xx, kNone };

std::string_view StatusClassName(StatusClass s);
bool ParseStatusClass(std::string_view name, StatusClass& out);
StatusClass ClassifyHttpStatus(int code);

struct SnapshotRecord {
  std::string domain;
  YearMonth month;
  std::string fetched_at;  // archive capture timestamp, YYYYMMDDhhmmss
  StatusClass status = StatusClass::kNone;
  std::string body_digest;  // "sha256:<hex>", empty without a body
  std::string body_path;    // relative to the cache root, empty without a body

  bool HasBody() const { return status == StatusClass::k2xx; }
  bool operator==(const SnapshotRecord&) const = default;
};

nlohmann::json ToJson(const SnapshotRecord& r);
// Throws InputError on schema violations.
SnapshotRecord SnapshotFromJson(const nlohmann::json& j);

}  // namespace cgate::timeline
