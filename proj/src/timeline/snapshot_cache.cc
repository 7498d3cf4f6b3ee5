#include "cgate/timeline/snapshot_cache.h"

#include "cgate/common/error.h"
#include "cgate/common/files.h"

namespace cgate::timeline {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view StatusClassName(StatusClass s) {
  switch (s) {
    case StatusClass::k2xx: return "2xx";
    case StatusClass::k3xx: return "3xx";
    case StatusClass::k4xx: return "4xx";
    case StatusClass::k5xx: return "5xx";
    case StatusClass::kNone: return "none";
  }
  return "none";
}

bool ParseStatusClass(std::string_view name, StatusClass& out) {
  for (StatusClass s : {StatusClass::k2xx, StatusClass::k3xx, StatusClass::k4xx, StatusClass::k5xx,
                        StatusClass::kNone}) {
    if (StatusClassName(s) == name) {
      out = s;
      return true;
    }
  }
  return false;
}

StatusClass ClassifyHttpStatus(int code) {
  if (code >= 200 && code < 300) return StatusClass::k2xx;
  if (code >= 300 && code < 400) return StatusClass::k3xx;
  if (code >= 400 && code < 500) return StatusClass::k4xx;
  return StatusClass::k5xx;
}

json ToJson(const SnapshotRecord& r) {
  return json{{"domain", r.domain},
              {"month", r.month.ToString()},
              {"fetched_at", r.fetched_at},
              {"status", std::string(StatusClassName(r.status))},
              {"body_digest", r.body_digest},
              {"body_path", r.body_path}};
}

SnapshotRecord SnapshotFromJson(const json& j) {
  try {
    SnapshotRecord r;
    r.domain = j.at("domain").get<std::string>();
    const auto month = YearMonth::Parse(j.at("month").get<std::string>());
    if (!month) throw InputError("bad month in snapshot record");
    r.month = *month;
    r.fetched_at = j.at("fetched_at").get<std::string>();
    if (!ParseStatusClass(j.at("status").get<std::string>(), r.status)) {
      throw InputError("bad status in snapshot record");
    }
    r.body_digest = j.at("body_digest").get<std::string>();
    r.body_path = j.at("body_path").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed snapshot record: ") + e.what());
  }
}

SnapshotCache::SnapshotCache(fs::path root) : root_(std::move(root)) {}

bool SnapshotCache::HasDomain(std::string_view domain) const {
  std::error_code ec;
  return fs::is_regular_file(root_ / std::string(domain) / "index.json", ec);
}

std::map<YearMonth, SnapshotRecord> SnapshotCache::LoadIndex(std::string_view domain) const {
  std::map<YearMonth, SnapshotRecord> records;
  const fs::path index = root_ / std::string(domain) / "index.json";
  std::error_code ec;
  if (!fs::exists(index, ec)) return records;
  json j;
  try {
    j = json::parse(files::ReadFile(index));
  } catch (const json::exception& e) {
    throw InputError("corrupt cache index " + index.string() + ": " + e.what());
  }
  if (!j.is_array()) throw InputError("corrupt cache index " + index.string() + ": not an array");
  for (const json& item : j) {
    SnapshotRecord r = SnapshotFromJson(item);
    records[r.month] = std::move(r);
  }
  return records;
}

void SnapshotCache::SaveIndex(std::string_view domain,
                              const std::map<YearMonth, SnapshotRecord>& records) const {
  json arr = json::array();
  for (const auto& [month, record] : records) arr.push_back(ToJson(record));
  files::WriteFileAtomic(root_ / std::string(domain) / "index.json", arr.dump(2) + "\n");
}

std::string SnapshotCache::WriteBody(std::string_view domain, YearMonth month, std::string_view body) const {
  const std::string rel = std::string(domain) + "/" + month.ToString() + ".robots.txt";
  files::WriteFileAtomic(root_ / rel, body);
  return rel;
}

std::optional<std::string> SnapshotCache::ReadBody(const SnapshotRecord& record) const {
  if (record.body_path.empty()) return std::nullopt;
  try {
    return files::ReadFile(root_ / record.body_path);
  } catch (const InputError&) {
    return std::nullopt;
  }
}

}  // namespace cgate::timeline
