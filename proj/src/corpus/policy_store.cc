#include "cgate/corpus/policy_store.h"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "cgate/common/error.h"
#include "cgate/common/files.h"
#include "cgate/common/log.h"
#include "cgate/common/text.h"
#include "cgate/timeline/snapshot_cache.h"

namespace cgate::corpus {

namespace fs = std::filesystem;

void PolicyStore::Add(std::string host, rep::RobotsPolicy policy) {
  policies_[text::AsciiLower(host)] = std::make_shared<const rep::RobotsPolicy>(std::move(policy));
}

const rep::RobotsPolicy& PolicyStore::Lookup(std::string_view host) const {
  static const rep::RobotsPolicy kMissing = rep::RobotsPolicy::WithStatus(rep::SourceStatus::kMissingFile);
  if (auto it = policies_.find(host); it != policies_.end()) return *it->second;
  if (text::StartsWith(host, "www.")) {
    if (auto it = policies_.find(host.substr(4)); it != policies_.end()) return *it->second;
  } else {
    if (auto it = policies_.find("www." + std::string(host)); it != policies_.end()) return *it->second;
  }
  return kMissing;
}

namespace {

// Optional "<host>.status" companion holding the HTTP status of the fetch.
std::optional<int> FlatStatus(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) return std::nullopt;
  const std::string raw(text::Trim(files::ReadFile(path)));
  int code = 0;
  const auto [ptr, err] = std::from_chars(raw.data(), raw.data() + raw.size(), code);
  if (err != std::errc() || ptr != raw.data() + raw.size() || code < 100 || code > 599) {
    throw InputError("bad status file: " + path.string());
  }
  return code;
}

}  // namespace

PolicyStore PolicyStore::LoadDirectory(const fs::path& dir, const CalendarDate& cutoff) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw InputError("policy directory not found: " + dir.string());
  PolicyStore store;
  const timeline::SnapshotCache cache(dir);
  char cutoff_stamp[16];
  std::snprintf(cutoff_stamp, sizeof(cutoff_stamp), "%04d%02d%02d235959", cutoff.year, cutoff.month, cutoff.day);

  std::vector<fs::directory_entry> entries;
  for (const auto& entry : fs::directory_iterator(dir)) entries.push_back(entry);
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.path().filename() < b.path().filename(); });

  for (const auto& entry : entries) {
    const std::string name = entry.path().filename().string();
    if (entry.is_directory() && cache.HasDomain(name)) {
      const auto index = cache.LoadIndex(name);
      const timeline::SnapshotRecord* latest = nullptr;
      for (const auto& [month, record] : index) {
        if (record.status == timeline::StatusClass::kNone) continue;
        if (record.fetched_at.substr(0, 14) > std::string_view(cutoff_stamp)) continue;
        if (latest == nullptr || record.fetched_at > latest->fetched_at) latest = &record;
      }
      if (latest == nullptr) continue;
      switch (latest->status) {
        case timeline::StatusClass::k2xx:
          if (auto body = cache.ReadBody(*latest)) {
            store.Add(name, rep::ParseRobots(*body));
          } else {
            log::Warn("unreadable cached body ", latest->body_path);
            store.Add(name, rep::RobotsPolicy::WithStatus(rep::SourceStatus::kUnreadable));
          }
          break;
        case timeline::StatusClass::k3xx:
          store.Add(name, rep::RobotsPolicy::WithStatus(rep::SourceStatus::kUnreadable));
          break;
        case timeline::StatusClass::k4xx:
          store.Add(name, rep::ParseRobots("", 404));
          break;
        case timeline::StatusClass::k5xx:
          store.Add(name, rep::ParseRobots("", 503));
          break;
        case timeline::StatusClass::kNone:
          break;
      }
    } else if (entry.is_regular_file() && text::EndsWith(name, ".robots.txt")) {
      const std::string host = name.substr(0, name.size() - std::string_view(".robots.txt").size());
      store.Add(host, rep::ParseRobots(files::ReadFile(entry.path()), FlatStatus(dir / (host + ".status"))));
    } else if (entry.is_regular_file() && text::EndsWith(name, ".status")) {
      // A status file without a body records a failed fetch.
      const std::string host = name.substr(0, name.size() - std::string_view(".status").size());
      if (!fs::exists(dir / (host + ".robots.txt"))) store.Add(host, rep::ParseRobots("", FlatStatus(entry.path())));
    }
  }
  return store;
}

}  // namespace cgate::corpus
