#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "cgate/timeline/snapshot.h"

namespace cgate::timeline {

// On-disk snapshot store:
//   <root>/<domain>/<YYYY-MM>.robots.txt
//   <root>/<domain>/index.json   (array of SnapshotRecord, sorted by month)
// All writes go through write-then-rename.
class SnapshotCache {
 public:
  explicit SnapshotCache(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  // Empty when the domain has no index yet. Throws InputError if corrupt.
  std::map<YearMonth, SnapshotRecord> LoadIndex(std::string_view domain) const;
  void SaveIndex(std::string_view domain, const std::map<YearMonth, SnapshotRecord>& records) const;

  // Stores a body and returns its cache-relative path.
  std::string WriteBody(std::string_view domain, YearMonth month, std::string_view body) const;
  std::optional<std::string> ReadBody(const SnapshotRecord& record) const;

  bool HasDomain(std::string_view domain) const;

 private:
  std::filesystem::path root_;
};

}  // namespace cgate::timeline
