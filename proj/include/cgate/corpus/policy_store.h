#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "cgate/common/year_month.h"
#include "cgate/rep/robots.h"

namespace cgate::corpus {

// Read-only map from hostname to its robots.txt policy. Hosts without an
// entry resolve to a MissingFile policy. "www.<host>" and "<host>" are
// treated as aliases when only one of them is present.
class PolicyStore {
 public:
  void Add(std::string host, rep::RobotsPolicy policy);
  const rep::RobotsPolicy& Lookup(std::string_view host) const;
  size_t size() const { return policies_.size(); }

  // Loads a directory holding either a snapshot cache (<host>/index.json,
  // choosing the latest capture taken on or before `cutoff`) or flat
  // <host>.robots.txt files (with an optional <host>.status holding the HTTP
  // status of the fetch), or a mix. Throws InputError if `dir` is absent.
  static PolicyStore LoadDirectory(const std::filesystem::path& dir, const CalendarDate& cutoff);

 private:
  std::map<std::string, std::shared_ptr<const rep::RobotsPolicy>, std::less<>> policies_;
};

}  // namespace cgate::corpus
