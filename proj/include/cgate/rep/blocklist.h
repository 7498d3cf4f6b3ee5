#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cgate/rep/robots.h"

namespace cgate::rep {

// Ordered, de-duplicated crawler tokens whose opt-outs are honored. The
// literal "*" entry stands for "the site's default group disallows the path".
class AgentBlocklist {
 public:
  // Throws InputError when no tokens remain.
  static AgentBlocklist FromTokens(const std::vector<std::string>& tokens);

  // One token per line; '#' comments, blank lines, surrounding quotes and
  // trailing commas are ignored, so a Python-style list pastes in directly.
  static AgentBlocklist Parse(std::string_view content);
  static AgentBlocklist Load(const std::filesystem::path& path);

  // The crawler list used for corpus filtering in the compliance study.
  static AgentBlocklist Default();

  const std::vector<std::string>& agents() const { return agents_; }
  bool Contains(std::string_view token) const;

 private:
  std::vector<std::string> agents_;
};

// Blocklist entries (in blocklist order) for which `path` is disallowed.
std::vector<std::string> BlockedAgents(const RobotsPolicy& policy, const AgentBlocklist& blocklist,
                                       std::string_view path, const MatchOptions& options = {});

}  // namespace cgate::rep
