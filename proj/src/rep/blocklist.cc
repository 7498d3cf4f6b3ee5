#include "cgate/rep/blocklist.h"

#include <algorithm>

#include "cgate/common/error.h"
#include "cgate/common/files.h"
#include "cgate/common/text.h"

namespace cgate::rep {

namespace {

std::string NormalizeToken(std::string_view raw) {
  std::string_view t = text::Trim(raw);
  while (!t.empty() && (t.back() == ',' || t.back() == ' ' || t.back() == '\t')) t.remove_suffix(1);
  if (t.size() >= 2 && (t.front() == '"' || t.front() == '\'') && t.back() == t.front()) {
    t = t.substr(1, t.size() - 2);
  }
  t = text::Trim(t);
  if (t == "*") return "*";
  return text::AsciiLower(t);
}

}  // namespace

AgentBlocklist AgentBlocklist::FromTokens(const std::vector<std::string>& tokens) {
  AgentBlocklist list;
  for (const std::string& raw : tokens) {
    std::string token = NormalizeToken(raw);
    if (token.empty()) continue;
    if (std::find(list.agents_.begin(), list.agents_.end(), token) == list.agents_.end()) {
      list.agents_.push_back(std::move(token));
    }
  }
  if (list.agents_.empty()) throw InputError("blocklist is empty");
  return list;
}

AgentBlocklist AgentBlocklist::Parse(std::string_view content) {
  std::vector<std::string> tokens;
  for (std::string_view line : text::Split(content, '\n')) {
    if (const size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::Trim(line);
    if (!line.empty()) tokens.emplace_back(line);
  }
  return FromTokens(tokens);
}

AgentBlocklist AgentBlocklist::Load(const std::filesystem::path& path) {
  try {
    return Parse(files::ReadFile(path));
  } catch (const InputError& e) {
    throw InputError("blocklist " + path.string() + ": " + e.what());
  }
}

AgentBlocklist AgentBlocklist::Default() {
  return FromTokens({"AI2Bot", "Applebot-Extended", "Bytespider", "CCBot", "CCBot/2.0", "CCBot/1.0",
                     "ClaudeBot", "cohere-training-data-crawler", "Diffbot", "Meta-ExternalAgent",
                     "Google-Extended", "GPTBot", "PanguBot", "*"});
}

bool AgentBlocklist::Contains(std::string_view token) const {
  return std::find(agents_.begin(), agents_.end(), text::AsciiLower(token)) != agents_.end();
}

std::vector<std::string> BlockedAgents(const RobotsPolicy& policy, const AgentBlocklist& blocklist,
                                       std::string_view path, const MatchOptions& options) {
  std::vector<std::string> blocked;
  for (const std::string& agent : blocklist.agents()) {
    // For "*", IsAllowed consults the default group alone.
    if (IsAllowed(policy, agent, path, options) == Decision::kDisallowed) blocked.push_back(agent);
  }
  return blocked;
}

}  // namespace cgate::rep
