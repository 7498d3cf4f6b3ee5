#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cgate::rep {

enum class SourceStatus { kParsed, kMissingFile, kFetchError4xx, kFetchError5xx, kUnreadable };

std::string_view SourceStatusName(SourceStatus status);

enum class RuleKind { kAllow, kDisallow };

enum class Decision { kAllowed, kDisallowed };

std::string_view DecisionName(Decision d);

struct Rule {
  RuleKind kind;
  // Percent-decoded once (except %2F); may contain '*' and a trailing '$'.
  std::string pattern;

  bool operator==(const Rule&) const = default;
};

struct RuleGroup {
  // Case-folded, sorted, unique. Never empty.
  std::vector<std::string> agents;
  std::vector<Rule> rules;
};

struct ParseDiagnostics {
  size_t lines = 0;
  size_t malformed_lines = 0;     // no "key: value" shape
  size_t ignored_directives = 0;  // Sitemap, Crawl-delay, unknown keys
  size_t orphan_rules = 0;        // Allow/Disallow before any User-agent
  size_t truncated_patterns = 0;  // patterns over kMaxPatternBytes
};

inline constexpr size_t kMaxPatternBytes = 2048;

// How a robots.txt that could not be fetched because of a server error is
// interpreted. The default treats an unreachable file as a full opt-out.
enum class UnreachablePolicy { kDisallowAll, kAllowAll };

struct MatchOptions {
  UnreachablePolicy unreachable = UnreachablePolicy::kDisallowAll;
};

// Parsed rule groups of a robots.txt file. Immutable after construction and
// safe to share across threads.
class RobotsPolicy {
 public:
  RobotsPolicy() = default;

  // A policy for a file that could not be obtained; has no groups.
  static RobotsPolicy WithStatus(SourceStatus status);

  SourceStatus source_status() const { return status_; }
  const std::vector<RuleGroup>& groups() const { return groups_; }
  const ParseDiagnostics& diagnostics() const { return diagnostics_; }

  // Rules governing `agent` (already case-folded): the combined rules of
  // every group naming the best-matching token, else the `*` group, else
  // nullopt. Passing "*" selects the default group only.
  std::optional<std::vector<Rule>> RulesFor(std::string_view agent) const;

  // Serializes back to robots.txt text that re-parses to an equivalent policy.
  std::string Serialize() const;

 private:
  friend RobotsPolicy ParseRobots(std::string_view, std::optional<int>);

  SourceStatus status_ = SourceStatus::kParsed;
  std::vector<RuleGroup> groups_;
  ParseDiagnostics diagnostics_;
};

// Total: never fails. `status_hint` is the HTTP status of the fetch, when
// known; 4xx and 5xx yield empty policies with the matching source status.
RobotsPolicy ParseRobots(std::string_view content, std::optional<int> status_hint = std::nullopt);

// True when `pattern` matches `path` under REP semantics (prefix match, '*'
// wildcard, trailing '$' anchor). Both arguments are already decoded.
bool PatternMatches(std::string_view pattern, std::string_view path);

Decision IsAllowed(const RobotsPolicy& policy, std::string_view agent, std::string_view path,
                   const MatchOptions& options = {});

}  // namespace cgate::rep
