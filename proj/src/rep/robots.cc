#include "cgate/rep/robots.h"

#include <algorithm>

#include "cgate/common/text.h"

namespace cgate::rep {

namespace {

enum class Directive { kUserAgent, kAllow, kDisallow, kOther };

Directive Classify(std::string_view key) {
  const std::string k = text::AsciiLower(key);
  // "useragent" and "user agent" are common enough misspellings that major
  // crawlers accept them.
  if (k == "user-agent" || k == "useragent" || k == "user agent") return Directive::kUserAgent;
  if (k == "allow") return Directive::kAllow;
  if (k == "disallow") return Directive::kDisallow;
  return Directive::kOther;
}

std::string EncodeForSerialization(std::string_view pattern) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char c : pattern) {
    const auto u = static_cast<unsigned char>(c);
    if (c == '%' || c == '#' || u <= 0x20 || u == 0x7F) {
      out.push_back('%');
      out.push_back(kHex[u >> 4]);
      out.push_back(kHex[u & 0xF]);
    } else {
      out.push_back(c);
    }
  }
  return out;
}

bool ContainsAgent(const RuleGroup& g, std::string_view agent) {
  return std::binary_search(g.agents.begin(), g.agents.end(), agent);
}

}  // namespace

std::string_view SourceStatusName(SourceStatus status) {
  switch (status) {
    case SourceStatus::kParsed: return "Parsed";
    case SourceStatus::kMissingFile: return "MissingFile";
    case SourceStatus::kFetchError4xx: return "FetchError4xx";
    case SourceStatus::kFetchError5xx: return "FetchError5xx";
    case SourceStatus::kUnreadable: return "Unreadable";
  }
  return "Unknown";
}

std::string_view DecisionName(Decision d) {
  return d == Decision::kAllowed ? "Allowed" : "Disallowed";
}

RobotsPolicy RobotsPolicy::WithStatus(SourceStatus status) {
  RobotsPolicy p;
  p.status_ = status;
  return p;
}

RobotsPolicy ParseRobots(std::string_view content, std::optional<int> status_hint) {
  RobotsPolicy policy;
  if (status_hint) {
    const int code = *status_hint;
    if (code >= 400 && code < 500) return RobotsPolicy::WithStatus(SourceStatus::kFetchError4xx);
    if (code >= 500 && code < 600) return RobotsPolicy::WithStatus(SourceStatus::kFetchError5xx);
  }

  std::string clean = text::SanitizeUtf8(content);
  std::string_view body = clean;
  if (text::StartsWith(body, "\xEF\xBB\xBF")) body.remove_prefix(3);

  std::vector<RuleGroup> raw;
  bool in_agent_run = false;
  ParseDiagnostics& diag = policy.diagnostics_;

  for (std::string_view line : text::Split(body, '\n')) {
    ++diag.lines;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = text::Trim(line);
    if (line.empty()) continue;

    const size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      ++diag.malformed_lines;
      continue;
    }
    const std::string_view key = text::Trim(line.substr(0, colon));
    std::string_view value = text::Trim(line.substr(colon + 1));

    switch (Classify(key)) {
      case Directive::kUserAgent: {
        // The product token ends at the first whitespace; the rest is comment.
        const size_t ws = value.find_first_of(" \t");
        if (ws != std::string_view::npos) value = value.substr(0, ws);
        if (value.empty()) {
          ++diag.malformed_lines;
          continue;
        }
        if (!in_agent_run) raw.emplace_back();
        raw.back().agents.push_back(text::AsciiLower(value));
        in_agent_run = true;
        break;
      }
      case Directive::kAllow:
      case Directive::kDisallow: {
        if (raw.empty()) {
          ++diag.orphan_rules;
          continue;
        }
        if (value.size() > kMaxPatternBytes) {
          ++diag.truncated_patterns;
          value = value.substr(0, kMaxPatternBytes);
        }
        const RuleKind kind = Classify(key) == Directive::kAllow ? RuleKind::kAllow : RuleKind::kDisallow;
        in_agent_run = false;
        // An empty Allow matches nothing; dropping it keeps serialization lossless.
        if (kind == RuleKind::kAllow && value.empty()) continue;
        raw.back().rules.push_back({kind, text::PercentDecodePath(value)});
        break;
      }
      case Directive::kOther:
        ++diag.ignored_directives;
        break;
    }
  }

  // Groups naming the same agent set collapse into one, keeping first
  // occurrence order and concatenating rules in input order.
  for (RuleGroup& g : raw) {
    std::sort(g.agents.begin(), g.agents.end());
    g.agents.erase(std::unique(g.agents.begin(), g.agents.end()), g.agents.end());
    auto same = std::find_if(policy.groups_.begin(), policy.groups_.end(),
                             [&](const RuleGroup& existing) { return existing.agents == g.agents; });
    if (same == policy.groups_.end()) {
      policy.groups_.push_back(std::move(g));
    } else {
      same->rules.insert(same->rules.end(), g.rules.begin(), g.rules.end());
    }
  }
  return policy;
}

std::optional<std::vector<Rule>> RobotsPolicy::RulesFor(std::string_view agent) const {
  auto collect = [&](std::string_view token) -> std::optional<std::vector<Rule>> {
    std::optional<std::vector<Rule>> rules;
    for (const RuleGroup& g : groups_) {
      if (!ContainsAgent(g, token)) continue;
      if (!rules) rules.emplace();
      rules->insert(rules->end(), g.rules.begin(), g.rules.end());
    }
    return rules;
  };

  if (agent != "*") {
    if (auto exact = collect(agent)) return exact;
    // "ccbot/2.0" also answers to groups declaring the bare product token.
    const size_t slash = agent.find('/');
    if (slash != std::string_view::npos && slash > 0) {
      if (auto product = collect(agent.substr(0, slash))) return product;
    }
  }
  return collect("*");
}

std::string RobotsPolicy::Serialize() const {
  std::string out;
  for (const RuleGroup& g : groups_) {
    if (!out.empty()) out.push_back('\n');
    for (const std::string& agent : g.agents) out += "User-agent: " + agent + "\n";
    if (g.rules.empty()) {
      // An empty Allow has no effect but keeps the next group's User-agent
      // lines from joining this group.
      out += "Allow:\n";
    }
    for (const Rule& r : g.rules) {
      out += r.kind == RuleKind::kAllow ? "Allow: " : "Disallow: ";
      out += EncodeForSerialization(r.pattern);
      out.push_back('\n');
    }
  }
  return out;
}

bool PatternMatches(std::string_view pattern, std::string_view path) {
  bool anchored = false;
  if (!pattern.empty() && pattern.back() == '$') {
    anchored = true;
    pattern.remove_suffix(1);
  }
  const std::vector<std::string_view> segments = text::Split(pattern, '*');
  if (segments.size() == 1) {
    return anchored ? path == pattern : text::StartsWith(path, pattern);
  }
  if (!text::StartsWith(path, segments.front())) return false;
  size_t pos = segments.front().size();
  // Leftmost placement of each middle segment leaves the most room for the
  // rest, so no backtracking is needed.
  for (size_t i = 1; i + 1 < segments.size(); ++i) {
    const size_t found = path.find(segments[i], pos);
    if (found == std::string_view::npos) return false;
    pos = found + segments[i].size();
  }
  const std::string_view last = segments.back();
  if (anchored) {
    return path.size() >= pos + last.size() && text::EndsWith(path, last);
  }
  return path.find(last, pos) != std::string_view::npos;
}

Decision IsAllowed(const RobotsPolicy& policy, std::string_view agent, std::string_view path,
                   const MatchOptions& options) {
  switch (policy.source_status()) {
    case SourceStatus::kParsed:
      break;
    case SourceStatus::kFetchError5xx:
      return options.unreachable == UnreachablePolicy::kDisallowAll ? Decision::kDisallowed
                                                                    : Decision::kAllowed;
    case SourceStatus::kMissingFile:
    case SourceStatus::kFetchError4xx:
    case SourceStatus::kUnreadable:
      return Decision::kAllowed;
  }

  std::string decoded = text::PercentDecodePath(path);
  if (decoded.empty()) decoded = "/";
  if (decoded == "/robots.txt") return Decision::kAllowed;

  const auto rules = policy.RulesFor(text::AsciiLower(agent));
  if (!rules) return Decision::kAllowed;

  size_t best_len = 0;
  bool matched = false;
  Decision best = Decision::kAllowed;
  for (const Rule& r : *rules) {
    if (r.pattern.empty()) continue;  // empty Disallow: allow all
    if (!PatternMatches(r.pattern, decoded)) continue;
    const size_t len = r.pattern.size();
    if (!matched || len > best_len) {
      matched = true;
      best_len = len;
      best = r.kind == RuleKind::kAllow ? Decision::kAllowed : Decision::kDisallowed;
    } else if (len == best_len && r.kind == RuleKind::kAllow) {
      best = Decision::kAllowed;
    }
  }
  return best;
}

}  // namespace cgate::rep
