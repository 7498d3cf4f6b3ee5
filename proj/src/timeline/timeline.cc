#include "cgate/timeline/timeline.h"

#include <algorithm>
#include <cstdlib>

#include "cgate/common/digest.h"
#include "cgate/common/error.h"
#include "cgate/common/log.h"
#include "cgate/common/text.h"
#include "cgate/rep/robots.h"

namespace cgate::timeline {

namespace {

bool ValidHostname(std::string_view host) {
  if (host.empty() || host.size() > 253 || host.front() == '.' || host.front() == '-') return false;
  for (char c : host) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '.';
    if (!ok) return false;
  }
  return host.find("..") == std::string_view::npos;
}

std::optional<YearMonth> MonthOfTimestamp(std::string_view ts) {
  if (ts.size() < 6) return std::nullopt;
  return YearMonth::Parse(std::string(ts.substr(0, 4)) + "-" + std::string(ts.substr(4, 2)));
}

}  // namespace

std::string_view FetchStatusName(FetchStatus s) {
  switch (s) {
    case FetchStatus::kOk: return "ok";
    case FetchStatus::kNetworkUnavailable: return "network-unavailable";
    case FetchStatus::kDomainNotArchived: return "domain-not-archived";
  }
  return "ok";
}

const Capture* SelectCapture(const std::vector<Capture>& captures, YearMonth month) {
  const int64_t mid = month.MidpointEpoch();
  const Capture* best = nullptr;
  int64_t best_distance = 0;
  int64_t best_time = 0;
  for (const Capture& c : captures) {
    if (MonthOfTimestamp(c.timestamp) != month) continue;
    const auto t = ParseArchiveTimestamp(c.timestamp);
    if (!t) continue;
    const int64_t distance = std::llabs(*t - mid);
    if (best == nullptr || distance < best_distance || (distance == best_distance && *t < best_time)) {
      best = &c;
      best_distance = distance;
      best_time = *t;
    }
  }
  return best;
}

FetchResult FetchSnapshots(const FetchRequest& request, const SnapshotCache& cache, ArchiveClient* client) {
  const std::string domain = text::AsciiLower(request.domain);
  if (!ValidHostname(domain)) throw InputError("invalid domain: '" + request.domain + "'");

  // Months outside [1995-01, current month] cannot have captures.
  const YearMonth from = std::max(request.from, YearMonth{1995, 1});
  const YearMonth to = std::min(request.to, YearMonth::CurrentUtc());
  const std::vector<YearMonth> months = MonthRange(from, to);
  if (months.empty()) {
    throw InputError("empty month range " + request.from.ToString() + ".." + request.to.ToString());
  }

  FetchResult result;
  std::map<YearMonth, SnapshotRecord> index = cache.LoadIndex(domain);
  std::vector<YearMonth> missing;
  for (const YearMonth& m : months) {
    if (!index.count(m)) missing.push_back(m);
  }

  if (!missing.empty() && !request.offline) {
    if (client == nullptr) throw UsageError("online fetch requested without an archive client");
    bool changed = false;
    try {
      const std::vector<Capture> captures =
          client->ListCaptures(domain + "/robots.txt", missing.front(), missing.back());
      for (const YearMonth& m : missing) {
        const Capture* chosen = SelectCapture(captures, m);
        SnapshotRecord record;
        record.domain = domain;
        record.month = m;
        if (chosen == nullptr) {
          // The current month may still gain a capture, so it is not marked.
          if (m == YearMonth::CurrentUtc()) continue;
          record.status = StatusClass::kNone;
          index[m] = record;
          changed = true;
          continue;
        }
        record.fetched_at = chosen->timestamp;
        std::optional<int> code = chosen->status_code;
        std::string body;
        if (!code || ClassifyHttpStatus(*code) == StatusClass::k2xx) {
          try {
            Fetched fetched = client->Download(*chosen);
            code = fetched.status;
            body = std::move(fetched.body);
          } catch (const NetworkError& e) {
            result.annotations[m] = e.what();
            result.status = FetchStatus::kNetworkUnavailable;
            continue;
          }
        }
        record.status = ClassifyHttpStatus(*code);
        if (record.status == StatusClass::k2xx) {
          record.body_path = cache.WriteBody(domain, m, body);
          record.body_digest = Sha256Digest(body);
        }
        index[m] = record;
        changed = true;
      }
    } catch (const NetworkError& e) {
      log::Warn(domain, ": ", e.what());
      for (const YearMonth& m : missing) {
        if (!index.count(m) && !result.annotations.count(m)) result.annotations[m] = e.what();
      }
      result.status = FetchStatus::kNetworkUnavailable;
    }
    if (changed) cache.SaveIndex(domain, index);
  } else if (!missing.empty()) {
    for (const YearMonth& m : missing) result.annotations[m] = "not cached (offline)";
  }

  for (const YearMonth& m : months) {
    auto it = index.find(m);
    if (it != index.end() && it->second.status != StatusClass::kNone) result.records.push_back(it->second);
  }
  if (result.records.empty() && result.status == FetchStatus::kOk) {
    result.status = FetchStatus::kDomainNotArchived;
  }
  return result;
}

DomainTimeline BuildTimeline(const std::vector<SnapshotRecord>& records, const rep::AgentBlocklist& blocklist,
                             const SnapshotCache& cache, const std::string& probe_path) {
  DomainTimeline timeline;
  for (const SnapshotRecord& r : records) {
    if (timeline.domain.empty()) {
      timeline.domain = r.domain;
    } else if (r.domain != timeline.domain) {
      throw InputError("timeline records span domains " + timeline.domain + " and " + r.domain);
    }
    switch (r.status) {
      case StatusClass::k2xx: {
        const auto body = cache.ReadBody(r);
        if (!body) {
          timeline.diagnostics.push_back(r.month.ToString() + ": unreadable body " + r.body_path);
          continue;
        }
        const rep::RobotsPolicy policy = rep::ParseRobots(*body);
        const auto blocked = rep::BlockedAgents(policy, blocklist, probe_path);
        timeline.entries[r.month] = std::set<std::string>(blocked.begin(), blocked.end());
        break;
      }
      case StatusClass::k4xx:
        timeline.entries[r.month] = {};
        break;
      case StatusClass::k3xx:
        timeline.diagnostics.push_back(r.month.ToString() + ": redirected robots.txt treated as unreadable");
        break;
      case StatusClass::k5xx:
        timeline.diagnostics.push_back(r.month.ToString() + ": archived server error, no policy");
        break;
      case StatusClass::kNone:
        break;
    }
  }
  for (const auto& [month, agents] : timeline.entries) {
    for (const std::string& agent : agents) timeline.first_block.emplace(agent, month);  // months ascend
  }
  return timeline;
}

TimelineReport MakeTimelineReport(const std::vector<DomainTimeline>& timelines) {
  if (timelines.empty()) throw InputError("timeline report needs at least one domain");
  TimelineReport report;
  std::set<YearMonth> months;
  std::set<std::string> agents;
  for (const DomainTimeline& t : timelines) {
    for (const auto& [month, blocked] : t.entries) {
      months.insert(month);
      agents.insert(blocked.begin(), blocked.end());
    }
  }
  report.agents.assign(agents.begin(), agents.end());
  for (const YearMonth& m : months) {
    MonthCount row;
    row.month = m;
    for (const std::string& a : report.agents) row.per_agent[a] = 0;
    for (const DomainTimeline& t : timelines) {
      auto it = t.entries.find(m);
      if (it == t.entries.end()) continue;
      if (!it->second.empty()) ++row.blocking_domains;
      for (const std::string& a : it->second) ++row.per_agent[a];
    }
    report.months.push_back(std::move(row));
  }
  for (const DomainTimeline& t : timelines) {
    for (const auto& [agent, month] : t.first_block) report.first_blocks.push_back({t.domain, agent, month});
  }
  std::sort(report.first_blocks.begin(), report.first_blocks.end(), [](const auto& a, const auto& b) {
    return std::tie(a.domain, a.month, a.agent) < std::tie(b.domain, b.month, b.agent);
  });
  return report;
}

std::string RenderTimelineCsv(const TimelineReport& report) {
  std::string out = "month,blocking_domains";
  for (const std::string& a : report.agents) out += "," + text::CsvField(a);
  out += "\n";
  for (const MonthCount& row : report.months) {
    out += row.month.ToString() + "," + std::to_string(row.blocking_domains);
    for (const std::string& a : report.agents) out += "," + std::to_string(row.per_agent.at(a));
    out += "\n";
  }
  return out;
}

std::string RenderFirstBlocksCsv(const TimelineReport& report) {
  std::string out = "domain,agent,first_block\n";
  for (const FirstBlockRow& r : report.first_blocks) {
    out += text::CsvField(r.domain) + "," + text::CsvField(r.agent) + "," + r.month.ToString() + "\n";
  }
  return out;
}

std::string RenderTimelineJson(const TimelineReport& report) {
  nlohmann::json j;
  j["agents"] = report.agents;
  j["months"] = nlohmann::json::array();
  for (const MonthCount& row : report.months) {
    nlohmann::json per_agent = nlohmann::json::object();
    for (const auto& [agent, count] : row.per_agent) per_agent[agent] = count;
    j["months"].push_back(
        {{"month", row.month.ToString()}, {"blocking_domains", row.blocking_domains}, {"per_agent", per_agent}});
  }
  j["first_blocks"] = nlohmann::json::array();
  for (const FirstBlockRow& r : report.first_blocks) {
    j["first_blocks"].push_back({{"domain", r.domain}, {"agent", r.agent}, {"month", r.month.ToString()}});
  }
  return j.dump(2) + "\n";
}

std::string RenderTimelinePlotData(const TimelineReport& report) {
  std::string out = "# index month blocking_domains\n";
  for (size_t i = 0; i < report.months.size(); ++i) {
    out += std::to_string(i) + " " + report.months[i].month.ToString() + " " +
           std::to_string(report.months[i].blocking_domains) + "\n";
  }
  return out;
}

}  // namespace cgate::timeline
