#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cgate/common/year_month.h"
#include "cgate/rep/blocklist.h"
#include "cgate/timeline/archive_client.h"
#include "cgate/timeline/snapshot_cache.h"

namespace cgate::timeline {

enum class FetchStatus {
  kOk,
  kNetworkUnavailable,  // partial results; see annotations
  kDomainNotArchived,   // no capture in range (or nothing cached when offline)
};

std::string_view FetchStatusName(FetchStatus s);

struct FetchResult {
  std::vector<SnapshotRecord> records;  // months with a capture, ascending
  FetchStatus status = FetchStatus::kOk;
  std::map<YearMonth, std::string> annotations;  // per-month errors
};

struct FetchRequest {
  std::string domain;
  YearMonth from;
  YearMonth to;
  bool offline = false;
};

// Fills the cache for every month of the request and returns the captured
// months. Months already in the cache index are never re-requested; in
// offline mode `client` may be null. Throws InputError for a bad domain or
// an empty range.
FetchResult FetchSnapshots(const FetchRequest& request, const SnapshotCache& cache,
                           ArchiveClient* client);

// Picks the capture nearest to the midpoint of `month` among those whose
// timestamp falls within it; ties go to the earlier capture.
const Capture* SelectCapture(const std::vector<Capture>& captures, YearMonth month);

struct DomainTimeline {
  std::string domain;
  std::map<YearMonth, std::set<std::string>> entries;
  std::map<std::string, YearMonth> first_block;
  std::vector<std::string> diagnostics;
};

// Evaluates each readable snapshot against the blocklist at `probe_path`.
// 2xx bodies are parsed; an archived 4xx means no file, so nothing is
// blocked; 3xx and 5xx captures contribute no entry. Throws InputError if
// records name more than one domain.
DomainTimeline BuildTimeline(const std::vector<SnapshotRecord>& records, const rep::AgentBlocklist& blocklist,
                             const SnapshotCache& cache, const std::string& probe_path = "/");

struct MonthCount {
  YearMonth month;
  size_t blocking_domains = 0;
  std::map<std::string, size_t> per_agent;  // domains blocking that agent
};

struct FirstBlockRow {
  std::string domain;
  std::string agent;
  YearMonth month;
};

struct TimelineReport {
  std::vector<std::string> agents;  // column order for per_agent
  std::vector<MonthCount> months;
  std::vector<FirstBlockRow> first_blocks;
};

// Throws InputError when `timelines` is empty.
TimelineReport MakeTimelineReport(const std::vector<DomainTimeline>& timelines);

std::string RenderTimelineCsv(const TimelineReport& report);
std::string RenderFirstBlocksCsv(const TimelineReport& report);
std::string RenderTimelineJson(const TimelineReport& report);
// Whitespace-separated columns for plotting tools: index, month, count.
std::string RenderTimelinePlotData(const TimelineReport& report);

}  // namespace cgate::timeline
