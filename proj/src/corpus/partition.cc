#include "cgate/corpus/partition.h"

#include <algorithm>
#include <fstream>

#include "cgate/common/error.h"
#include "cgate/common/files.h"
#include "cgate/common/parallel.h"
#include "cgate/common/text.h"
#include "cgate/common/vendor_json.h"
#include "cgate/corpus/url.h"

namespace cgate::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view FilterModeName(FilterMode mode) {
  return mode == FilterMode::kPathLevel ? "path" : "domain";
}

std::string_view ReasonName(Reason r) {
  switch (r) {
    case Reason::kNone: return "none";
    case Reason::kBlocked: return "blocked";
    case Reason::kInvalidUrl: return "invalid-url";
    case Reason::kExcludedDomain: return "excluded-domain";
  }
  return "none";
}

double PartitionResult::token_loss_fraction() const {
  if (total_tokens == 0) return 0.0;
  return static_cast<double>(removed_tokens) / static_cast<double>(total_tokens);
}

PartitionResult RunPartition(CorpusReader& reader, const Classifier& classify, std::string mode,
                             const RunOptions& options, DocumentSink* sink) {
  PartitionResult result;
  result.mode = std::move(mode);
  const size_t chunk_size = std::max<size_t>(1, options.chunk_size);
  std::vector<DocumentRecord> chunk;
  std::vector<DocDecision> decisions;
  bool more = true;
  while (more) {
    chunk.clear();
    DocumentRecord doc;
    while (chunk.size() < chunk_size && (more = reader.Next(doc))) chunk.push_back(std::move(doc));
    if (chunk.empty()) break;

    decisions.assign(chunk.size(), DocDecision{});
    ParallelFor(chunk.size(), options.workers, [&](size_t i) { decisions[i] = classify(chunk[i]); });

    for (size_t i = 0; i < chunk.size(); ++i) {
      const DocumentRecord& d = chunk[i];
      const DocDecision& decision = decisions[i];
      DomainDiff& diff = result.per_domain[decision.domain];
      ++diff.docs_total;
      diff.tokens_total += d.token_count;
      ++result.total_docs;
      result.total_tokens += d.token_count;
      if (decision.reason == Reason::kInvalidUrl) {
        ++result.invalid_url_docs;
        result.invalid_url_tokens += d.token_count;
      }
      if (decision.compliant) {
        result.compliant_ids.push_back(d.id);
      } else {
        result.noncompliant_ids.push_back(d.id);
        ++diff.docs_removed;
        diff.tokens_removed += d.token_count;
        ++result.removed_docs;
        result.removed_tokens += d.token_count;
      }
      if (sink != nullptr) sink->Accept(d, decision);
    }
  }
  result.skipped_records = reader.stats().skipped;
  return result;
}

Classifier ComplianceClassifier(const PolicyStore& policies, const rep::AgentBlocklist& blocklist, FilterMode mode,
                                rep::MatchOptions match) {
  return [&policies, &blocklist, mode, match](const DocumentRecord& doc) {
    DocDecision d;
    const auto url = ParseUrl(doc.url);
    if (!url) {
      d.compliant = false;
      d.reason = Reason::kInvalidUrl;
      d.domain = std::string(kInvalidUrlDomain);
      return d;
    }
    d.domain = RegistrableDomainOfHost(url->host);
    const rep::RobotsPolicy& policy = policies.Lookup(url->host);
    const std::string_view path = mode == FilterMode::kPathLevel ? std::string_view(url->path) : "/";
    d.blocked_agents = rep::BlockedAgents(policy, blocklist, path, match);
    if (!d.blocked_agents.empty()) {
      d.compliant = false;
      d.reason = Reason::kBlocked;
    }
    return d;
  };
}

Classifier DomainExclusionClassifier(std::set<std::string> domains) {
  return [domains = std::move(domains)](const DocumentRecord& doc) {
    DocDecision d;
    const auto url = ParseUrl(doc.url);
    if (!url) {
      d.domain = std::string(kInvalidUrlDomain);
      return d;
    }
    d.domain = RegistrableDomainOfHost(url->host);
    if (domains.count(d.domain)) {
      d.compliant = false;
      d.reason = Reason::kExcludedDomain;
    }
    return d;
  };
}

PartitionResult Partition(CorpusReader& reader, const PolicyStore& policies, const rep::AgentBlocklist& blocklist,
                          FilterMode mode, const RunOptions& options, DocumentSink* sink, rep::MatchOptions match) {
  return RunPartition(reader, ComplianceClassifier(policies, blocklist, mode, match),
                      std::string(FilterModeName(mode)), options, sink);
}

PartitionResult ExcludeDomains(CorpusReader& reader, const std::set<std::string>& domains, const RunOptions& options,
                               DocumentSink* sink) {
  if (domains.empty()) throw InputError("domain exclusion list is empty");
  return RunPartition(reader, DomainExclusionClassifier(domains), "exclude", options, sink);
}

std::set<std::string> LoadDomainList(const fs::path& path) {
  std::set<std::string> domains;
  const std::string content = files::ReadFile(path);
  for (std::string_view line : text::Split(content, '\n')) {
    if (const size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::Trim(line);
    if (!line.empty()) domains.insert(text::AsciiLower(line));
  }
  return domains;
}

struct PartitionWriter::Impl {
  fs::path dir;
  std::vector<std::pair<fs::path, fs::path>> renames;  // tmp -> final
  std::ofstream compliant, noncompliant, labels;

  std::ofstream Open(const std::string& name) {
    const fs::path final_path = dir / name;
    fs::path tmp = final_path;
    tmp += ".partial";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot write " + final_path.string());
    renames.emplace_back(tmp, final_path);
    return out;
  }
};

PartitionWriter::PartitionWriter(const fs::path& dir) : impl_(std::make_unique<Impl>()) {
  impl_->dir = dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create output directory " + dir.string() + ": " + ec.message());
  impl_->compliant = impl_->Open("compliant.jsonl");
  impl_->noncompliant = impl_->Open("noncompliant.jsonl");
  impl_->labels = impl_->Open("labels.tsv");
  impl_->labels << "id\tlabel\treason\tdomain\tblocked_agents\n";
}

PartitionWriter::~PartitionWriter() = default;

void PartitionWriter::Accept(const DocumentRecord& doc, const DocDecision& decision) {
  (decision.compliant ? impl_->compliant : impl_->noncompliant) << ToJsonLine(doc) << '\n';
  std::string id;
  for (char c : doc.id) {
    if (c == '\t') id += "\\t";
    else if (c == '\n') id += "\\n";
    else if (c == '\\') id += "\\\\";
    else id.push_back(c);
  }
  std::string agents;
  for (const std::string& a : decision.blocked_agents) {
    if (!agents.empty()) agents.push_back(',');
    agents += a;
  }
  impl_->labels << id << '\t' << (decision.compliant ? "compliant" : "noncompliant") << '\t'
                << ReasonName(decision.reason) << '\t' << decision.domain << '\t' << agents << '\n';
}

void PartitionWriter::Finish() {
  for (std::ofstream* out : {&impl_->compliant, &impl_->noncompliant, &impl_->labels}) {
    out->flush();
    if (!*out) throw OutputError("write failed under " + impl_->dir.string());
    out->close();
  }
  for (const auto& [tmp, final_path] : impl_->renames) {
    std::error_code ec;
    fs::rename(tmp, final_path, ec);
    if (ec) throw OutputError("cannot rename into " + final_path.string());
  }
}

std::string RenderPartitionSummary(const PartitionResult& r, const std::string& tokenizer_id) {
  json j = json::object();
  j["mode"] = r.mode;
  j["tokenizer"] = tokenizer_id;
  j["total_docs"] = r.total_docs;
  j["total_tokens"] = r.total_tokens;
  j["removed_docs"] = r.removed_docs;
  j["removed_tokens"] = r.removed_tokens;
  j["token_loss_fraction"] = r.token_loss_fraction();
  j["invalid_url_docs"] = r.invalid_url_docs;
  j["invalid_url_tokens"] = r.invalid_url_tokens;
  j["skipped_records"] = r.skipped_records;
  j["compliant_docs"] = r.compliant_ids.size();
  j["noncompliant_docs"] = r.noncompliant_ids.size();
  json domains = json::array();
  for (const auto& [domain, d] : r.per_domain) {
    domains.push_back({{"domain", domain},
                       {"docs_removed", d.docs_removed},
                       {"tokens_removed", d.tokens_removed},
                       {"docs_total", d.docs_total},
                       {"tokens_total", d.tokens_total}});
  }
  j["per_domain"] = std::move(domains);
  return j.dump(2) + "\n";
}

PartitionResult LoadPartitionSummary(const fs::path& dir) {
  const fs::path path = dir / "partition.json";
  PartitionResult r;
  try {
    const json j = json::parse(files::ReadFile(path));
    r.mode = j.at("mode").get<std::string>();
    r.total_docs = j.at("total_docs").get<uint64_t>();
    r.total_tokens = j.at("total_tokens").get<uint64_t>();
    r.removed_docs = j.at("removed_docs").get<uint64_t>();
    r.removed_tokens = j.at("removed_tokens").get<uint64_t>();
    r.invalid_url_docs = j.value("invalid_url_docs", uint64_t{0});
    r.invalid_url_tokens = j.value("invalid_url_tokens", uint64_t{0});
    r.skipped_records = j.value("skipped_records", size_t{0});
    for (const json& d : j.at("per_domain")) {
      DomainDiff diff;
      diff.docs_removed = d.at("docs_removed").get<uint64_t>();
      diff.tokens_removed = d.at("tokens_removed").get<uint64_t>();
      diff.docs_total = d.at("docs_total").get<uint64_t>();
      diff.tokens_total = d.at("tokens_total").get<uint64_t>();
      r.per_domain[d.at("domain").get<std::string>()] = diff;
    }
  } catch (const json::exception& e) {
    throw InputError("malformed " + path.string() + ": " + e.what());
  }
  return r;
}

StatsReport CorpusStats(const PartitionResult& result, size_t top_k) {
  if (top_k < 1) throw UsageError("top-k must be at least 1");
  StatsReport report;
  for (const auto& [domain, diff] : result.per_domain) {
    if (diff.docs_removed > 0) report.top.push_back({domain, diff});
  }
  std::sort(report.top.begin(), report.top.end(), [](const StatsRow& a, const StatsRow& b) {
    if (a.diff.docs_removed != b.diff.docs_removed) return a.diff.docs_removed > b.diff.docs_removed;
    return a.domain < b.domain;
  });
  if (report.top.size() > top_k) report.top.resize(top_k);
  report.totals = result;
  report.totals.compliant_ids.clear();
  report.totals.noncompliant_ids.clear();
  report.totals.per_domain.clear();
  return report;
}

std::string RenderStatsCsv(const StatsReport& report) {
  std::string out = "rank,domain,docs_removed,tokens_removed,docs_total,tokens_total\n";
  for (size_t i = 0; i < report.top.size(); ++i) {
    const StatsRow& row = report.top[i];
    out += std::to_string(i + 1) + "," + text::CsvField(row.domain) + "," + std::to_string(row.diff.docs_removed) +
           "," + std::to_string(row.diff.tokens_removed) + "," + std::to_string(row.diff.docs_total) + "," +
           std::to_string(row.diff.tokens_total) + "\n";
  }
  const PartitionResult& t = report.totals;
  out += "total,(all)," + std::to_string(t.removed_docs) + "," + std::to_string(t.removed_tokens) + "," +
         std::to_string(t.total_docs) + "," + std::to_string(t.total_tokens) + "\n";
  return out;
}

std::string RenderStatsJson(const StatsReport& report) {
  json j = json::object();
  json rows = json::array();
  for (size_t i = 0; i < report.top.size(); ++i) {
    const StatsRow& row = report.top[i];
    rows.push_back({{"rank", i + 1},
                    {"domain", row.domain},
                    {"docs_removed", row.diff.docs_removed},
                    {"tokens_removed", row.diff.tokens_removed},
                    {"docs_total", row.diff.docs_total},
                    {"tokens_total", row.diff.tokens_total}});
  }
  const PartitionResult& t = report.totals;
  j["top_domains"] = std::move(rows);
  j["totals"] = {{"mode", t.mode},
                 {"total_docs", t.total_docs},
                 {"total_tokens", t.total_tokens},
                 {"removed_docs", t.removed_docs},
                 {"removed_tokens", t.removed_tokens},
                 {"token_loss_fraction", t.token_loss_fraction()},
                 {"invalid_url_docs", t.invalid_url_docs},
                 {"invalid_url_tokens", t.invalid_url_tokens}};
  return j.dump(2) + "\n";
}

}  // namespace cgate::corpus
