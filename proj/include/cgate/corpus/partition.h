#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cgate/corpus/document.h"
#include "cgate/corpus/policy_store.h"
#include "cgate/rep/blocklist.h"

namespace cgate::corpus {

enum class FilterMode { kPathLevel, kDomainLevel };

std::string_view FilterModeName(FilterMode mode);

enum class Reason { kNone, kBlocked, kInvalidUrl, kExcludedDomain };

std::string_view ReasonName(Reason r);

struct DocDecision {
  bool compliant = true;
  Reason reason = Reason::kNone;
  std::string domain;  // registrable domain, or kInvalidUrlDomain
  std::vector<std::string> blocked_agents;
};

inline constexpr std::string_view kInvalidUrlDomain = "(invalid-url)";

struct DomainDiff {
  uint64_t docs_removed = 0;
  uint64_t tokens_removed = 0;
  uint64_t docs_total = 0;
  uint64_t tokens_total = 0;

  bool operator==(const DomainDiff&) const = default;
};

struct PartitionResult {
  std::string mode;
  std::vector<std::string> compliant_ids;     // input order
  std::vector<std::string> noncompliant_ids;  // input order
  std::map<std::string, DomainDiff> per_domain;
  uint64_t total_docs = 0;
  uint64_t total_tokens = 0;
  uint64_t removed_docs = 0;
  uint64_t removed_tokens = 0;
  uint64_t invalid_url_docs = 0;
  uint64_t invalid_url_tokens = 0;
  size_t skipped_records = 0;

  // removed_tokens / total_tokens; 0 for an empty corpus.
  double token_loss_fraction() const;
};

using Classifier = std::function<DocDecision(const DocumentRecord&)>;

// Receives every document with its decision, in input order.
class DocumentSink {
 public:
  virtual ~DocumentSink() = default;
  virtual void Accept(const DocumentRecord& doc, const DocDecision& decision) = 0;
};

struct RunOptions {
  int workers = 1;
  size_t chunk_size = 2048;
};

// Classifies documents in parallel chunks and reduces in input order, so the
// result is identical for every worker count.
PartitionResult RunPartition(CorpusReader& reader, const Classifier& classify, std::string mode,
                             const RunOptions& options = {}, DocumentSink* sink = nullptr);

// A document is non-compliant when some blocklist agent is disallowed at its
// URL path (PathLevel) or at "/" (DomainLevel) by its host's policy. URLs
// without a host are non-compliant with reason kInvalidUrl.
Classifier ComplianceClassifier(const PolicyStore& policies, const rep::AgentBlocklist& blocklist,
                                FilterMode mode, rep::MatchOptions match = {});

// Removes documents whose registrable domain is listed.
Classifier DomainExclusionClassifier(std::set<std::string> domains);

PartitionResult Partition(CorpusReader& reader, const PolicyStore& policies, const rep::AgentBlocklist& blocklist,
                          FilterMode mode, const RunOptions& options = {}, DocumentSink* sink = nullptr,
                          rep::MatchOptions match = {});

// Throws InputError when `domains` is empty.
PartitionResult ExcludeDomains(CorpusReader& reader, const std::set<std::string>& domains,
                               const RunOptions& options = {}, DocumentSink* sink = nullptr);

// Reads a domain list file: one registrable domain per line, '#' comments.
std::set<std::string> LoadDomainList(const std::filesystem::path& path);

// Writes compliant.jsonl, noncompliant.jsonl and labels.tsv under a
// directory as documents arrive.
class PartitionWriter : public DocumentSink {
 public:
  explicit PartitionWriter(const std::filesystem::path& dir);
  ~PartitionWriter() override;
  void Accept(const DocumentRecord& doc, const DocDecision& decision) override;
  // Flushes and renames the files into place. Throws OutputError.
  void Finish();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// partition.json: counts and per-domain accounting (ids live in the JSONL files).
std::string RenderPartitionSummary(const PartitionResult& result, const std::string& tokenizer_id);
PartitionResult LoadPartitionSummary(const std::filesystem::path& dir);

struct StatsRow {
  std::string domain;
  DomainDiff diff;
};

struct StatsReport {
  std::vector<StatsRow> top;
  PartitionResult totals;  // counts only
};

// Top `top_k` domains by documents removed (descending), ties broken by
// domain name. Domains with nothing removed are not ranked. Throws
// UsageError when top_k < 1.
StatsReport CorpusStats(const PartitionResult& result, size_t top_k);

std::string RenderStatsCsv(const StatsReport& report);
std::string RenderStatsJson(const StatsReport& report);

}  // namespace cgate::corpus
