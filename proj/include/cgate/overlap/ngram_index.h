#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cgate/corpus/document.h"
#include "cgate/text/tokenizer.h"

namespace cgate::overlap {

// Digest of one length-n token window. `guard` is an independent second
// hash (zero when the guard is disabled).
struct WindowKey {
  uint64_t primary = 0;
  uint64_t guard = 0;
  bool operator==(const WindowKey&) const = default;
};

struct WindowKeyHash {
  size_t operator()(const WindowKey& k) const noexcept { return static_cast<size_t>(k.primary ^ (k.guard * 0x9e3779b97f4a7c15ULL)); }
};

// Polynomial rolling hashes modulo 2^61-1 over per-token hashes. Returns one
// key per window; empty when tokens.size() < n.
std::vector<WindowKey> WindowKeys(const std::vector<std::string>& tokens, size_t n, bool with_guard);

struct IndexOptions {
  size_t n = 50;
  text::TokenizerConfig tokenizer = text::TokenizerConfig::Ngram();
  bool collision_guard = true;
  // Keep target tokens so every hit can be re-checked token by token.
  bool verify = false;
};

struct IndexStats {
  size_t documents = 0;
  size_t short_documents = 0;  // fewer than n tokens
  size_t windows = 0;          // windows hashed, duplicates included
};

// Digests of every length-n window of the target documents.
class NgramIndex {
 public:
  // Throws UsageError when options.n < 2.
  explicit NgramIndex(IndexOptions options);

  void Add(const std::string& text);
  void AddTokens(const std::vector<std::string>& tokens);

  const IndexOptions& options() const { return options_; }
  const IndexStats& stats() const { return stats_; }
  size_t digest_count() const { return digests_.size(); }

  bool Contains(const WindowKey& key) const { return digests_.count(key) != 0; }
  // With verify enabled, true only if some indexed window equals
  // tokens[offset, offset + n) exactly. Without verify, same as Contains.
  bool Matches(const WindowKey& key, const std::vector<std::string>& tokens, size_t offset) const;

 private:
  IndexOptions options_;
  text::Tokenizer tokenizer_;
  IndexStats stats_;
  std::unordered_set<WindowKey, WindowKeyHash> digests_;
  std::vector<std::vector<std::string>> targets_;  // verify only
  std::unordered_map<WindowKey, std::vector<std::pair<uint32_t, uint32_t>>, WindowKeyHash> occurrences_;
};

// Builds an index from a corpus file of target documents.
NgramIndex BuildIndex(corpus::CorpusReader& targets, const IndexOptions& options);

struct SampleMatch {
  std::string doc_id;
  std::string window;  // matched tokens joined by single spaces
};

struct TargetOverlap {
  std::string name;
  uint64_t matched_docs = 0;
  uint64_t total_docs = 0;
  std::vector<std::string> matched_ids;  // input order
  std::vector<SampleMatch> samples;

  double matched_fraction() const {
    return total_docs == 0 ? 0.0 : static_cast<double>(matched_docs) / static_cast<double>(total_docs);
  }
};

struct OverlapReport {
  size_t n = 0;
  std::string tokenizer_id;
  std::string tokenizer_hash;
  bool collision_guard = true;
  bool verified = false;
  std::vector<TargetOverlap> targets;
};

struct NamedIndex {
  std::string name;
  const NgramIndex* index;
};

struct ScanOptions {
  text::TokenizerConfig tokenizer = text::TokenizerConfig::Ngram();
  size_t max_samples = 5;
  int workers = 1;
  size_t chunk_size = 1024;
};

// Marks a corpus document as matched for a target when at least one of its
// windows is in that target's index. Each document counts once. Throws
// InputError (tokenizer mismatch) when the scan and index settings differ.
OverlapReport Scan(corpus::CorpusReader& corpus, const std::vector<NamedIndex>& indexes, const ScanOptions& options);

std::string RenderOverlapCsv(const OverlapReport& report);
std::string RenderOverlapJson(const OverlapReport& report);

}  // namespace cgate::overlap
