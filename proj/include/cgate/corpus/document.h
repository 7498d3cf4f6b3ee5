#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <unordered_set>

#include "cgate/common/files.h"
#include "cgate/text/tokenizer.h"

namespace cgate::corpus {

struct DocumentRecord {
  std::string id;
  std::string url;
  std::string text;
  uint64_t token_count = 0;

  bool operator==(const DocumentRecord&) const = default;
};

struct IngestStats {
  size_t records = 0;
  size_t skipped = 0;  // malformed lines, schema violations, duplicate ids
  size_t duplicate_ids = 0;
};

// Streams newline-delimited JSON documents ({"id","url","text"[,"token_count"]})
// from a plain or gzip file, in file order. Invalid records are skipped and
// counted. A missing token_count is filled in with the tokenizer.
class CorpusReader {
 public:
  // Throws InputError if the file is missing.
  CorpusReader(const std::filesystem::path& path, text::Tokenizer tokenizer = text::Tokenizer{});

  // False at end of input; throws InputError on a corrupt container.
  bool Next(DocumentRecord& doc);
  const IngestStats& stats() const { return stats_; }

 private:
  files::LineReader reader_;
  text::Tokenizer tokenizer_;
  IngestStats stats_;
  std::unordered_set<std::string> seen_ids_;
  std::string line_;
};

// One JSON line (no trailing newline) with a fixed key order.
std::string ToJsonLine(const DocumentRecord& doc);

}  // namespace cgate::corpus
