#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cgate/common/error.h"
#include "cgate/text/tokenizer.h"

namespace cgate::metrics {

class TooShortError : public InputError {
 public:
  using InputError::InputError;
};

struct PrefixSplit {
  std::vector<std::string> prefix;
  std::vector<std::string> continuation;
};

// First k tokens as the prompt, the remainder (cut to `horizon` tokens when
// given) as the reference continuation. Throws TooShortError when the article
// has k tokens or fewer.
PrefixSplit ExtractPrefix(const std::vector<std::string>& article, size_t k,
                          std::optional<size_t> horizon = std::nullopt);

struct GenerationPair {
  std::string article_id;
  size_t prefix_tokens = 0;
  std::vector<std::string> reference_continuation;
  std::vector<std::string> generated_continuation;
};

struct ScoredPair {
  std::string article_id;
  size_t prefix_tokens = 0;
  double lccs = 0.0;
  double bleu = 0.0;
};

ScoredPair ScorePair(const GenerationPair& pair, int bleu_max_n = 4);

struct MemorizationRow {
  std::string prefix;  // prefix length, or "all"
  size_t pairs = 0;
  double mean_lccs = 0.0;
  double mean_bleu = 0.0;
};

struct MemorizationSummary {
  std::string model;
  std::vector<MemorizationRow> rows;  // ascending prefix length, then "all"
};

// Per-pair means of LCCS and BLEU, by prefix length and overall.
MemorizationSummary SummarizeMemorization(const std::string& model, const std::vector<ScoredPair>& scored);

struct PairsLoadResult {
  std::vector<GenerationPair> pairs;
  size_t skipped = 0;
};

// JSONL with article_id, prefix_tokens, reference, generation. Texts are
// tokenized with `tokenizer`; records with an empty side are skipped.
PairsLoadResult LoadGenerationPairs(const std::filesystem::path& path, const text::Tokenizer& tokenizer);

// model,prefix_tokens,pairs,mean_lccs,mean_bleu with two decimals.
std::string RenderMemorizationCsv(const std::vector<MemorizationSummary>& summaries);
std::string RenderMemorizationJson(const std::vector<MemorizationSummary>& summaries);

}  // namespace cgate::metrics
