#include "cgate/metrics/memorization.h"

#include <algorithm>
#include <map>

#include "cgate/common/files.h"
#include "cgate/common/text.h"
#include "cgate/common/vendor_json.h"
#include "cgate/metrics/bleu.h"
#include "cgate/metrics/lccs.h"

namespace cgate::metrics {

using nlohmann::json;

PrefixSplit ExtractPrefix(const std::vector<std::string>& article, size_t k, std::optional<size_t> horizon) {
  if (article.size() <= k) {
    throw TooShortError("article has " + std::to_string(article.size()) + " tokens, prefix needs more than " +
                        std::to_string(k));
  }
  PrefixSplit split;
  split.prefix.assign(article.begin(), article.begin() + static_cast<std::ptrdiff_t>(k));
  size_t end = article.size();
  if (horizon) end = std::min(end, k + *horizon);
  split.continuation.assign(article.begin() + static_cast<std::ptrdiff_t>(k),
                            article.begin() + static_cast<std::ptrdiff_t>(end));
  return split;
}

ScoredPair ScorePair(const GenerationPair& pair, int bleu_max_n) {
  ScoredPair s;
  s.article_id = pair.article_id;
  s.prefix_tokens = pair.prefix_tokens;
  s.lccs = static_cast<double>(Lccs(pair.reference_continuation, pair.generated_continuation));
  s.bleu = Bleu(pair.generated_continuation, {pair.reference_continuation}, bleu_max_n);
  return s;
}

MemorizationSummary SummarizeMemorization(const std::string& model, const std::vector<ScoredPair>& scored) {
  struct Acc {
    size_t n = 0;
    double lccs = 0.0;
    double bleu = 0.0;
  };
  std::map<size_t, Acc> by_prefix;
  Acc all;
  for (const ScoredPair& s : scored) {
    for (Acc* acc : {&by_prefix[s.prefix_tokens], &all}) {
      ++acc->n;
      acc->lccs += s.lccs;
      acc->bleu += s.bleu;
    }
  }
  MemorizationSummary summary;
  summary.model = model;
  auto row = [](std::string label, const Acc& a) {
    MemorizationRow r;
    r.prefix = std::move(label);
    r.pairs = a.n;
    if (a.n > 0) {
      r.mean_lccs = a.lccs / static_cast<double>(a.n);
      r.mean_bleu = a.bleu / static_cast<double>(a.n);
    }
    return r;
  };
  for (const auto& [prefix, acc] : by_prefix) summary.rows.push_back(row(std::to_string(prefix), acc));
  summary.rows.push_back(row("all", all));
  return summary;
}

PairsLoadResult LoadGenerationPairs(const std::filesystem::path& path, const text::Tokenizer& tokenizer) {
  PairsLoadResult result;
  files::LineReader reader(path);
  std::string line;
  while (reader.Next(line)) {
    if (text::Trim(line).empty()) continue;
    const json j = json::parse(line, nullptr, false);
    if (!j.is_object() || !j.contains("article_id") || !j.contains("prefix_tokens") || !j.contains("reference") ||
        !j.contains("generation") || !j["reference"].is_string() || !j["generation"].is_string() ||
        !j["prefix_tokens"].is_number_unsigned()) {
      ++result.skipped;
      continue;
    }
    GenerationPair pair;
    pair.article_id = j["article_id"].is_string() ? j["article_id"].get<std::string>() : j["article_id"].dump();
    pair.prefix_tokens = j["prefix_tokens"].get<size_t>();
    pair.reference_continuation = tokenizer.Tokenize(j["reference"].get<std::string>());
    pair.generated_continuation = tokenizer.Tokenize(j["generation"].get<std::string>());
    if (pair.reference_continuation.empty() || pair.generated_continuation.empty()) {
      ++result.skipped;
      continue;
    }
    result.pairs.push_back(std::move(pair));
  }
  return result;
}

std::string RenderMemorizationCsv(const std::vector<MemorizationSummary>& summaries) {
  std::string out = "model,prefix_tokens,pairs,mean_lccs,mean_bleu\n";
  for (const MemorizationSummary& s : summaries) {
    for (const MemorizationRow& r : s.rows) {
      out += text::CsvField(s.model) + "," + r.prefix + "," + std::to_string(r.pairs) + "," +
             text::FormatFixed(r.mean_lccs, 2) + "," + text::FormatFixed(r.mean_bleu, 2) + "\n";
    }
  }
  return out;
}

std::string RenderMemorizationJson(const std::vector<MemorizationSummary>& summaries) {
  json arr = json::array();
  for (const MemorizationSummary& s : summaries) {
    json rows = json::array();
    for (const MemorizationRow& r : s.rows) {
      rows.push_back({{"prefix_tokens", r.prefix}, {"pairs", r.pairs}, {"mean_lccs", r.mean_lccs},
                      {"mean_bleu", r.mean_bleu}});
    }
    arr.push_back({{"model", s.model}, {"rows", std::move(rows)}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace cgate::metrics
