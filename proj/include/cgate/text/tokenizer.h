#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cgate::text {

enum class TokenUnit { kWords, kChars };

// Token segmentation settings. Every report that depends on tokenization
// embeds Id() or Hash() so results from different settings are not mixed.
struct TokenizerConfig {
  bool nfc = true;
  bool casefold = false;
  bool strip_punct = false;
  TokenUnit unit = TokenUnit::kWords;

  // Unicode-whitespace split after NFC; used for token_count.
  static TokenizerConfig Counting() { return {}; }
  // NFC, case-folded, edge punctuation stripped; used for n-gram overlap.
  static TokenizerConfig Ngram() { return {true, true, true, TokenUnit::kWords}; }

  std::string Id() const;
  std::string Hash() const;

  bool operator==(const TokenizerConfig&) const = default;
};

class Tokenizer {
 public:
  explicit Tokenizer(TokenizerConfig config = {}) : config_(config) {}

  const TokenizerConfig& config() const { return config_; }

  std::vector<std::string> Tokenize(std::string_view text) const;
  size_t Count(std::string_view text) const;

 private:
  TokenizerConfig config_;
};

}  // namespace cgate::text
