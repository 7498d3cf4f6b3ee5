#include "cgate/text/tokenizer.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "cgate/common/digest.h"
#include "cgate/common/error.h"
#include "cgate/common/text.h"

namespace cgate::text {

namespace {

bool IsAscii(std::string_view s) {
  for (char c : s) {
    if (static_cast<unsigned char>(c) >= 0x80) return false;
  }
  return true;
}

const icu::Normalizer2& Nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || nfc == nullptr) throw Error(ErrorKind::kInput, "ICU NFC unavailable");
  return *nfc;
}

// Applies normalization and case folding, returning UTF-32 code points.
std::u32string Prepare(std::string_view raw, const TokenizerConfig& config) {
  std::u32string out;
  if (IsAscii(raw)) {
    out.reserve(raw.size());
    for (char c : raw) {
      char32_t cp = static_cast<unsigned char>(c);
      if (config.casefold && cp >= 'A' && cp <= 'Z') cp = cp - 'A' + 'a';
      out.push_back(cp);
    }
    return out;
  }
  const std::string clean = SanitizeUtf8(raw);
  icu::UnicodeString us = icu::UnicodeString::fromUTF8(icu::StringPiece(clean.data(), static_cast<int32_t>(clean.size())));
  if (config.nfc) {
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString normalized = Nfc().normalize(us, status);
    if (U_SUCCESS(status)) us = normalized;
  }
  if (config.casefold) us.foldCase(U_FOLD_CASE_DEFAULT);
  out.reserve(static_cast<size_t>(us.length()));
  for (int32_t i = 0; i < us.length();) {
    const UChar32 cp = us.char32At(i);
    out.push_back(static_cast<char32_t>(cp));
    i += U16_LENGTH(cp);
  }
  return out;
}

void AppendUtf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool IsSpace(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }
bool IsPunct(char32_t cp) { return u_ispunct(static_cast<UChar32>(cp)); }

// Calls emit(begin, end) for each token span of `cps`.
template <typename Emit>
void Segment(const std::u32string& cps, const TokenizerConfig& config, Emit&& emit) {
  if (config.unit == TokenUnit::kChars) {
    for (size_t i = 0; i < cps.size(); ++i) {
      if (IsSpace(cps[i])) continue;
      if (config.strip_punct && IsPunct(cps[i])) continue;
      emit(i, i + 1);
    }
    return;
  }
  size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && IsSpace(cps[i])) ++i;
    size_t j = i;
    while (j < cps.size() && !IsSpace(cps[j])) ++j;
    size_t b = i, e = j;
    if (config.strip_punct) {
      while (b < e && IsPunct(cps[b])) ++b;
      while (e > b && IsPunct(cps[e - 1])) --e;
    }
    if (b < e) emit(b, e);
    i = j;
  }
}

}  // namespace

std::string TokenizerConfig::Id() const {
  std::string id = unit == TokenUnit::kWords ? "uws-split" : "codepoints";
  id += nfc ? ";nfc=1" : ";nfc=0";
  id += casefold ? ";fold=1" : ";fold=0";
  id += strip_punct ? ";punct=1" : ";punct=0";
  return id;
}

std::string TokenizerConfig::Hash() const { return Hex64(Fnv1a64(Id())); }

std::vector<std::string> Tokenizer::Tokenize(std::string_view text) const {
  const std::u32string cps = Prepare(text, config_);
  std::vector<std::string> tokens;
  Segment(cps, config_, [&](size_t b, size_t e) {
    std::string tok;
    tok.reserve(e - b);
    for (size_t k = b; k < e; ++k) AppendUtf8(tok, cps[k]);
    tokens.push_back(std::move(tok));
  });
  return tokens;
}

size_t Tokenizer::Count(std::string_view text) const {
  const std::u32string cps = Prepare(text, config_);
  size_t n = 0;
  Segment(cps, config_, [&](size_t, size_t) { ++n; });
  return n;
}

}  // namespace cgate::text
