#include <algorithm>
#include <cctype>
#include <string>
#include <unordered_map>
#include <vector>

#include "cgate/common/error.h"
#include "cgate/common/text.h"
#include "cgate/corpus/url.h"

namespace cgate::corpus {

namespace internal {
extern const std::string_view kPublicSuffixData;
}

namespace {

enum class RuleType { kNormal, kWildcard, kException };

class PublicSuffixList {
 public:
  static const PublicSuffixList& Instance() {
    static const PublicSuffixList list(internal::kPublicSuffixData);
    return list;
  }

  // Number of trailing labels forming the public suffix of `labels`.
  size_t SuffixLength(const std::vector<std::string_view>& labels) const {
    size_t best = 1;  // implicit "*" rule
    for (size_t n = 1; n <= labels.size(); ++n) {
      std::string key;
      for (size_t i = labels.size() - n; i < labels.size(); ++i) {
        if (!key.empty()) key.push_back('.');
        key.append(labels[i]);
      }
      if (auto it = exceptions_.find(key); it != exceptions_.end()) return n - 1;
      if (normal_.count(key)) best = std::max(best, n);
      if (wildcards_.count(key) && n < labels.size()) best = std::max(best, n + 1);
    }
    return best;
  }

 private:
  explicit PublicSuffixList(std::string_view data) {
    for (std::string_view line : text::Split(data, '\n')) {
      line = text::Trim(line);
      if (line.empty() || text::StartsWith(line, "//")) continue;
      if (const size_t ws = line.find_first_of(" \t"); ws != std::string_view::npos) line = line.substr(0, ws);
      if (line.front() == '!') {
        exceptions_.emplace(std::string(line.substr(1)), true);
      } else if (text::StartsWith(line, "*.")) {
        wildcards_.emplace(std::string(line.substr(2)), true);
      } else {
        normal_.emplace(std::string(line), true);
      }
    }
  }

  std::unordered_map<std::string, bool> normal_;
  std::unordered_map<std::string, bool> wildcards_;
  std::unordered_map<std::string, bool> exceptions_;
};

bool IsScheme(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') return false;
  }
  return true;
}

}  // namespace

std::optional<ParsedUrl> ParseUrl(std::string_view url) {
  url = text::Trim(url);
  const size_t sep = url.find("://");
  if (sep == std::string_view::npos || !IsScheme(url.substr(0, sep))) return std::nullopt;
  ParsedUrl out;
  out.scheme = text::AsciiLower(url.substr(0, sep));
  std::string_view rest = url.substr(sep + 3);
  const size_t auth_end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, auth_end);
  std::string_view tail = auth_end == std::string_view::npos ? std::string_view{} : rest.substr(auth_end);
  if (const size_t at = authority.rfind('@'); at != std::string_view::npos) authority = authority.substr(at + 1);

  std::string_view host;
  if (!authority.empty() && authority.front() == '[') {
    const size_t close = authority.find(']');
    if (close == std::string_view::npos) return std::nullopt;
    host = authority.substr(0, close + 1);
  } else {
    host = authority.substr(0, authority.find(':'));
  }
  out.host = text::AsciiLower(host);
  while (!out.host.empty() && out.host.back() == '.') out.host.pop_back();
  if (out.host.empty()) return std::nullopt;

  if (const size_t hash = tail.find('#'); hash != std::string_view::npos) tail = tail.substr(0, hash);
  if (tail.empty()) {
    out.path = "/";
  } else if (tail.front() == '?') {
    out.path = "/" + std::string(tail);
  } else {
    out.path = std::string(tail);
  }
  return out;
}

bool IsIpAddress(std::string_view host) {
  if (!host.empty() && host.front() == '[') return true;
  const auto parts = text::Split(host, '.');
  if (parts.size() != 4) return false;
  for (std::string_view p : parts) {
    if (p.empty() || p.size() > 3) return false;
    int v = 0;
    for (char c : p) {
      if (c < '0' || c > '9') return false;
      v = v * 10 + (c - '0');
    }
    if (v > 255) return false;
  }
  return true;
}

std::string RegistrableDomainOfHost(std::string_view host) {
  std::string h = text::AsciiLower(host);
  while (!h.empty() && h.back() == '.') h.pop_back();
  if (IsIpAddress(h)) return h;
  const std::vector<std::string_view> labels = text::Split(h, '.');
  const size_t suffix = PublicSuffixList::Instance().SuffixLength(labels);
  if (suffix >= labels.size()) return h;
  std::string out;
  for (size_t i = labels.size() - suffix - 1; i < labels.size(); ++i) {
    if (!out.empty()) out.push_back('.');
    out.append(labels[i]);
  }
  return out;
}

std::string RegistrableDomain(std::string_view url) {
  const auto parsed = ParseUrl(url);
  if (!parsed) throw InputError("no host in URL '" + std::string(url) + "'");
  return RegistrableDomainOfHost(parsed->host);
}

}  // namespace cgate::corpus
