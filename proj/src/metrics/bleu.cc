#include "cgate/metrics/bleu.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

namespace cgate::metrics {

namespace {

using NgramCounts = std::map<std::vector<std::string>, size_t>;

NgramCounts CountNgrams(const std::vector<std::string>& tokens, size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

}  // namespace

BleuBreakdown BleuDetail(const std::vector<std::string>& candidate,
                         const std::vector<std::vector<std::string>>& references, int max_n, double epsilon) {
  BleuBreakdown out;
  out.candidate_length = candidate.size();
  if (candidate.empty() || references.empty() || max_n < 1) return out;

  out.reference_length = references.front().size();
  for (const auto& ref : references) {
    const auto diff = [&](size_t len) {
      return len > candidate.size() ? len - candidate.size() : candidate.size() - len;
    };
    if (diff(ref.size()) < diff(out.reference_length) ||
        (diff(ref.size()) == diff(out.reference_length) && ref.size() < out.reference_length)) {
      out.reference_length = ref.size();
    }
  }

  double log_sum = 0.0;
  int orders = 0;
  for (int n = 1; n <= max_n; ++n) {
    const NgramCounts cand = CountNgrams(candidate, static_cast<size_t>(n));
    std::map<std::vector<std::string>, size_t> max_ref;
    for (const auto& ref : references) {
      for (const auto& [gram, count] : CountNgrams(ref, static_cast<size_t>(n))) {
        size_t& m = max_ref[gram];
        m = std::max(m, count);
      }
    }
    size_t matches = 0, total = 0;
    for (const auto& [gram, count] : cand) {
      total += count;
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) matches += std::min(count, it->second);
    }
    out.matches.push_back(matches);
    out.totals.push_back(total);
    if (total == 0) continue;
    const double precision = matches == 0 ? epsilon / static_cast<double>(total)
                                          : static_cast<double>(matches) / static_cast<double>(total);
    log_sum += std::log(precision);
    ++orders;
  }

  const double c = static_cast<double>(out.candidate_length);
  const double r = static_cast<double>(out.reference_length);
  out.brevity_penalty = out.candidate_length > out.reference_length ? 1.0 : std::exp(1.0 - r / c);
  out.score = orders == 0 ? 0.0 : out.brevity_penalty * std::exp(log_sum / orders);
  out.score = std::clamp(out.score, 0.0, 1.0);
  return out;
}

}  // namespace cgate::metrics
