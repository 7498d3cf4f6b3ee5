#pragma once

// Straightforward reference implementations used as test oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

namespace cgate::testing {

// O(|a||b|) dynamic program for the longest common contiguous run.
template <typename T>
size_t LccsDp(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  size_t best = 0;
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

inline std::map<std::vector<std::string>, size_t> NgramCounts(const std::vector<std::string>& t, size_t n) {
  std::map<std::vector<std::string>, size_t> counts;
  for (size_t i = 0; i + n <= t.size(); ++i) counts[std::vector<std::string>(t.begin() + i, t.begin() + i + n)]++;
  return counts;
}

inline double BleuReference(const std::vector<std::string>& cand, const std::vector<std::vector<std::string>>& refs,
                            int max_n, double eps) {
  if (cand.empty() || refs.empty()) return 0.0;
  double log_sum = 0.0;
  int orders = 0;
  for (int n = 1; n <= max_n; ++n) {
    if (cand.size() < static_cast<size_t>(n)) break;
    const auto c = NgramCounts(cand, n);
    std::map<std::vector<std::string>, size_t> max_ref;
    for (const auto& r : refs) {
      for (const auto& [g, k] : NgramCounts(r, n)) max_ref[g] = std::max(max_ref[g], k);
    }
    size_t matches = 0;
    for (const auto& [g, k] : c) {
      auto it = max_ref.find(g);
      if (it != max_ref.end()) matches += std::min(k, it->second);
    }
    const double total = static_cast<double>(cand.size() - n + 1);
    log_sum += std::log(matches == 0 ? eps / total : matches / total);
    ++orders;
  }
  size_t r = refs[0].size();
  for (const auto& ref : refs) {
    const auto d = std::llabs(static_cast<long long>(ref.size()) - static_cast<long long>(cand.size()));
    const auto best = std::llabs(static_cast<long long>(r) - static_cast<long long>(cand.size()));
    if (d < best || (d == best && ref.size() < r)) r = ref.size();
  }
  const double bp = cand.size() > r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(cand.size()));
  return bp * std::exp(log_sum / orders);
}

}  // namespace cgate::testing
