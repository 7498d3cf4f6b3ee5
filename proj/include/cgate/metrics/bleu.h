#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cgate::metrics {

inline constexpr double kBleuEpsilon = 1e-9;

struct BleuBreakdown {
  std::vector<size_t> matches;  // clipped n-gram matches, index n-1
  std::vector<size_t> totals;   // candidate n-grams, index n-1
  size_t candidate_length = 0;
  size_t reference_length = 0;  // closest reference length, shorter on ties
  double brevity_penalty = 0.0;
  double score = 0.0;
};

// Sentence BLEU: geometric mean of clipped n-gram precisions for n = 1..max_n
// times the brevity penalty. A zero match count becomes epsilon / total.
// Orders for which the candidate has no n-grams (candidate shorter than n)
// are left out of the mean. Empty candidate or no references gives 0.
BleuBreakdown BleuDetail(const std::vector<std::string>& candidate,
                         const std::vector<std::vector<std::string>>& references, int max_n = 4,
                         double epsilon = kBleuEpsilon);

inline double Bleu(const std::vector<std::string>& candidate, const std::vector<std::vector<std::string>>& references,
                   int max_n = 4, double epsilon = kBleuEpsilon) {
  return BleuDetail(candidate, references, max_n, epsilon).score;
}

}  // namespace cgate::metrics
