#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cgate::metrics {

enum class McqKind { kMcc, kMcq };

// One multiple-choice item. MCQ records carry "question", "A".."D" and
// "answer". MCC records carry "full_prefix", "completion" and
// "contradiction_0".."contradiction_2"; the completion takes the slot named
// by "answer" when present (else "A") and the contradictions fill the other
// slots in order.
struct McqItem {
  std::string id;
  McqKind kind = McqKind::kMcq;
  std::string prompt;
  std::vector<std::pair<std::string, std::string>> options;  // label, text
  std::string gold;
};

struct McqLoadResult {
  std::vector<McqItem> items;
  size_t skipped = 0;
};

// Items without an "id" key are numbered by 0-based record index. Records
// that are not exactly four options with a valid gold label are skipped.
// Throws InputError if the file cannot be read.
McqLoadResult LoadMcqItems(const std::filesystem::path& path);

// "id,label" CSV, optional header row. Labels are upper-cased.
std::map<std::string, std::string> LoadPredictions(const std::filesystem::path& path);

struct McqScore {
  size_t total = 0;
  size_t correct = 0;
  size_t missing = 0;  // items with no prediction, counted wrong

  // 100 * correct / total; 0 when there are no items.
  double accuracy() const { return total == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(total); }
};

McqScore ScoreMcq(const std::vector<McqItem>& items, const std::map<std::string, std::string>& predictions);

}  // namespace cgate::metrics
