#include "cgate/metrics/mcq.h"

#include <algorithm>
#include <cctype>
#include <optional>

#include "cgate/common/error.h"
#include "cgate/common/files.h"
#include "cgate/common/log.h"
#include "cgate/common/text.h"
#include "cgate/common/vendor_json.h"

namespace cgate::metrics {

namespace {

using nlohmann::json;

const std::vector<std::string> kLabels = {"A", "B", "C", "D"};

std::string NormalizeLabel(std::string_view raw) {
  std::string label(text::Trim(raw));
  for (char& c : label) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return label;
}

bool IsLabel(const std::string& label) {
  return std::find(kLabels.begin(), kLabels.end(), label) != kLabels.end();
}

std::optional<McqItem> ItemFromJson(const json& j, size_t index) {
  if (!j.is_object()) return std::nullopt;
  McqItem item;
  if (auto id = j.find("id"); id != j.end()) {
    item.id = id->is_string() ? id->get<std::string>() : id->dump();
  } else {
    item.id = std::to_string(index);
  }
  auto str = [&](const char* key) -> std::optional<std::string> {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) return std::nullopt;
    return it->get<std::string>();
  };

  if (auto question = str("question")) {
    item.kind = McqKind::kMcq;
    item.prompt = *question;
    for (const std::string& label : kLabels) {
      auto text = str(label.c_str());
      if (!text) return std::nullopt;
      item.options.emplace_back(label, *text);
    }
    auto answer = str("answer");
    if (!answer) return std::nullopt;
    item.gold = NormalizeLabel(*answer);
  } else if (auto prefix = str("full_prefix")) {
    item.kind = McqKind::kMcc;
    item.prompt = *prefix;
    auto completion = str("completion");
    if (!completion) return std::nullopt;
    std::vector<std::string> wrong;
    for (const char* key : {"contradiction_0", "contradiction_1", "contradiction_2"}) {
      auto text = str(key);
      if (!text) return std::nullopt;
      wrong.push_back(*text);
    }
    const auto answer = str("answer");
    item.gold = answer ? NormalizeLabel(*answer) : "A";
    if (!IsLabel(item.gold)) return std::nullopt;
    size_t next_wrong = 0;
    for (const std::string& label : kLabels) {
      item.options.emplace_back(label, label == item.gold ? *completion : wrong[next_wrong++]);
    }
  } else {
    return std::nullopt;
  }
  if (item.options.size() != 4 || !IsLabel(item.gold)) return std::nullopt;
  return item;
}

}  // namespace

McqLoadResult LoadMcqItems(const std::filesystem::path& path) {
  McqLoadResult result;
  files::LineReader reader(path);
  std::string line;
  size_t index = 0;
  while (reader.Next(line)) {
    if (text::Trim(line).empty()) continue;
    const json j = json::parse(line, nullptr, false);
    auto item = ItemFromJson(j, index++);
    if (!item) {
      ++result.skipped;
      log::Debug(path.string(), ":", reader.line_number(), ": skipped benchmark record");
      continue;
    }
    result.items.push_back(std::move(*item));
  }
  return result;
}

std::map<std::string, std::string> LoadPredictions(const std::filesystem::path& path) {
  std::map<std::string, std::string> preds;
  files::LineReader reader(path);
  std::string line;
  bool first = true;
  while (reader.Next(line)) {
    const std::string_view trimmed = text::Trim(line);
    if (trimmed.empty()) continue;
    const size_t comma = trimmed.rfind(',');
    if (comma == std::string_view::npos) throw InputError("malformed prediction line: " + std::string(trimmed));
    std::string id(text::Trim(trimmed.substr(0, comma)));
    const std::string label = NormalizeLabel(trimmed.substr(comma + 1));
    if (first && text::AsciiLower(id) == "id" && label == "LABEL") {
      first = false;
      continue;
    }
    first = false;
    if (id.size() >= 2 && id.front() == '"' && id.back() == '"') id = id.substr(1, id.size() - 2);
    preds[id] = label;
  }
  return preds;
}

McqScore ScoreMcq(const std::vector<McqItem>& items, const std::map<std::string, std::string>& predictions) {
  McqScore score;
  for (const McqItem& item : items) {
    ++score.total;
    auto it = predictions.find(item.id);
    if (it == predictions.end()) {
      ++score.missing;
      continue;
    }
    if (it->second == item.gold) ++score.correct;
  }
  return score;
}

}  // namespace cgate::metrics
