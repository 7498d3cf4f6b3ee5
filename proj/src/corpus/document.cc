#include "cgate/corpus/document.h"

#include "cgate/common/log.h"
#include "cgate/common/text.h"
#include "cgate/common/vendor_json.h"

namespace cgate::corpus {

using nlohmann::json;

CorpusReader::CorpusReader(const std::filesystem::path& path, text::Tokenizer tokenizer)
    : reader_(path), tokenizer_(std::move(tokenizer)) {}

bool CorpusReader::Next(DocumentRecord& doc) {
  while (reader_.Next(line_)) {
    if (text::Trim(line_).empty()) continue;
    json j = json::parse(line_, nullptr, /*allow_exceptions=*/false);
    auto skip = [&](const char* why) {
      ++stats_.skipped;
      log::Debug("line ", reader_.line_number(), ": ", why);
    };
    if (!j.is_object()) {
      skip("not a JSON object");
      continue;
    }
    auto id = j.find("id");
    auto url = j.find("url");
    auto body = j.find("text");
    if (id == j.end() || url == j.end() || body == j.end() || !id->is_string() || !url->is_string() ||
        !body->is_string()) {
      skip("missing or non-string id/url/text");
      continue;
    }
    auto count = j.find("token_count");
    if (count != j.end() && !count->is_number_unsigned() &&
        !(count->is_number_integer() && count->get<int64_t>() >= 0)) {
      skip("token_count is not a non-negative integer");
      continue;
    }
    std::string id_value = id->get<std::string>();
    if (id_value.empty()) {
      skip("empty id");
      continue;
    }
    if (!seen_ids_.insert(id_value).second) {
      ++stats_.duplicate_ids;
      skip("duplicate id");
      continue;
    }
    doc.id = std::move(id_value);
    doc.url = url->get<std::string>();
    doc.text = body->get<std::string>();
    doc.token_count = count != j.end() ? count->get<uint64_t>() : tokenizer_.Count(doc.text);
    ++stats_.records;
    return true;
  }
  return false;
}

std::string ToJsonLine(const DocumentRecord& doc) {
  json j = json::object();
  j["id"] = doc.id;
  j["url"] = doc.url;
  j["text"] = doc.text;
  j["token_count"] = doc.token_count;
  // nlohmann orders object keys alphabetically, which is stable across runs.
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace cgate::corpus
