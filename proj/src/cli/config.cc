#include "cgate/cli/config.h"

#include <cstdlib>
#include <thread>

#include "cgate/common/error.h"
#include "cgate/common/files.h"
#include "cgate/common/text.h"

namespace cgate::cli {

namespace fs = std::filesystem;

namespace {

const std::map<std::string, std::string> kEnvNames = {
    {"cache_dir", "CGATE_CACHE_DIR"}, {"blocklist", "CGATE_BLOCKLIST"}, {"jobs", "CGATE_JOBS"},
    {"cutoff", "CGATE_CUTOFF"},       {"rps", "CGATE_RPS"},             {"log_level", "CGATE_LOG_LEVEL"},
    {"tokenizer", "CGATE_TOKENIZER"},
};

fs::path Absolute(const std::string& p) {
  std::error_code ec;
  fs::path abs = fs::absolute(p, ec);
  if (ec) throw UsageError("cannot resolve path '" + p + "'");
  return abs.lexically_normal();
}

}  // namespace

EnvLookup ProcessEnvironment() {
  return [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  };
}

RawSettings ParseConfigFile(const fs::path& path) {
  RawSettings settings;
  size_t line_no = 0;
  const std::string content = files::ReadFile(path);
  for (std::string_view line : text::Split(content, '\n')) {
    ++line_no;
    if (const size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::Trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    settings[std::string(text::Trim(line.substr(0, eq)))] = std::string(text::Trim(line.substr(eq + 1)));
  }
  return settings;
}

text::TokenizerConfig ParseTokenizerSpec(const std::string& spec) {
  text::TokenizerConfig config{false, false, false, text::TokenUnit::kWords};
  if (text::AsciiLower(spec) == "none") return config;
  for (std::string_view part : text::Split(spec, ',')) {
    const std::string p = text::AsciiLower(text::Trim(part));
    if (p == "nfc") config.nfc = true;
    else if (p == "fold" || p == "casefold") config.casefold = true;
    else if (p == "punct" || p == "strip-punct") config.strip_punct = true;
    else if (p == "chars") config.unit = text::TokenUnit::kChars;
    else if (p == "words" || p.empty()) continue;
    else throw UsageError("unknown tokenizer option '" + p + "'");
  }
  return config;
}

ToolConfig ResolveConfig(const RawSettings& flags, const EnvLookup& env,
                         const std::optional<fs::path>& config_file) {
  RawSettings file;
  if (config_file) file = ParseConfigFile(*config_file);

  auto lookup = [&](const std::string& key) -> std::optional<std::string> {
    if (auto it = flags.find(key); it != flags.end() && !it->second.empty()) return it->second;
    if (auto it = kEnvNames.find(key); it != kEnvNames.end() && env) {
      if (auto v = env(it->second); v && !v->empty()) return v;
    }
    if (auto it = file.find(key); it != file.end() && !it->second.empty()) return it->second;
    return std::nullopt;
  };

  ToolConfig config;
  config.cache_dir = Absolute(lookup("cache_dir").value_or("cgate-cache"));
  if (auto b = lookup("blocklist")) config.blocklist = Absolute(*b);
  if (auto t = lookup("tokenizer")) config.tokenizer = ParseTokenizerSpec(*t);
  if (auto c = lookup("cutoff")) {
    auto date = CalendarDate::Parse(*c);
    if (!date) throw UsageError("cutoff must be YYYY-MM-DD, got '" + *c + "'");
    config.cutoff = *date;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  config.jobs = hw == 0 ? 1 : static_cast<int>(hw);
  if (auto j = lookup("jobs")) {
    try {
      size_t used = 0;
      config.jobs = std::stoi(*j, &used);
      if (used != j->size()) throw std::invalid_argument(*j);
    } catch (const std::exception&) {
      throw UsageError("jobs must be an integer, got '" + *j + "'");
    }
    if (config.jobs < 1) throw UsageError("jobs must be at least 1");
  }
  if (auto r = lookup("rps")) {
    try {
      config.rps = std::stod(*r);
    } catch (const std::exception&) {
      throw UsageError("rps must be a number, got '" + *r + "'");
    }
    if (config.rps < 0) throw UsageError("rps must be non-negative");
  }
  if (auto l = lookup("log_level")) {
    if (!log::ParseLevel(*l, config.log_level)) throw UsageError("unknown log level '" + *l + "'");
  }
  return config;
}

}  // namespace cgate::cli
