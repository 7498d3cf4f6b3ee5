#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "cgate/common/log.h"
#include "cgate/common/year_month.h"
#include "cgate/text/tokenizer.h"

namespace cgate::cli {

// Settings shared by subcommands. Resolution order per key:
// command-line flag, then CGATE_* environment variable, then the config
// file, then the built-in default.
struct ToolConfig {
  std::filesystem::path cache_dir;                 // absolute
  std::optional<std::filesystem::path> blocklist;  // absolute; built-in list when unset
  text::TokenizerConfig tokenizer = text::TokenizerConfig::Counting();
  CalendarDate cutoff{2025, 1, 31};
  int jobs = 1;
  double rps = 1.0;
  log::Level log_level = log::Level::kWarn;
};

// Raw, unvalidated values for each key as given on the command line.
using RawSettings = std::map<std::string, std::string>;

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

EnvLookup ProcessEnvironment();

// Flat "key = value" lines; '#' comments. Throws InputError.
RawSettings ParseConfigFile(const std::filesystem::path& path);

// Keys: cache_dir, blocklist, tokenizer, cutoff, jobs, rps, log_level.
// Throws UsageError for invalid values.
ToolConfig ResolveConfig(const RawSettings& flags, const EnvLookup& env,
                         const std::optional<std::filesystem::path>& config_file);

// "nfc,fold,punct" style list; "none" disables everything.
text::TokenizerConfig ParseTokenizerSpec(const std::string& spec);

}  // namespace cgate::cli
