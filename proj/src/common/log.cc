#include "cgate/common/log.h"

#include <atomic>
#include <iostream>
#include <mutex>

#include "cgate/common/text.h"

namespace cgate::log {

namespace {
std::atomic<Level> g_level{Level::kWarn};
std::mutex g_mu;
}  // namespace

void SetLevel(Level level) { g_level.store(level); }
Level GetLevel() { return g_level.load(); }

bool ParseLevel(std::string_view name, Level& out) {
  const std::string n = text::AsciiLower(name);
  if (n == "debug") out = Level::kDebug;
  else if (n == "info") out = Level::kInfo;
  else if (n == "warn" || n == "warning") out = Level::kWarn;
  else if (n == "error") out = Level::kError;
  else if (n == "off" || n == "quiet") out = Level::kOff;
  else return false;
  return true;
}

void Write(Level level, std::string_view message) {
  static constexpr const char* kNames[] = {"debug", "info", "warn", "error", "off"};
  std::lock_guard<std::mutex> lock(g_mu);
  std::cerr << "[" << kNames[static_cast<int>(level)] << "] " << message << '\n';
}

}  // namespace cgate::log
