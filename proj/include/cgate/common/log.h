#pragma once

#include <sstream>
#include <string>
#include <string_view>

namespace cgate::log {

enum class Level { kDebug = 0, kInfo = 1, kWarn = 2, kError = 3, kOff = 4 };

void SetLevel(Level level);
Level GetLevel();
bool ParseLevel(std::string_view name, Level& out);

// Thread-safe; writes a single line to standard error.
void Write(Level level, std::string_view message);

template <typename... Args>
void Log(Level level, const Args&... args) {
  if (level < GetLevel()) return;
  std::ostringstream os;
  (os << ... << args);
  Write(level, os.str());
}

template <typename... Args>
void Debug(const Args&... args) { Log(Level::kDebug, args...); }
template <typename... Args>
void Info(const Args&... args) { Log(Level::kInfo, args...); }
template <typename... Args>
void Warn(const Args&... args) { Log(Level::kWarn, args...); }
template <typename... Args>
void Err(const Args&... args) { Log(Level::kError, args...); }

}  // namespace cgate::log
