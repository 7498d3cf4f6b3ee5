#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cgate {

// A calendar month, the granularity of snapshot timelines.
struct YearMonth {
  int year = 1970;
  int month = 1;

  static std::optional<YearMonth> Parse(std::string_view s);  // "YYYY-MM"
  static YearMonth CurrentUtc();

  std::string ToString() const;
  YearMonth Next() const;

  // Seconds since the Unix epoch of the first instant of this month.
  int64_t StartEpoch() const;
  // Halfway between the start of this month and the start of the next.
  int64_t MidpointEpoch() const;

  auto operator<=>(const YearMonth&) const = default;
};

// Inclusive list of months from `from` to `to`; empty when from > to.
std::vector<YearMonth> MonthRange(YearMonth from, YearMonth to);

struct CalendarDate {
  int year = 1970;
  int month = 1;
  int day = 1;

  static std::optional<CalendarDate> Parse(std::string_view s);  // "YYYY-MM-DD"
  std::string ToString() const;
  YearMonth Month() const { return {year, month}; }

  auto operator<=>(const CalendarDate&) const = default;
};

int64_t DaysFromCivil(int year, int month, int day);

// Parses a 14-digit archive timestamp (YYYYMMDDhhmmss; shorter prefixes are
// padded with the earliest value) into epoch seconds.
std::optional<int64_t> ParseArchiveTimestamp(std::string_view ts);

}  // namespace cgate
