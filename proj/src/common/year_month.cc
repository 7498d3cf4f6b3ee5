#include "cgate/common/year_month.h"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace cgate {

namespace {

bool ParseInt(std::string_view s, int& out) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

int DaysInMonth(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  return month == 2 && leap ? 29 : kDays[month - 1];
}

}  // namespace

// Howard Hinnant's days_from_civil.
int64_t DaysFromCivil(int year, int month, int day) {
  year -= month <= 2;
  const int64_t era = (year >= 0 ? year : year - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(year - era * 400);
  const unsigned doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

std::optional<YearMonth> YearMonth::Parse(std::string_view s) {
  if (s.size() != 7 || s[4] != '-') return std::nullopt;
  YearMonth ym;
  if (!ParseInt(s.substr(0, 4), ym.year) || !ParseInt(s.substr(5, 2), ym.month)) {
    return std::nullopt;
  }
  if (ym.month < 1 || ym.month > 12) return std::nullopt;
  return ym;
}

YearMonth YearMonth::CurrentUtc() {
  const auto now = std::chrono::system_clock::now();
  const auto days = std::chrono::floor<std::chrono::days>(now);
  const std::chrono::year_month_day ymd{days};
  return {static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month()))};
}

std::string YearMonth::ToString() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
  return buf;
}

YearMonth YearMonth::Next() const {
  return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1};
}

int64_t YearMonth::StartEpoch() const { return DaysFromCivil(year, month, 1) * 86400; }

int64_t YearMonth::MidpointEpoch() const {
  return StartEpoch() + (Next().StartEpoch() - StartEpoch()) / 2;
}

std::vector<YearMonth> MonthRange(YearMonth from, YearMonth to) {
  std::vector<YearMonth> months;
  for (YearMonth m = from; m <= to; m = m.Next()) months.push_back(m);
  return months;
}

std::optional<CalendarDate> CalendarDate::Parse(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  CalendarDate d;
  if (!ParseInt(s.substr(0, 4), d.year) || !ParseInt(s.substr(5, 2), d.month) ||
      !ParseInt(s.substr(8, 2), d.day)) {
    return std::nullopt;
  }
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > DaysInMonth(d.year, d.month)) {
    return std::nullopt;
  }
  return d;
}

std::string CalendarDate::ToString() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::optional<int64_t> ParseArchiveTimestamp(std::string_view ts) {
  if (ts.size() < 4 || ts.size() > 14) return std::nullopt;
  std::string full(ts);
  static constexpr std::string_view kPad = "00000101000000";
  full.append(kPad.substr(full.size()));
  int y, mo, d, h, mi, s;
  if (!ParseInt(std::string_view(full).substr(0, 4), y) ||
      !ParseInt(std::string_view(full).substr(4, 2), mo) ||
      !ParseInt(std::string_view(full).substr(6, 2), d) ||
      !ParseInt(std::string_view(full).substr(8, 2), h) ||
      !ParseInt(std::string_view(full).substr(10, 2), mi) ||
      !ParseInt(std::string_view(full).substr(12, 2), s)) {
    return std::nullopt;
  }
  if (mo < 1 || mo > 12 || d < 1 || d > DaysInMonth(y, mo) || h > 23 || mi > 59 || s > 60) {
    return std::nullopt;
  }
  return DaysFromCivil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

}  // namespace cgate
