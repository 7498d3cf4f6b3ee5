#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cgate::text {

// Replaces every invalid UTF-8 sequence with U+FFFD.
std::string SanitizeUtf8(std::string_view in);

std::string_view Trim(std::string_view s);
std::string AsciiLower(std::string_view s);
bool StartsWith(std::string_view s, std::string_view prefix);
bool EndsWith(std::string_view s, std::string_view suffix);
bool EqualsIgnoreCase(std::string_view a, std::string_view b);

std::vector<std::string_view> Split(std::string_view s, char sep);

// Decodes %XX escapes once. "%2F" is kept encoded (normalized to upper case)
// because decoding it would change path structure. Malformed escapes are
// copied through unchanged.
std::string PercentDecodePath(std::string_view s);

// Formats a double with a fixed number of decimals after round-half-up.
std::string FormatFixed(double value, int decimals);

// Round-half-up at the given number of decimals, tolerant of binary
// representation error (42.75 stored as 42.7499999... still rounds up).
double RoundHalfUp(double value, int decimals);

// Quotes a CSV field when needed (RFC 4180).
std::string CsvField(std::string_view s);

}  // namespace cgate::text
