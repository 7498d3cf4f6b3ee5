#pragma once

#include <zlib.h>

#include <filesystem>
#include <string>
#include <string_view>

namespace cgate::files {

// Throws InputError naming the path when the file cannot be read.
std::string ReadFile(const std::filesystem::path& path);

// Writes via a sibling temporary file and rename(2), so readers and
// concurrent writers never observe a partially written file. Throws
// OutputError on failure.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents);

// Reads newline-delimited text from plain or gzip files (detected by magic).
// Lines are returned without the trailing LF or CRLF.
class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path);
  ~LineReader();
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  // Returns false at end of input; throws InputError on a corrupt container.
  bool Next(std::string& line);
  size_t line_number() const { return line_number_; }

 private:
  bool Fill();

  std::filesystem::path path_;
  gzFile file_ = nullptr;
  std::string buffer_;
  size_t pos_ = 0;
  bool eof_ = false;
  size_t line_number_ = 0;
};

}  // namespace cgate::files
