#pragma once

#include <atomic>
#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cgate/common/year_month.h"

namespace cgate::timeline {

// Where the snapshot index and capture downloads live. The index answers
// CDX-style queries (JSON rows of timestamp, original, statuscode, digest);
// captures are fetched as raw bytes from `capture_prefix + timestamp +
// "id_/" + original`.
struct ArchiveEndpoint {
  std::string base_url;  // scheme://host[:port]
  std::string index_path = "/cdx/search/cdx";
  std::string capture_prefix = "/web/";

  static ArchiveEndpoint InternetArchive();
  static ArchiveEndpoint At(std::string base_url);
};

struct Capture {
  std::string timestamp;  // 14 digits
  std::string original;
  std::optional<int> status_code;  // absent when the index reports "-"
  std::string digest;
};

// Global request-rate cap shared by every client that holds it.
class RateLimiter {
 public:
  explicit RateLimiter(double requests_per_second);
  void Acquire();

 private:
  std::mutex mu_;
  std::chrono::steady_clock::duration interval_;
  std::chrono::steady_clock::time_point next_;
};

struct RetryPolicy {
  int max_retries = 5;
  std::chrono::milliseconds initial_backoff{1000};
};

struct Fetched {
  int status = 0;
  std::string body;
};

class ArchiveClient {
 public:
  ArchiveClient(ArchiveEndpoint endpoint, std::shared_ptr<RateLimiter> limiter,
                RetryPolicy retry = {});

  // Captures of `url` between the two months inclusive, index order.
  // Throws NetworkError when the archive cannot be reached.
  std::vector<Capture> ListCaptures(const std::string& url, YearMonth from, YearMonth to);

  // Raw archived bytes of a capture. Throws NetworkError.
  Fetched Download(const Capture& capture);

  // HTTP attempts made so far, retries included.
  size_t request_count() const { return requests_.load(); }

 private:
  Fetched Get(const std::string& path_and_query);

  ArchiveEndpoint endpoint_;
  std::shared_ptr<RateLimiter> limiter_;
  RetryPolicy retry_;
  std::atomic<size_t> requests_{0};
};

}  // namespace cgate::timeline
