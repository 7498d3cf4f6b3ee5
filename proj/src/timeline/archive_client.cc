#include "cgate/timeline/archive_client.h"

#include <httplib.h>

#include <cctype>
#include <thread>

#include "cgate/common/error.h"
#include "cgate/common/log.h"
#include "cgate/common/vendor_json.h"

namespace cgate::timeline {

namespace {

std::string Yyyymm(YearMonth m) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%04d%02d", m.year, m.month);
  return buf;
}

bool Retryable(int status) { return status == 429 || (status >= 500 && status < 600); }

}  // namespace

ArchiveEndpoint ArchiveEndpoint::InternetArchive() {
  return ArchiveEndpoint{"https://web.archive.org", "/cdx/search/cdx", "/web/"};
}

ArchiveEndpoint ArchiveEndpoint::At(std::string base_url) {
  ArchiveEndpoint e;
  e.base_url = std::move(base_url);
  return e;
}

RateLimiter::RateLimiter(double requests_per_second)
    : interval_(requests_per_second > 0
                    ? std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(1.0 / requests_per_second))
                    : std::chrono::steady_clock::duration::zero()),
      next_(std::chrono::steady_clock::now()) {}

void RateLimiter::Acquire() {
  if (interval_ == std::chrono::steady_clock::duration::zero()) return;
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard<std::mutex> lock(mu_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_);
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

ArchiveClient::ArchiveClient(ArchiveEndpoint endpoint, std::shared_ptr<RateLimiter> limiter,
                             RetryPolicy retry)
    : endpoint_(std::move(endpoint)), limiter_(std::move(limiter)), retry_(retry) {
  if (!limiter_) limiter_ = std::make_shared<RateLimiter>(0);
}

Fetched ArchiveClient::Get(const std::string& path_and_query) {
  httplib::Client client(endpoint_.base_url);
  client.set_connection_timeout(std::chrono::seconds(10));
  client.set_read_timeout(std::chrono::seconds(60));
  client.set_follow_location(true);

  auto backoff = retry_.initial_backoff;
  std::string last_error;
  for (int attempt = 0; attempt <= retry_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    limiter_->Acquire();
    requests_.fetch_add(1);
    auto res = client.Get(path_and_query);
    if (!res) {
      last_error = httplib::to_string(res.error());
      log::Debug("archive request failed (", last_error, "): ", path_and_query);
      continue;
    }
    if (Retryable(res->status)) {
      last_error = "HTTP " + std::to_string(res->status);
      log::Debug("archive returned ", res->status, ", backing off: ", path_and_query);
      continue;
    }
    return Fetched{res->status, std::move(res->body)};
  }
  throw NetworkError("archive unreachable at " + endpoint_.base_url + " (" + last_error + ")");
}

std::vector<Capture> ArchiveClient::ListCaptures(const std::string& url, YearMonth from, YearMonth to) {
  const std::string query = endpoint_.index_path + "?url=" + httplib::detail::encode_query_param(url) +
                            "&from=" + Yyyymm(from) + "&to=" + Yyyymm(to) +
                            "&output=json&fl=timestamp,original,statuscode,digest";
  const Fetched fetched = Get(query);
  if (fetched.status == 404) return {};
  if (fetched.status != 200) {
    throw NetworkError("archive index answered HTTP " + std::to_string(fetched.status));
  }
  std::vector<Capture> captures;
  if (fetched.body.find_first_not_of(" \t\r\n") == std::string::npos) return captures;

  nlohmann::json rows;
  try {
    rows = nlohmann::json::parse(fetched.body);
  } catch (const nlohmann::json::exception& e) {
    throw NetworkError(std::string("malformed archive index response: ") + e.what());
  }
  if (!rows.is_array()) throw NetworkError("malformed archive index response: not an array");
  try {
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() < 3) continue;
      if (row[0] == "timestamp") continue;  // header row
      Capture c;
      c.timestamp = row[0].get<std::string>();
      c.original = row[1].get<std::string>();
      const std::string status = row[2].get<std::string>();
      if (status.size() == 3 && std::isdigit(static_cast<unsigned char>(status[0]))) {
        c.status_code = std::stoi(status);
      }
      if (row.size() > 3 && row[3].is_string()) c.digest = row[3].get<std::string>();
      captures.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw NetworkError(std::string("malformed archive index row: ") + e.what());
  }
  return captures;
}

Fetched ArchiveClient::Download(const Capture& capture) {
  return Get(endpoint_.capture_prefix + capture.timestamp + "id_/" + capture.original);
}

}  // namespace cgate::timeline
