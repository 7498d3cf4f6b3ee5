#pragma once

// A local stand-in for a web archive: answers CDX-style index queries and
// raw capture downloads from a scripted set of robots.txt captures.

#include <httplib.h>

#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "cgate/common/vendor_json.h"
#include "cgate/common/year_month.h"

namespace cgate::testing {

struct ScriptedCapture {
  std::string timestamp;  // 14 digits
  int status = 200;
  std::string body;
};

class FixtureArchive {
 public:
  FixtureArchive() {
    server_.Get("/cdx/search/cdx", [this](const httplib::Request& req, httplib::Response& res) { Index(req, res); });
    server_.Get(R"(/web/(\d{14})id_/(.*))", [this](const httplib::Request& req, httplib::Response& res) {
      Capture(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~FixtureArchive() {
    server_.stop();
    thread_.join();
  }

  FixtureArchive(const FixtureArchive&) = delete;
  FixtureArchive& operator=(const FixtureArchive&) = delete;

  void Add(const std::string& domain, ScriptedCapture capture) {
    std::lock_guard<std::mutex> lock(mu_);
    captures_[domain].push_back(std::move(capture));
  }

  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  size_t requests() const { return requests_.load(); }
  size_t index_requests() const { return index_requests_.load(); }

  // The next `n` requests answer 503.
  void FailNext(int n) { fail_next_.store(n); }
  // Every request answers 503 until reset.
  void FailAll(bool on) { fail_all_.store(on); }

 private:
  bool InjectFailure(httplib::Response& res) {
    if (fail_all_.load() || fail_next_.fetch_sub(1) > 0) {
      res.status = 503;
      return true;
    }
    return false;
  }

  void Index(const httplib::Request& req, httplib::Response& res) {
    ++requests_;
    ++index_requests_;
    if (InjectFailure(res)) return;
    const std::string url = req.get_param_value("url");
    const std::string domain = url.substr(0, url.find('/'));
    const std::string from = req.get_param_value("from");
    const std::string to = req.get_param_value("to");
    nlohmann::json rows = nlohmann::json::array();
    rows.push_back({"timestamp", "original", "statuscode", "digest"});
    std::lock_guard<std::mutex> lock(mu_);
    auto it = captures_.find(domain);
    if (it != captures_.end()) {
      for (const ScriptedCapture& c : it->second) {
        const std::string month = c.timestamp.substr(0, 6);
        if (month < from || month > to) continue;
        rows.push_back({c.timestamp, "http://" + domain + "/robots.txt", std::to_string(c.status), "D"});
      }
    }
    res.set_content(rows.size() > 1 ? rows.dump() : "[]", "application/json");
  }

  void Capture(const httplib::Request& req, httplib::Response& res) {
    ++requests_;
    if (InjectFailure(res)) return;
    const std::string ts = req.matches[1];
    std::string original = req.matches[2];
    if (const size_t scheme = original.find("://"); scheme != std::string::npos) original = original.substr(scheme + 3);
    const std::string domain = original.substr(0, original.find('/'));
    std::lock_guard<std::mutex> lock(mu_);
    auto it = captures_.find(domain);
    if (it != captures_.end()) {
      for (const ScriptedCapture& c : it->second) {
        if (c.timestamp == ts) {
          res.status = c.status;
          res.set_content(c.body, "text/plain");
          return;
        }
      }
    }
    res.status = 404;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::mutex mu_;
  std::map<std::string, std::vector<ScriptedCapture>> captures_;
  std::atomic<size_t> requests_{0};
  std::atomic<size_t> index_requests_{0};
  std::atomic<int> fail_next_{0};
  std::atomic<bool> fail_all_{false};
};

// When each crawler starts being disallowed on a domain.
struct BlockSchedule {
  std::string domain;
  std::map<std::string, YearMonth> blocks_from;  // agent as written in robots.txt
  bool star_from_2024_05 = false;
  // Months whose midpoint capture is a readable 2xx body; filled by the seeder.
  std::set<YearMonth> readable = {};
};

inline std::string ScheduledRobots(const BlockSchedule& s, YearMonth month) {
  std::string out = "User-agent: *\nDisallow: /admin\n";
  if (s.star_from_2024_05 && month >= YearMonth{2024, 5}) out += "Disallow: /\n";
  for (const auto& [agent, from] : s.blocks_from) {
    if (month >= from) out += "\nUser-agent: " + agent + "\nDisallow: /\n";
  }
  return out;
}

inline std::string Stamp(YearMonth m, int day, int hour = 12) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d%02d%02d%02d0000", m.year, m.month, day, hour);
  return buf;
}

// Monthly captures for 2020-01..2024-12 with the adoption pattern seen in
// practice: Bytespider blocks appear in 2021, GPTBot in late 2023, and a
// cluster of newer AI crawlers in 2024. Some months add noise: a second,
// off-midpoint capture with a misleading body, a 5xx capture, a 404, or no
// capture at all.
inline std::vector<BlockSchedule> SeedBlockingScenario(FixtureArchive& archive) {
  std::vector<BlockSchedule> schedules = {
      {"news-one.com", {{"Bytespider", {2021, 3}}, {"GPTBot", {2023, 8}}, {"ClaudeBot", {2024, 4}}}},
      {"science.org",
       {{"GPTBot", {2023, 9}}, {"CCBot", {2023, 9}}, {"Applebot-Extended", {2024, 6}},
        {"Meta-ExternalAgent", {2024, 9}}}},
      {"shop.net", {{"Bytespider", {2021, 7}}, {"Google-Extended", {2023, 10}}, {"ClaudeBot", {2024, 2}}}},
      {"open-blog.io", {}},
      {"forum.co.uk", {{"PanguBot", {2024, 7}}}, true},
  };
  int salt = 0;
  for (BlockSchedule& s : schedules) {
    for (YearMonth m : MonthRange({2020, 1}, {2024, 12})) {
      ++salt;
      if (salt % 23 == 0) continue;  // no capture this month
      if (s.domain == "open-blog.io" && salt % 7 == 0) {
        archive.Add(s.domain, {Stamp(m, 14), 404, "not found"});
        continue;
      }
      if (salt % 31 == 0) {
        archive.Add(s.domain, {Stamp(m, 15), 503, "unavailable"});
        continue;
      }
      archive.Add(s.domain, {Stamp(m, 14 + salt % 3), 200, ScheduledRobots(s, m)});
      s.readable.insert(m);
      if (salt % 5 == 0) {
        // Far from the midpoint; must never be chosen.
        archive.Add(s.domain, {Stamp(m, 1, 0), 200, "User-agent: *\nDisallow: /\n"});
      }
    }
  }
  return schedules;
}

}  // namespace cgate::testing
