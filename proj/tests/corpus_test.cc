#include <gtest/gtest.h>

#include <zlib.h>

#include <random>

#include "cgate/common/error.h"
#include "cgate/common/vendor_json.h"
#include "cgate/corpus/document.h"
#include "cgate/corpus/partition.h"
#include "cgate/corpus/policy_store.h"
#include "cgate/corpus/url.h"
#include "cgate/timeline/snapshot_cache.h"
#include "test_util.h"

namespace cgate::corpus {
namespace {

using cgate::testing::ReadText;
using cgate::testing::TempDir;
using cgate::testing::WriteText;

std::string DocLine(const std::string& id, const std::string& url, const std::string& text) {
  return nlohmann::json{{"id", id}, {"url", url}, {"text", text}}.dump() + "\n";
}

TEST(PublicSuffix, RegistrableDomains) {
  EXPECT_EQ(RegistrableDomain("https://www.bbc.co.uk/x"), "bbc.co.uk");
  EXPECT_EQ(RegistrableDomain("http://news.example.com:8080/a?b"), "example.com");
  EXPECT_EQ(RegistrableDomain("https://a.b.nytimes.com/"), "nytimes.com");
  EXPECT_EQ(RegistrableDomain("https://sub.example.com.au/"), "example.com.au");
  EXPECT_EQ(RegistrableDomainOfHost("co.uk"), "co.uk");
  EXPECT_EQ(RegistrableDomainOfHost("WWW.Example.COM."), "example.com");
  EXPECT_EQ(RegistrableDomainOfHost("192.168.0.1"), "192.168.0.1");
  EXPECT_THROW(RegistrableDomain("www.bbc.co.uk/x"), InputError);
  EXPECT_THROW(RegistrableDomain("/relative/path"), InputError);
}

TEST(PublicSuffix, WildcardAndExceptionRules) {
  // "*.ck" with the exception "!www.ck".
  EXPECT_EQ(RegistrableDomainOfHost("shop.example.ck"), "shop.example.ck");
  EXPECT_EQ(RegistrableDomainOfHost("www.ck"), "www.ck");
  EXPECT_EQ(RegistrableDomainOfHost("a.www.ck"), "www.ck");
}

TEST(Url, Parse) {
  auto u = ParseUrl("HTTPS://User@Example.com:443/Path/x?q=1#frag");
  ASSERT_TRUE(u);
  EXPECT_EQ(u->scheme, "https");
  EXPECT_EQ(u->host, "example.com");
  EXPECT_EQ(u->path, "/Path/x?q=1");
  EXPECT_EQ(ParseUrl("http://example.com")->path, "/");
  EXPECT_FALSE(ParseUrl("example.com/a"));
  EXPECT_FALSE(ParseUrl("http:///nohost"));
  EXPECT_TRUE(IsIpAddress("10.0.0.1"));
  EXPECT_TRUE(IsIpAddress("[::1]"));
  EXPECT_FALSE(IsIpAddress("example.com"));
}

TEST(Ingest, ReadsThreeLines) {
  TempDir dir;
  WriteText(dir / "c.jsonl", DocLine("1", "https://a.com/", "one two") + DocLine("2", "https://b.com/", "x") +
                                 "{\"id\":\"3\",\"url\":\"https://c.com/\",\"text\":\"a b c\",\"token_count\":99}\n");
  CorpusReader reader(dir / "c.jsonl");
  DocumentRecord d;
  std::vector<DocumentRecord> docs;
  while (reader.Next(d)) docs.push_back(d);
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].token_count, 2u);
  EXPECT_EQ(docs[1].token_count, 1u);
  EXPECT_EQ(docs[2].token_count, 99u);
  EXPECT_EQ(reader.stats().records, 3u);
  EXPECT_EQ(reader.stats().skipped, 0u);
}

TEST(Ingest, SkipsMalformedRecords) {
  TempDir dir;
  WriteText(dir / "c.jsonl", DocLine("1", "https://a.com/", "ok") + "not json\n" + "[1,2]\n" +
                                 "{\"id\":\"2\",\"url\":\"https://a.com/\"}\n" +
                                 "{\"id\":\"3\",\"url\":\"https://a.com/\",\"text\":\"t\",\"token_count\":-1}\n" +
                                 DocLine("1", "https://dup.com/", "dup") + "\n" + DocLine("4", "https://a.com/", "ok"));
  CorpusReader reader(dir / "c.jsonl");
  DocumentRecord d;
  std::vector<std::string> ids;
  while (reader.Next(d)) ids.push_back(d.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"1", "4"}));
  EXPECT_EQ(reader.stats().skipped, 5u);
  EXPECT_EQ(reader.stats().duplicate_ids, 1u);
}

TEST(Ingest, ReadsGzip) {
  TempDir dir;
  const std::string path = (dir / "c.jsonl.gz").string();
  gzFile gz = gzopen(path.c_str(), "wb");
  const std::string body = DocLine("1", "https://a.com/", "x y") + DocLine("2", "https://a.com/", "z");
  gzwrite(gz, body.data(), static_cast<unsigned>(body.size()));
  gzclose(gz);
  CorpusReader reader(path);
  DocumentRecord d;
  size_t n = 0;
  while (reader.Next(d)) ++n;
  EXPECT_EQ(n, 2u);
}

TEST(Ingest, MissingFileThrows) {
  EXPECT_THROW(CorpusReader("/nonexistent/corpus.jsonl"), InputError);
}

TEST(Ingest, JsonLineRoundTrip) {
  const DocumentRecord doc{"id\"1", "https://a.com/?q=\"x\"", "line\nbreak \xC3\xA9", 3};
  const auto j = nlohmann::json::parse(ToJsonLine(doc));
  EXPECT_EQ(j["id"], doc.id);
  EXPECT_EQ(j["text"], doc.text);
  EXPECT_EQ(j["token_count"], 3);
}

TEST(PolicyStoreTest, WwwAliasAndMissing) {
  PolicyStore store;
  store.Add("example.com", rep::ParseRobots("User-agent: *\nDisallow: /\n"));
  EXPECT_EQ(store.Lookup("www.example.com").groups().size(), 1u);
  EXPECT_EQ(store.Lookup("example.com").groups().size(), 1u);
  EXPECT_EQ(store.Lookup("other.com").source_status(), rep::SourceStatus::kMissingFile);
  EXPECT_EQ(store.Lookup("news.example.com").source_status(), rep::SourceStatus::kMissingFile);
}

TEST(PolicyStoreTest, LoadsFlatFilesAndStatus) {
  TempDir dir;
  WriteText(dir / "a.com.robots.txt", "User-agent: GPTBot\nDisallow: /\n");
  WriteText(dir / "b.com.status", "503\n");
  WriteText(dir / "c.com.robots.txt", "User-agent: *\nDisallow: /\n");
  WriteText(dir / "c.com.status", "404");
  const PolicyStore store = PolicyStore::LoadDirectory(dir.path(), {2025, 1, 31});
  EXPECT_EQ(store.size(), 3u);
  EXPECT_EQ(store.Lookup("b.com").source_status(), rep::SourceStatus::kFetchError5xx);
  EXPECT_EQ(store.Lookup("c.com").source_status(), rep::SourceStatus::kFetchError4xx);
  EXPECT_EQ(rep::IsAllowed(store.Lookup("a.com"), "gptbot", "/"), rep::Decision::kDisallowed);
  EXPECT_THROW(PolicyStore::LoadDirectory(dir / "missing", {2025, 1, 31}), InputError);
}

TEST(PolicyStoreTest, SnapshotCacheHonorsCutoff) {
  TempDir dir;
  const timeline::SnapshotCache cache(dir.path());
  std::map<YearMonth, timeline::SnapshotRecord> index;
  auto add = [&](YearMonth m, const std::string& ts, const std::string& body) {
    timeline::SnapshotRecord r{"x.com", m, ts, timeline::StatusClass::k2xx, "", cache.WriteBody("x.com", m, body)};
    index[m] = r;
  };
  add({2024, 12}, "20241215000000", "User-agent: GPTBot\nDisallow: /\n");
  add({2025, 3}, "20250315000000", "User-agent: *\nDisallow:\n");
  cache.SaveIndex("x.com", index);
  const PolicyStore early = PolicyStore::LoadDirectory(dir.path(), {2025, 1, 31});
  EXPECT_EQ(rep::IsAllowed(early.Lookup("x.com"), "gptbot", "/"), rep::Decision::kDisallowed);
  const PolicyStore late = PolicyStore::LoadDirectory(dir.path(), {2025, 6, 30});
  EXPECT_EQ(rep::IsAllowed(late.Lookup("x.com"), "gptbot", "/"), rep::Decision::kAllowed);
  const PolicyStore before = PolicyStore::LoadDirectory(dir.path(), {2024, 1, 1});
  EXPECT_EQ(before.size(), 0u);
}

class PartitionFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    store_.Add("blocked.com", rep::ParseRobots("User-agent: GPTBot\nDisallow: /\n"));
    store_.Add("partial.org", rep::ParseRobots("User-agent: CCBot\nDisallow: /private\n"));
    store_.Add("down.net", rep::ParseRobots("", 503));
    store_.Add("gone.net", rep::ParseRobots("", 404));
    WriteText(dir_ / "c.jsonl", DocLine("d1", "https://blocked.com/a", "one two three") +
                                    DocLine("d2", "https://www.partial.org/private/x", "a b") +
                                    DocLine("d3", "https://partial.org/public", "a b c d") +
                                    DocLine("d4", "https://down.net/", "x") +
                                    DocLine("d5", "https://gone.net/", "x y") +
                                    DocLine("d6", "not a url", "p q r") +
                                    DocLine("d7", "https://free.io/", "z"));
  }

  PartitionResult Run(FilterMode mode, int workers = 1, DocumentSink* sink = nullptr) {
    CorpusReader reader(dir_ / "c.jsonl");
    return Partition(reader, store_, rep::AgentBlocklist::Default(), mode, {workers, 2}, sink);
  }

  TempDir dir_;
  PolicyStore store_;
};

TEST_F(PartitionFixture, PathLevel) {
  const PartitionResult r = Run(FilterMode::kPathLevel);
  EXPECT_EQ(r.noncompliant_ids, (std::vector<std::string>{"d1", "d2", "d4", "d6"}));
  EXPECT_EQ(r.compliant_ids, (std::vector<std::string>{"d3", "d5", "d7"}));
  EXPECT_EQ(r.total_tokens, 3u + 2 + 4 + 1 + 2 + 3 + 1);
  EXPECT_EQ(r.removed_tokens, 3u + 2 + 1 + 3);
  EXPECT_EQ(r.invalid_url_docs, 1u);
  EXPECT_EQ(r.invalid_url_tokens, 3u);
  EXPECT_EQ(r.per_domain.at("partial.org"), (DomainDiff{1, 2, 2, 6}));
  EXPECT_DOUBLE_EQ(r.token_loss_fraction(), 9.0 / 16.0);
}

TEST_F(PartitionFixture, DomainLevelUsesRoot) {
  const PartitionResult r = Run(FilterMode::kDomainLevel);
  // partial.org only blocks /private, so the root stays open.
  EXPECT_EQ(r.noncompliant_ids, (std::vector<std::string>{"d1", "d4", "d6"}));
}

TEST_F(PartitionFixture, InvariantsAndWorkerDeterminism) {
  const PartitionResult base = Run(FilterMode::kPathLevel, 1);
  for (int workers : {2, 3, 8}) {
    const PartitionResult r = Run(FilterMode::kPathLevel, workers);
    EXPECT_EQ(r.compliant_ids, base.compliant_ids);
    EXPECT_EQ(r.noncompliant_ids, base.noncompliant_ids);
    EXPECT_EQ(r.per_domain, base.per_domain);
  }
  EXPECT_EQ(base.compliant_ids.size() + base.noncompliant_ids.size(), base.total_docs);
  uint64_t docs = 0, tokens = 0, removed = 0;
  for (const auto& [domain, d] : base.per_domain) {
    docs += d.docs_total;
    tokens += d.tokens_total;
    removed += d.tokens_removed;
    EXPECT_LE(d.docs_removed, d.docs_total);
  }
  EXPECT_EQ(docs, base.total_docs);
  EXPECT_EQ(tokens, base.total_tokens);
  EXPECT_EQ(removed, base.removed_tokens);
}

TEST_F(PartitionFixture, WriterAndSummary) {
  const auto out = dir_ / "out";
  PartitionResult r;
  {
    PartitionWriter writer(out);
    r = Run(FilterMode::kPathLevel, 2, &writer);
    writer.Finish();
  }
  const std::string labels = ReadText(out / "labels.tsv");
  EXPECT_EQ(labels.substr(0, labels.find('\n')), "id\tlabel\treason\tdomain\tblocked_agents");
  EXPECT_NE(labels.find("d1\tnoncompliant\tblocked\tblocked.com\tgptbot"), std::string::npos);
  EXPECT_NE(labels.find("d6\tnoncompliant\tinvalid-url\t(invalid-url)\t"), std::string::npos);
  CorpusReader compliant(out / "compliant.jsonl");
  DocumentRecord d;
  size_t n = 0;
  while (compliant.Next(d)) ++n;
  EXPECT_EQ(n, 3u);

  cgate::files::WriteFileAtomic(out / "partition.json", RenderPartitionSummary(r, "tok"));
  const PartitionResult loaded = LoadPartitionSummary(out);
  EXPECT_EQ(loaded.per_domain, r.per_domain);
  EXPECT_EQ(loaded.removed_tokens, r.removed_tokens);
}

TEST_F(PartitionFixture, ExcludeDomains) {
  CorpusReader reader(dir_ / "c.jsonl");
  const PartitionResult r = ExcludeDomains(reader, {"partial.org", "free.io"});
  EXPECT_EQ(r.noncompliant_ids, (std::vector<std::string>{"d2", "d3", "d7"}));
  CorpusReader again(dir_ / "c.jsonl");
  EXPECT_THROW(ExcludeDomains(again, {}), InputError);
}

TEST(Stats, RanksByDocsRemovedThenName) {
  PartitionResult r;
  r.per_domain["b.com"] = {5, 50, 10, 100};
  r.per_domain["a.com"] = {5, 10, 5, 10};
  r.per_domain["c.com"] = {9, 9, 9, 9};
  r.per_domain["d.com"] = {0, 0, 4, 40};
  r.total_docs = 28;
  r.removed_docs = 19;
  const StatsReport s = CorpusStats(r, 2);
  ASSERT_EQ(s.top.size(), 2u);
  EXPECT_EQ(s.top[0].domain, "c.com");
  EXPECT_EQ(s.top[1].domain, "a.com");
  EXPECT_EQ(CorpusStats(r, 10).top.size(), 3u);
  EXPECT_THROW(CorpusStats(r, 0), UsageError);
  const std::string csv = RenderStatsCsv(s);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "rank,domain,docs_removed,tokens_removed,docs_total,tokens_total");
}

}  // namespace
}  // namespace cgate::corpus
