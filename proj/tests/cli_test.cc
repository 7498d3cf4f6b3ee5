#include <gtest/gtest.h>

#include <sstream>

#include "cgate/cli/cli.h"
#include "cgate/cli/config.h"
#include "cgate/common/error.h"
#include "fixture_archive.h"
#include "test_util.h"

namespace cgate::cli {
namespace {

using cgate::testing::ReadText;
using cgate::testing::TempDir;
using cgate::testing::WriteText;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome RunWith(std::vector<std::string> args, std::map<std::string, std::string> env = {}) {
  args.insert(args.begin(), "cgate");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  EnvLookup lookup = [env](const std::string& key) -> std::optional<std::string> {
    auto it = env.find(key);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  const int code = Run(static_cast<int>(argv.size()), argv.data(), out, err, lookup);
  return {code, out.str(), err.str()};
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(RunWith({}).code, kExitUsage);
  EXPECT_EQ(RunWith({"frobnicate"}).code, kExitUsage);
  const Outcome missing = RunWith({"parse-robots"});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_NE(missing.err.find("--file"), std::string::npos);
  EXPECT_EQ(RunWith({"--help"}).code, kExitOk);
}

TEST(Cli, ParseRobots) {
  TempDir dir;
  WriteText(dir / "robots.txt", "User-agent: GPTBot\nDisallow: /\n");
  const std::string file = (dir / "robots.txt").string();
  EXPECT_EQ(RunWith({"parse-robots", "--file", file, "--agent", "GPTBot"}).out, "Disallowed\n");
  EXPECT_EQ(RunWith({"parse-robots", "--file", file, "--agent", "CCBot", "--path", "/x"}).out, "Allowed\n");
  EXPECT_EQ(RunWith({"parse-robots", "--file", file, "--agent", "CCBot", "--status", "503"}).out, "Disallowed\n");
  EXPECT_EQ(RunWith({"parse-robots", "--file", file, "--blocked"}).out, "gptbot\n");
  EXPECT_EQ(RunWith({"parse-robots", "--file", file, "--dump"}).out, "User-agent: gptbot\nDisallow: /\n");
  const Outcome absent = RunWith({"parse-robots", "--file", (dir / "nope.txt").string(), "--agent", "x"});
  EXPECT_EQ(absent.code, kExitInput);
  EXPECT_NE(absent.err.find("nope.txt"), std::string::npos);
}

TEST(Cli, FilterStatsAndExclude) {
  TempDir dir;
  WriteText(dir / "policies/a.com.robots.txt", "User-agent: CCBot\nDisallow: /\n");
  WriteText(dir / "corpus.jsonl",
            "{\"id\":\"1\",\"url\":\"https://a.com/x\",\"text\":\"one two\"}\n"
            "{\"id\":\"2\",\"url\":\"https://b.com/x\",\"text\":\"three\"}\n");
  const Outcome r = RunWith({"--jobs", "2", "filter", "--corpus", (dir / "corpus.jsonl").string(), "--policies",
                             (dir / "policies").string(), "--out", (dir / "out").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(ReadText(dir / "out/labels.tsv").find("1\tnoncompliant\tblocked\ta.com\tccbot"), std::string::npos);

  ASSERT_EQ(RunWith({"stats", "--partition", (dir / "out").string(), "--out", (dir / "stats.csv").string()}).code,
            kExitOk);
  EXPECT_NE(ReadText(dir / "stats.csv").find("1,a.com,1,2,1,2"), std::string::npos) << ReadText(dir / "stats.csv");

  WriteText(dir / "domains.txt", "# news\nb.com\n");
  ASSERT_EQ(RunWith({"exclude", "--corpus", (dir / "corpus.jsonl").string(), "--domains",
                     (dir / "domains.txt").string(), "--out", (dir / "ex").string()})
                .code,
            kExitOk);
  EXPECT_NE(ReadText(dir / "ex/labels.tsv").find("2\tnoncompliant\texcluded-domain\tb.com"), std::string::npos);

  EXPECT_EQ(RunWith({"filter", "--corpus", (dir / "missing.jsonl").string(), "--policies",
                     (dir / "policies").string(), "--out", (dir / "o2").string()})
                .code,
            kExitInput);
  EXPECT_EQ(RunWith({"filter", "--corpus", (dir / "corpus.jsonl").string(), "--policies",
                     (dir / "policies").string(), "--out", (dir / "o3").string(), "--mode", "bogus"})
                .code,
            kExitUsage);
}

TEST(Cli, Dcg) {
  TempDir dir;
  WriteText(dir / "base.json", R"({"run_label":"compliant","tokens_trained":1,"scores":{"pubmedqa":61.4}})");
  WriteText(dir / "treat.json", R"({"run_label":"compliant+med","tokens_trained":1,"scores":{"pubmedqa":63.0}})");
  const Outcome r = RunWith({"dcg", "--baseline", (dir / "base.json").string(), "--treatment",
                             (dir / "treat.json").string(), "--out", (dir / "out").string(), "--format", "csv",
                             "--format", "json", "--format", "plot"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(ReadText(dir / "out/dcg.csv").find("pubmedqa,1.6,"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "out/dcg.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "out/dcg_plot.dat"));
  WriteText(dir / "bad.json", R"({"run_label":"x","tokens_trained":1,"scores":{"pubmedqa":140}})");
  EXPECT_EQ(RunWith({"dcg", "--baseline", (dir / "bad.json").string(), "--treatment", (dir / "treat.json").string(),
                     "--out", (dir / "out").string()})
                .code,
            kExitInput);
}

TEST(Cli, ScoreMcqAndMemorize) {
  TempDir dir;
  WriteText(dir / "items.jsonl",
            "{\"id\":\"q1\",\"question\":\"?\",\"A\":\"a\",\"B\":\"b\",\"C\":\"c\",\"D\":\"d\",\"answer\":\"B\"}\n"
            "{\"id\":\"q2\",\"question\":\"?\",\"A\":\"a\",\"B\":\"b\",\"C\":\"c\",\"D\":\"d\",\"answer\":\"A\"}\n");
  WriteText(dir / "preds.csv", "q1,B\nq2,C\n");
  ASSERT_EQ(RunWith({"score-mcq", "--items", (dir / "items.jsonl").string(), "--preds", (dir / "preds.csv").string(),
                     "--out", (dir / "mcq.csv").string()})
                .code,
            kExitOk);
  EXPECT_EQ(ReadText(dir / "mcq.csv"), "benchmark,total,correct,missing,accuracy\nitems,2,1,0,50.0\n");

  WriteText(dir / "pairs.jsonl",
            "{\"article_id\":\"1\",\"prefix_tokens\":50,\"reference\":\"a b c d\",\"generation\":\"a b c d\"}\n");
  ASSERT_EQ(RunWith({"memorize-score", "--pairs", (dir / "pairs.jsonl").string(), "--out",
                     (dir / "mem.csv").string(), "--model", "m"})
                .code,
            kExitOk);
  EXPECT_NE(ReadText(dir / "mem.csv").find("m,all,1,4.00,1.00"), std::string::npos) << ReadText(dir / "mem.csv");
}

TEST(Cli, TimelineAgainstFixtureArchive) {
  cgate::testing::FixtureArchive archive;
  archive.Add("a.com", {cgate::testing::Stamp({2023, 9}, 15), 200, "User-agent: GPTBot\nDisallow: /\n"});
  TempDir dir;
  WriteText(dir / "domains.txt", "a.com\n");
  const std::vector<std::string> args = {"timeline", "--domains", (dir / "domains.txt").string(), "--from", "2023-08",
                                         "--to", "2023-10", "--out", (dir / "out").string(), "--cache",
                                         (dir / "cache").string(), "--archive-url", archive.base_url(), "--rps", "0",
                                         "--plot"};
  const Outcome r = RunWith(args);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(ReadText(dir / "out/first_blocks.csv"), "domain,agent,first_block\na.com,gptbot,2023-09\n");
  EXPECT_TRUE(std::filesystem::exists(dir / "out/timeline.dat"));
  const size_t before = archive.requests();
  ASSERT_EQ(RunWith(args).code, kExitOk);
  EXPECT_EQ(archive.requests(), before);

  archive.FailAll(true);
  std::vector<std::string> fresh = args;
  fresh[10] = (dir / "cache2").string();
  fresh.insert(fresh.end(), {"--retries", "0", "--backoff-ms", "1"});
  EXPECT_EQ(RunWith(fresh).code, kExitNetwork);
  EXPECT_EQ(RunWith({"timeline", "--domains", (dir / "domains.txt").string(), "--from", "2023-13", "--to", "2023-10",
                     "--out", (dir / "out").string()})
                .code,
            kExitUsage);
}

TEST(Config, Precedence) {
  TempDir dir;
  WriteText(dir / "cgate.conf", "# defaults\njobs = 3\nrps = 0.5\ncutoff = 2024-06-30\n");
  const EnvLookup env = [](const std::string& key) -> std::optional<std::string> {
    if (key == "CGATE_JOBS") return "5";
    return std::nullopt;
  };
  ToolConfig c = ResolveConfig({}, env, dir / "cgate.conf");
  EXPECT_EQ(c.jobs, 5);
  EXPECT_DOUBLE_EQ(c.rps, 0.5);
  EXPECT_EQ(c.cutoff, (CalendarDate{2024, 6, 30}));
  c = ResolveConfig({{"jobs", "7"}}, env, dir / "cgate.conf");
  EXPECT_EQ(c.jobs, 7);
  EXPECT_TRUE(c.cache_dir.is_absolute());
  EXPECT_THROW(ResolveConfig({{"jobs", "zero"}}, env, std::nullopt), UsageError);
  EXPECT_THROW(ResolveConfig({{"cutoff", "2024-02-30x"}}, env, std::nullopt), UsageError);
}

TEST(Config, TokenizerSpec) {
  EXPECT_EQ(ParseTokenizerSpec("nfc,fold,punct"), text::TokenizerConfig::Ngram());
  EXPECT_FALSE(ParseTokenizerSpec("none").nfc);
  EXPECT_THROW(ParseTokenizerSpec("nfc,bogus"), UsageError);
}

}  // namespace
}  // namespace cgate::cli
