#include "cgate/cli/cli.h"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>

#include "cgate/common/error.h"
#include "cgate/common/files.h"
#include "cgate/common/log.h"
#include "cgate/common/parallel.h"
#include "cgate/common/text.h"
#include "cgate/corpus/partition.h"
#include "cgate/metrics/mcq.h"
#include "cgate/metrics/memorization.h"
#include "cgate/overlap/ngram_index.h"
#include "cgate/rep/blocklist.h"
#include "cgate/report/dcg.h"
#include "cgate/timeline/timeline.h"

namespace cgate::cli {

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
  std::string config_file;
  std::string log_level;
  std::string jobs;
  std::string tokenizer;
};

YearMonth RequireMonth(const std::string& s, const char* flag) {
  auto m = YearMonth::Parse(s);
  if (!m) throw UsageError(std::string(flag) + " must be YYYY-MM, got '" + s + "'");
  return *m;
}

rep::AgentBlocklist LoadBlocklist(const ToolConfig& config) {
  if (config.blocklist) return rep::AgentBlocklist::Load(*config.blocklist);
  return rep::AgentBlocklist::Default();
}

std::vector<std::string> ReadListFile(const fs::path& path) {
  std::vector<std::string> items;
  const std::string content = files::ReadFile(path);
  for (std::string_view line : text::Split(content, '\n')) {
    if (const size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::Trim(line);
    if (!line.empty()) items.emplace_back(line);
  }
  return items;
}

bool WantsJson(const fs::path& path) { return text::AsciiLower(path.extension().string()) == ".json"; }

void RequireFile(const fs::path& path, const char* what) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw InputError(std::string(what) + " not found: " + path.string());
}

// ---- parse-robots ----------------------------------------------------------

struct ParseRobotsArgs {
  std::string file;
  std::string agent;
  std::string path = "/";
  int status = 0;
  bool blocked = false;
  bool dump = false;
  bool allow_unreachable = false;
};

int RunParseRobots(const ParseRobotsArgs& args, const ToolConfig& config, std::ostream& out) {
  std::optional<int> status;
  if (args.status > 0) status = args.status;
  const rep::RobotsPolicy policy = rep::ParseRobots(files::ReadFile(args.file), status);
  rep::MatchOptions match;
  if (args.allow_unreachable) match.unreachable = rep::UnreachablePolicy::kAllowAll;
  const auto& d = policy.diagnostics();
  log::Info("parsed ", args.file, ": ", policy.groups().size(), " groups, ", d.malformed_lines, " malformed, ",
            d.ignored_directives, " ignored directives");
  if (!args.agent.empty()) {
    out << rep::DecisionName(rep::IsAllowed(policy, args.agent, args.path, match)) << "\n";
  } else if (args.blocked) {
    for (const std::string& a : rep::BlockedAgents(policy, LoadBlocklist(config), args.path, match)) out << a << "\n";
  } else if (args.dump) {
    out << policy.Serialize();
  } else {
    out << "status: " << rep::SourceStatusName(policy.source_status()) << "\n";
    out << "groups: " << policy.groups().size() << "\n";
    for (const auto& g : policy.groups()) {
      out << "  agents:";
      for (const auto& a : g.agents) out << " " << a;
      out << " rules: " << g.rules.size() << "\n";
    }
    out << "malformed_lines: " << d.malformed_lines << "\n";
    out << "ignored_directives: " << d.ignored_directives << "\n";
  }
  return kExitOk;
}

// ---- timeline --------------------------------------------------------------

struct TimelineArgs {
  std::string domains;
  std::string from;
  std::string to;
  std::string out;
  std::string archive_url;
  std::string probe_path = "/";
  bool offline = false;
  bool plot = false;
  int retries = 5;
  int backoff_ms = 1000;
};

int RunTimeline(const TimelineArgs& args, const ToolConfig& config) {
  const YearMonth from = RequireMonth(args.from, "--from");
  const YearMonth to = RequireMonth(args.to, "--to");
  if (to < from) throw UsageError("--to precedes --from");
  RequireFile(args.domains, "domain list");
  const std::vector<std::string> domains = ReadListFile(args.domains);
  if (domains.empty()) throw InputError("domain list is empty: " + args.domains);
  const rep::AgentBlocklist blocklist = LoadBlocklist(config);
  const timeline::SnapshotCache cache(config.cache_dir);

  auto limiter = std::make_shared<timeline::RateLimiter>(config.rps);
  const timeline::ArchiveEndpoint endpoint = args.archive_url.empty()
                                                 ? timeline::ArchiveEndpoint::InternetArchive()
                                                 : timeline::ArchiveEndpoint::At(args.archive_url);
  timeline::ArchiveClient client(endpoint, limiter,
                                 {args.retries, std::chrono::milliseconds(args.backoff_ms)});

  std::vector<timeline::FetchResult> fetched(domains.size());
  ParallelFor(domains.size(), config.jobs, [&](size_t i) {
    fetched[i] = timeline::FetchSnapshots({domains[i], from, to, args.offline}, cache,
                                          args.offline ? nullptr : &client);
  });

  std::vector<timeline::DomainTimeline> timelines;
  std::string status_csv = "domain,status,records,errors\n";
  bool network_failed = false;
  for (size_t i = 0; i < domains.size(); ++i) {
    const auto& f = fetched[i];
    status_csv += text::CsvField(domains[i]) + "," + std::string(timeline::FetchStatusName(f.status)) + "," +
                  std::to_string(f.records.size()) + "," + std::to_string(f.annotations.size()) + "\n";
    if (f.status == timeline::FetchStatus::kNetworkUnavailable) network_failed = true;
    if (f.status == timeline::FetchStatus::kDomainNotArchived) {
      log::Warn(domains[i], ": no archived robots.txt in range");
    }
    timeline::DomainTimeline t = timeline::BuildTimeline(f.records, blocklist, cache, args.probe_path);
    if (t.domain.empty()) t.domain = text::AsciiLower(domains[i]);
    for (const std::string& d : t.diagnostics) log::Info(t.domain, ": ", d);
    timelines.push_back(std::move(t));
  }

  const timeline::TimelineReport report = timeline::MakeTimelineReport(timelines);
  const fs::path out_dir(args.out);
  files::WriteFileAtomic(out_dir / "timeline.csv", timeline::RenderTimelineCsv(report));
  files::WriteFileAtomic(out_dir / "first_blocks.csv", timeline::RenderFirstBlocksCsv(report));
  files::WriteFileAtomic(out_dir / "timeline.json", timeline::RenderTimelineJson(report));
  files::WriteFileAtomic(out_dir / "fetch_status.csv", status_csv);
  if (args.plot) files::WriteFileAtomic(out_dir / "timeline.dat", timeline::RenderTimelinePlotData(report));
  if (network_failed) {
    log::Err("archive unreachable for some domains; outputs cover cached months only");
    return kExitNetwork;
  }
  return kExitOk;
}

// ---- filter / exclude ------------------------------------------------------

struct FilterArgs {
  std::string corpus;
  std::string policies;
  std::string mode = "path";
  std::string out;
  std::string unreachable = "disallow";
};

int RunFilter(const FilterArgs& args, const ToolConfig& config) {
  RequireFile(args.corpus, "corpus file");
  corpus::FilterMode mode;
  if (args.mode == "path") mode = corpus::FilterMode::kPathLevel;
  else if (args.mode == "domain") mode = corpus::FilterMode::kDomainLevel;
  else throw UsageError("--mode must be path or domain");
  rep::MatchOptions match;
  if (args.unreachable == "allow") match.unreachable = rep::UnreachablePolicy::kAllowAll;
  else if (args.unreachable != "disallow") throw UsageError("--unreachable must be allow or disallow");

  const corpus::PolicyStore policies = corpus::PolicyStore::LoadDirectory(args.policies, config.cutoff);
  const rep::AgentBlocklist blocklist = LoadBlocklist(config);
  corpus::CorpusReader reader(args.corpus, text::Tokenizer(config.tokenizer));
  corpus::PartitionWriter writer(args.out);
  const corpus::PartitionResult result =
      corpus::Partition(reader, policies, blocklist, mode, {config.jobs, 2048}, &writer, match);
  writer.Finish();
  files::WriteFileAtomic(fs::path(args.out) / "partition.json",
                         corpus::RenderPartitionSummary(result, config.tokenizer.Id()));
  if (result.skipped_records > 0) log::Warn("skipped ", result.skipped_records, " malformed corpus records");
  log::Info("removed ", result.removed_docs, " of ", result.total_docs, " documents (token loss ",
            result.token_loss_fraction(), ")");
  return kExitOk;
}

struct ExcludeArgs {
  std::string corpus;
  std::string domains;
  std::string out;
};

int RunExclude(const ExcludeArgs& args, const ToolConfig& config) {
  RequireFile(args.corpus, "corpus file");
  RequireFile(args.domains, "domain list");
  const std::set<std::string> domains = corpus::LoadDomainList(args.domains);
  corpus::CorpusReader reader(args.corpus, text::Tokenizer(config.tokenizer));
  corpus::PartitionWriter writer(args.out);
  const corpus::PartitionResult result = corpus::ExcludeDomains(reader, domains, {config.jobs, 2048}, &writer);
  writer.Finish();
  files::WriteFileAtomic(fs::path(args.out) / "partition.json",
                         corpus::RenderPartitionSummary(result, config.tokenizer.Id()));
  return kExitOk;
}

struct StatsArgs {
  std::string partition;
  int top_k = 20;
  std::string out;
};

int RunStats(const StatsArgs& args) {
  if (args.top_k < 1) throw UsageError("--top-k must be at least 1");
  const corpus::PartitionResult result = corpus::LoadPartitionSummary(args.partition);
  const corpus::StatsReport report = corpus::CorpusStats(result, static_cast<size_t>(args.top_k));
  files::WriteFileAtomic(args.out, WantsJson(args.out) ? corpus::RenderStatsJson(report)
                                                       : corpus::RenderStatsCsv(report));
  return kExitOk;
}

// ---- overlap ---------------------------------------------------------------

struct OverlapArgs {
  std::string corpus;
  std::string targets;
  int n = 50;
  std::string out;
  std::string json_out;
  int samples = 5;
  bool verify = false;
  bool no_guard = false;
};

int RunOverlap(const OverlapArgs& args, const ToolConfig& config, const text::TokenizerConfig& tokenizer) {
  RequireFile(args.corpus, "corpus file");
  if (args.n < 2) throw UsageError("--n must be at least 2");
  overlap::IndexOptions options;
  options.n = static_cast<size_t>(args.n);
  options.tokenizer = tokenizer;
  options.collision_guard = !args.no_guard;
  options.verify = args.verify;

  std::vector<std::pair<std::string, overlap::NgramIndex>> built;
  for (std::string_view spec : text::Split(args.targets, ',')) {
    spec = text::Trim(spec);
    if (spec.empty()) continue;
    const size_t eq = spec.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == spec.size()) {
      throw UsageError("--targets entries must be name=path, got '" + std::string(spec) + "'");
    }
    const std::string name(spec.substr(0, eq));
    const std::string path(spec.substr(eq + 1));
    RequireFile(path, "target file");
    corpus::CorpusReader reader(path, text::Tokenizer(config.tokenizer));
    overlap::NgramIndex index = overlap::BuildIndex(reader, options);
    log::Info("target ", name, ": ", index.stats().documents, " docs, ", index.stats().short_documents,
              " shorter than n, ", index.digest_count(), " distinct windows");
    built.emplace_back(name, std::move(index));
  }
  if (built.empty()) throw UsageError("--targets names no target");
  std::vector<overlap::NamedIndex> named;
  for (const auto& [name, index] : built) named.push_back({name, &index});

  corpus::CorpusReader reader(args.corpus, text::Tokenizer(config.tokenizer));
  overlap::ScanOptions scan;
  scan.tokenizer = tokenizer;
  scan.max_samples = static_cast<size_t>(std::max(0, args.samples));
  scan.workers = config.jobs;
  const overlap::OverlapReport report = overlap::Scan(reader, named, scan);
  files::WriteFileAtomic(args.out, WantsJson(args.out) ? overlap::RenderOverlapJson(report)
                                                       : overlap::RenderOverlapCsv(report));
  if (!args.json_out.empty()) files::WriteFileAtomic(args.json_out, overlap::RenderOverlapJson(report));
  return kExitOk;
}

// ---- metrics ---------------------------------------------------------------

struct MemorizeArgs {
  std::string pairs;
  std::string out;
  std::string model;
  std::string unit = "tokens";
  int max_n = 4;
};

int RunMemorize(const MemorizeArgs& args, const ToolConfig& config) {
  RequireFile(args.pairs, "pairs file");
  text::TokenizerConfig tok = config.tokenizer;
  if (args.unit == "chars") tok.unit = text::TokenUnit::kChars;
  else if (args.unit != "tokens") throw UsageError("--unit must be tokens or chars");
  const metrics::PairsLoadResult loaded = metrics::LoadGenerationPairs(args.pairs, text::Tokenizer(tok));
  if (loaded.skipped > 0) log::Warn("skipped ", loaded.skipped, " pair records");
  std::vector<metrics::ScoredPair> scored(loaded.pairs.size());
  ParallelFor(loaded.pairs.size(), config.jobs,
              [&](size_t i) { scored[i] = metrics::ScorePair(loaded.pairs[i], args.max_n); });
  const std::string model = args.model.empty() ? fs::path(args.pairs).stem().string() : args.model;
  const std::vector<metrics::MemorizationSummary> summaries = {metrics::SummarizeMemorization(model, scored)};
  files::WriteFileAtomic(args.out, WantsJson(args.out) ? metrics::RenderMemorizationJson(summaries)
                                                       : metrics::RenderMemorizationCsv(summaries));
  return kExitOk;
}

struct ScoreMcqArgs {
  std::string items;
  std::string preds;
  std::string out;
  std::string name;
};

int RunScoreMcq(const ScoreMcqArgs& args) {
  RequireFile(args.items, "benchmark file");
  RequireFile(args.preds, "predictions file");
  const metrics::McqLoadResult items = metrics::LoadMcqItems(args.items);
  if (items.skipped > 0) log::Warn("skipped ", items.skipped, " benchmark records");
  const metrics::McqScore score = metrics::ScoreMcq(items.items, metrics::LoadPredictions(args.preds));
  const std::string name = args.name.empty() ? fs::path(args.items).stem().string() : args.name;
  std::string body;
  if (WantsJson(args.out)) {
    nlohmann::json j = {{"benchmark", name},
                        {"total", score.total},
                        {"correct", score.correct},
                        {"missing", score.missing},
                        {"accuracy", score.accuracy()}};
    body = j.dump(2) + "\n";
  } else {
    body = "benchmark,total,correct,missing,accuracy\n" + text::CsvField(name) + "," + std::to_string(score.total) +
           "," + std::to_string(score.correct) + "," + std::to_string(score.missing) + "," +
           text::FormatFixed(score.accuracy(), 1) + "\n";
  }
  files::WriteFileAtomic(args.out, body);
  return kExitOk;
}

// ---- dcg -------------------------------------------------------------------

struct DcgArgs {
  std::string baseline;
  std::string treatment;
  double noise = -1.0;
  std::string out;
  std::vector<std::string> formats;
};

int RunDcg(const DcgArgs& args) {
  RequireFile(args.baseline, "baseline result set");
  RequireFile(args.treatment, "treatment result set");
  std::optional<double> noise;
  if (args.noise >= 0) noise = args.noise;
  const report::GapReport gap =
      report::ComputeDcg(report::LoadEvalResultSet(args.baseline), report::LoadEvalResultSet(args.treatment), noise);
  std::vector<std::string> formats = args.formats;
  if (formats.empty()) formats = {"csv"};
  const fs::path dir(args.out);
  for (const std::string& f : formats) {
    if (f == "csv") files::WriteFileAtomic(dir / "dcg.csv", report::RenderGapCsv(gap));
    else if (f == "json") files::WriteFileAtomic(dir / "dcg.json", report::RenderGapJson(gap));
    else if (f == "plot") files::WriteFileAtomic(dir / "dcg_plot.dat", report::RenderGapPlotData(gap));
    else throw UsageError("--format must be csv, json or plot");
  }
  return kExitOk;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  CLI::App app{"cgate: robots.txt compliance auditing for web corpora", "cgate"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  GlobalOptions global;
  RawSettings flags;
  app.add_option("--config", global.config_file, "Flat key=value config file");
  app.add_option("--log-level", global.log_level, "debug|info|warn|error|off");
  app.add_option("--jobs", global.jobs, "Worker threads (default: available parallelism)");
  app.add_option("--tokenizer", global.tokenizer, "Token counting options, e.g. nfc or nfc,fold,punct");

  ParseRobotsArgs pr;
  auto* parse_robots = app.add_subcommand("parse-robots", "Parse a robots.txt file and answer allow/disallow queries");
  parse_robots->add_option("--file", pr.file, "robots.txt file")->required();
  parse_robots->add_option("--agent", pr.agent, "User-agent token to query");
  parse_robots->add_option("--path", pr.path, "URL path to query (default /)");
  parse_robots->add_option("--status", pr.status, "HTTP status the file was fetched with");
  parse_robots->add_flag("--blocked", pr.blocked, "List blocklist agents disallowed at --path");
  parse_robots->add_option("--blocklist", flags["blocklist"], "Blocklist file");
  parse_robots->add_flag("--dump", pr.dump, "Print the normalized policy");
  parse_robots->add_flag("--allow-unreachable", pr.allow_unreachable, "Treat 5xx robots.txt as allow-all");

  TimelineArgs tl;
  auto* timeline_cmd = app.add_subcommand("timeline", "Reconstruct robots.txt block timelines from an archive");
  timeline_cmd->add_option("--domains", tl.domains, "File with one domain per line")->required();
  timeline_cmd->add_option("--from", tl.from, "First month, YYYY-MM")->required();
  timeline_cmd->add_option("--to", tl.to, "Last month, YYYY-MM")->required();
  timeline_cmd->add_option("--blocklist", flags["blocklist"], "Blocklist file");
  timeline_cmd->add_option("--cache", flags["cache_dir"], "Snapshot cache directory");
  timeline_cmd->add_flag("--offline", tl.offline, "Use cached snapshots only");
  timeline_cmd->add_option("--rps", flags["rps"], "Archive request rate cap (requests/second)");
  timeline_cmd->add_option("--out", tl.out, "Output directory")->required();
  timeline_cmd->add_option("--archive-url", tl.archive_url, "Archive base URL (default: Internet Archive)");
  timeline_cmd->add_option("--probe-path", tl.probe_path, "Path evaluated in each snapshot (default /)");
  timeline_cmd->add_option("--retries", tl.retries, "Retries on 429/5xx (default 5)");
  timeline_cmd->add_option("--backoff-ms", tl.backoff_ms, "Initial retry backoff in ms (default 1000)");
  timeline_cmd->add_flag("--plot", tl.plot, "Also write timeline.dat for plotting");

  FilterArgs fa;
  auto* filter = app.add_subcommand("filter", "Split a corpus into compliant and non-compliant documents");
  filter->add_option("--corpus", fa.corpus, "Corpus JSONL (optionally gzip)")->required();
  filter->add_option("--policies", fa.policies, "Snapshot cache or directory of <host>.robots.txt")->required();
  filter->add_option("--blocklist", flags["blocklist"], "Blocklist file");
  filter->add_option("--cutoff", flags["cutoff"], "Latest snapshot date to honor, YYYY-MM-DD");
  filter->add_option("--mode", fa.mode, "path (default) or domain");
  filter->add_option("--unreachable", fa.unreachable, "disallow (default) or allow for 5xx robots.txt");
  filter->add_option("--out", fa.out, "Output directory")->required();

  ExcludeArgs ex;
  auto* exclude = app.add_subcommand("exclude", "Remove documents from listed domains");
  exclude->add_option("--corpus", ex.corpus, "Corpus JSONL (optionally gzip)")->required();
  exclude->add_option("--domains", ex.domains, "Registrable domains, one per line")->required();
  exclude->add_option("--out", ex.out, "Output directory")->required();

  StatsArgs st;
  auto* stats = app.add_subcommand("stats", "Rank domains by documents removed");
  stats->add_option("--partition", st.partition, "Output directory of filter or exclude")->required();
  stats->add_option("--top-k", st.top_k, "Rows to keep (default 20)");
  stats->add_option("--out", st.out, "Output file (.csv or .json)")->required();

  OverlapArgs ov;
  auto* overlap_cmd = app.add_subcommand("overlap", "Count corpus documents sharing an n-gram with target documents");
  overlap_cmd->add_option("--corpus", ov.corpus, "Corpus JSONL")->required();
  overlap_cmd->add_option("--targets", ov.targets, "name=path[,name=path...]")->required();
  overlap_cmd->add_option("--n", ov.n, "Window length in tokens (default 50)");
  overlap_cmd->add_option("--out", ov.out, "Output file (.csv or .json)")->required();
  overlap_cmd->add_option("--json", ov.json_out, "Also write the JSON report with samples here");
  overlap_cmd->add_option("--samples", ov.samples, "Matched windows kept per target (default 5)");
  overlap_cmd->add_flag("--verify", ov.verify, "Re-check every hash hit token by token");
  overlap_cmd->add_flag("--no-guard", ov.no_guard, "Disable the second, independent window hash");
  std::string ngram_tokenizer = "nfc,fold,punct";
  overlap_cmd->add_option("--ngram-tokenizer", ngram_tokenizer, "Window tokenizer (default nfc,fold,punct)");

  MemorizeArgs ms;
  auto* memorize = app.add_subcommand("memorize-score", "LCCS and BLEU of generations against references");
  memorize->add_option("--pairs", ms.pairs, "Pairs JSONL")->required();
  memorize->add_option("--out", ms.out, "Output file (.csv or .json)")->required();
  memorize->add_option("--model", ms.model, "Model label (default: pairs file stem)");
  memorize->add_option("--unit", ms.unit, "tokens (default) or chars");
  memorize->add_option("--max-n", ms.max_n, "Highest BLEU n-gram order (default 4)");

  ScoreMcqArgs mc;
  auto* score_mcq = app.add_subcommand("score-mcq", "Accuracy of multiple-choice predictions");
  score_mcq->add_option("--items", mc.items, "Benchmark JSONL")->required();
  score_mcq->add_option("--preds", mc.preds, "Predictions CSV (id,label)")->required();
  score_mcq->add_option("--out", mc.out, "Output file (.csv or .json)")->required();
  score_mcq->add_option("--name", mc.name, "Benchmark label (default: items file stem)");

  DcgArgs dg;
  auto* dcg = app.add_subcommand("dcg", "Data compliance gap between two result sets");
  dcg->add_option("--baseline", dg.baseline, "Compliant model result set (JSON)")->required();
  dcg->add_option("--treatment", dg.treatment, "Non-compliant or augmented result set (JSON)")->required();
  dcg->add_option("--noise", dg.noise, "Flag |gap| below this threshold as within noise");
  dcg->add_option("--out", dg.out, "Output directory")->required();
  dcg->add_option("--format", dg.formats, "csv, json or plot (repeatable; default csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    flags["jobs"] = global.jobs;
    flags["log_level"] = global.log_level;
    flags["tokenizer"] = global.tokenizer;
    std::optional<fs::path> config_file;
    if (!global.config_file.empty()) {
      RequireFile(global.config_file, "config file");
      config_file = global.config_file;
    }
    const ToolConfig config = ResolveConfig(flags, env, config_file);
    log::SetLevel(config.log_level);

    if (parse_robots->parsed()) {
      RequireFile(pr.file, "robots.txt file");
      return RunParseRobots(pr, config, out);
    }
    if (timeline_cmd->parsed()) return RunTimeline(tl, config);
    if (filter->parsed()) return RunFilter(fa, config);
    if (exclude->parsed()) return RunExclude(ex, config);
    if (stats->parsed()) return RunStats(st);
    if (overlap_cmd->parsed()) return RunOverlap(ov, config, ParseTokenizerSpec(ngram_tokenizer));
    if (memorize->parsed()) return RunMemorize(ms, config);
    if (score_mcq->parsed()) return RunScoreMcq(mc);
    if (dcg->parsed()) return RunDcg(dg);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::kUsage: return kExitUsage;
      case ErrorKind::kNetwork: return kExitNetwork;
      case ErrorKind::kInput:
      case ErrorKind::kOutput: return kExitInput;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace cgate::cli
