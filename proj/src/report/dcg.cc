#include "cgate/report/dcg.h"

#include <cmath>

#include "cgate/common/files.h"
#include "cgate/common/text.h"

namespace cgate::report {

using nlohmann::json;

EvalResultSet EvalResultSetFromJson(const json& j) {
  EvalResultSet set;
  try {
    set.run_label = j.at("run_label").get<std::string>();
    const json& tokens = j.at("tokens_trained");
    if (!tokens.is_number_unsigned() && !(tokens.is_number_integer() && tokens.get<int64_t>() >= 0)) {
      throw InputError("tokens_trained must be a non-negative integer");
    }
    set.tokens_trained = tokens.get<uint64_t>();
    for (const auto& [name, value] : j.at("scores").items()) {
      if (name.empty()) throw InputError("empty benchmark name in " + set.run_label);
      if (!value.is_number()) throw InputError("score for " + name + " is not a number");
      const double score = value.get<double>();
      if (!(score >= 0.0 && score <= 100.0)) {
        throw InputError("score for " + name + " outside [0, 100] in " + set.run_label);
      }
      set.scores[name] = score;
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed result set: ") + e.what());
  }
  return set;
}

json ToJson(const EvalResultSet& set) {
  json scores = json::object();
  for (const auto& [name, value] : set.scores) scores[name] = value;
  return json{{"run_label", set.run_label}, {"tokens_trained", set.tokens_trained}, {"scores", scores}};
}

EvalResultSet LoadEvalResultSet(const std::filesystem::path& path) {
  try {
    return EvalResultSetFromJson(json::parse(files::ReadFile(path)));
  } catch (const json::exception& e) {
    throw InputError("malformed result set " + path.string() + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

GapReport ComputeDcg(const EvalResultSet& baseline, const EvalResultSet& treatment,
                     std::optional<double> noise_threshold) {
  GapReport report;
  report.baseline_label = baseline.run_label;
  report.treatment_label = treatment.run_label;
  report.noise_threshold = noise_threshold;
  for (const auto& [name, score] : baseline.scores) {
    auto it = treatment.scores.find(name);
    if (it == treatment.scores.end()) {
      report.only_in_baseline.push_back(name);
    } else {
      report.per_benchmark[name] = it->second - score;
    }
  }
  for (const auto& [name, score] : treatment.scores) {
    if (!baseline.scores.count(name)) report.only_in_treatment.push_back(name);
  }
  if (report.per_benchmark.empty()) {
    throw NoSharedBenchmarksError("no shared benchmarks between '" + baseline.run_label + "' and '" +
                                  treatment.run_label + "'");
  }
  double sum = 0.0;
  for (const auto& [name, gap] : report.per_benchmark) sum += gap;
  report.average_gap = sum / static_cast<double>(report.per_benchmark.size());
  return report;
}

double AggregateAverage(const EvalResultSet& set, const std::vector<std::string>& benchmarks) {
  if (benchmarks.empty()) throw UsageError("benchmark subset is empty");
  double sum = 0.0;
  for (const std::string& name : benchmarks) {
    auto it = set.scores.find(name);
    if (it == set.scores.end()) {
      throw MissingBenchmarkError("benchmark '" + name + "' missing from " + set.run_label);
    }
    sum += it->second;
  }
  return sum / static_cast<double>(benchmarks.size());
}

bool WithinNoise(const GapReport& report, double gap) {
  return report.noise_threshold && std::fabs(gap) < *report.noise_threshold;
}

std::string RenderGapCsv(const GapReport& report) {
  std::string out = std::string("# ") + kSignConvention + "\n";
  out += "# baseline=" + report.baseline_label + "; treatment=" + report.treatment_label + "\n";
  out += "benchmark,gap,within_noise\n";
  auto noise = [&](double gap) -> std::string {
    if (!report.noise_threshold) return "";
    return WithinNoise(report, gap) ? "yes" : "no";
  };
  for (const auto& [name, gap] : report.per_benchmark) {
    out += text::CsvField(name) + "," + text::FormatFixed(gap, 1) + "," + noise(gap) + "\n";
  }
  out += "average," + text::FormatFixed(report.average_gap, 1) + "," + noise(report.average_gap) + "\n";
  for (const std::string& name : report.only_in_baseline) out += text::CsvField(name) + ",missing_in_treatment,\n";
  for (const std::string& name : report.only_in_treatment) out += text::CsvField(name) + ",missing_in_baseline,\n";
  return out;
}

std::string RenderGapJson(const GapReport& report) {
  json j = json::object();
  j["sign_convention"] = kSignConvention;
  j["baseline_label"] = report.baseline_label;
  j["treatment_label"] = report.treatment_label;
  json gaps = json::object();
  for (const auto& [name, gap] : report.per_benchmark) gaps[name] = gap;
  j["per_benchmark"] = gaps;
  j["average_gap"] = report.average_gap;
  j["only_in_baseline"] = report.only_in_baseline;
  j["only_in_treatment"] = report.only_in_treatment;
  j["noise_threshold"] = report.noise_threshold ? json(*report.noise_threshold) : json(nullptr);
  if (report.noise_threshold) {
    json flagged = json::array();
    for (const auto& [name, gap] : report.per_benchmark) {
      if (WithinNoise(report, gap)) flagged.push_back(name);
    }
    j["within_noise"] = flagged;
  }
  return j.dump(2) + "\n";
}

GapReport GapReportFromJson(const json& j) {
  GapReport r;
  try {
    r.baseline_label = j.at("baseline_label").get<std::string>();
    r.treatment_label = j.at("treatment_label").get<std::string>();
    for (const auto& [name, gap] : j.at("per_benchmark").items()) r.per_benchmark[name] = gap.get<double>();
    r.average_gap = j.at("average_gap").get<double>();
    r.only_in_baseline = j.at("only_in_baseline").get<std::vector<std::string>>();
    r.only_in_treatment = j.at("only_in_treatment").get<std::vector<std::string>>();
    if (j.contains("noise_threshold") && !j["noise_threshold"].is_null()) {
      r.noise_threshold = j["noise_threshold"].get<double>();
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed gap report: ") + e.what());
  }
  return r;
}

std::string RenderGapPlotData(const GapReport& report) {
  std::string out = "# benchmark gap (" + std::string(kSignConvention) + ")\n";
  for (const auto& [name, gap] : report.per_benchmark) {
    std::string label = name;
    for (char& c : label) {
      if (c == ' ' || c == '\t') c = '_';
    }
    out += label + " " + text::FormatFixed(gap, 4) + "\n";
  }
  return out;
}

std::string RenderScoreTableCsv(const std::vector<EvalResultSet>& sets, const std::vector<std::string>& benchmarks) {
  std::string out = "run";
  for (const std::string& b : benchmarks) out += "," + text::CsvField(b);
  out += ",Avg\n";
  for (const EvalResultSet& set : sets) {
    out += text::CsvField(set.run_label);
    for (const std::string& b : benchmarks) {
      auto it = set.scores.find(b);
      out += "," + (it == set.scores.end() ? std::string() : text::FormatFixed(it->second, 1));
    }
    out += "," + text::FormatFixed(AggregateAverage(set, benchmarks), 1) + "\n";
  }
  return out;
}

}  // namespace cgate::report
