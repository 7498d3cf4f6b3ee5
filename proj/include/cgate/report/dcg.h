#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cgate/common/error.h"
#include "cgate/common/vendor_json.h"

namespace cgate::report {

// Benchmark scores (percentages) of one trained model.
struct EvalResultSet {
  std::string run_label;
  uint64_t tokens_trained = 0;
  std::map<std::string, double> scores;

  bool operator==(const EvalResultSet&) const = default;
};

// Throws InputError on a score outside [0, 100] or an empty benchmark name.
EvalResultSet EvalResultSetFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const EvalResultSet& set);
EvalResultSet LoadEvalResultSet(const std::filesystem::path& path);

class NoSharedBenchmarksError : public InputError {
 public:
  using InputError::InputError;
};

class MissingBenchmarkError : public InputError {
 public:
  using InputError::InputError;
};

// Sign convention: gap = treatment - baseline. With the compliant model as
// baseline, a positive gap means compliance costs performance.
struct GapReport {
  std::string baseline_label;
  std::string treatment_label;
  std::map<std::string, double> per_benchmark;
  double average_gap = 0.0;
  std::vector<std::string> only_in_baseline;
  std::vector<std::string> only_in_treatment;
  // |gap| below this is flagged "within noise" in rendered reports.
  std::optional<double> noise_threshold;

  bool operator==(const GapReport&) const = default;
};

inline constexpr const char* kSignConvention =
    "gap = treatment - baseline; positive means the compliant baseline scores lower";

// Throws NoSharedBenchmarksError.
GapReport ComputeDcg(const EvalResultSet& baseline, const EvalResultSet& treatment,
                     std::optional<double> noise_threshold = std::nullopt);

// Unweighted mean over `benchmarks`. Throws MissingBenchmarkError, or
// UsageError for an empty subset.
double AggregateAverage(const EvalResultSet& set, const std::vector<std::string>& benchmarks);

bool WithinNoise(const GapReport& report, double gap);

// Scores and gaps rounded half-up to one decimal for display only.
std::string RenderGapCsv(const GapReport& report);
// Full-precision values; GapReportFromJson(parse(RenderGapJson(r))) == r.
std::string RenderGapJson(const GapReport& report);
GapReport GapReportFromJson(const nlohmann::json& j);
// "benchmark gap" rows for bar plots.
std::string RenderGapPlotData(const GapReport& report);

// Table of result sets, one row per run plus an Avg column over `benchmarks`.
std::string RenderScoreTableCsv(const std::vector<EvalResultSet>& sets, const std::vector<std::string>& benchmarks);

}  // namespace cgate::report
