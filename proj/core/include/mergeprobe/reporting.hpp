#ifndef MERGEPROBE_REPORTING_HPP_
#define MERGEPROBE_REPORTING_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mergeprobe/analyzer.hpp"
#include "mergeprobe/prompt.hpp"

namespace mergeprobe {

/// Raw counters accumulated over one run.
struct RunTallies {
  std::int64_t methods = 0;          // scenarios that reached generation
  std::int64_t generation_calls = 0;
  std::int64_t responses_total = 0;
  std::int64_t generation_errors = 0;  // responses that came back as errors
  std::int64_t no_code = 0;            // responses sanitized to ""
  std::int64_t parse_failure = 0;      // unparseable responses
  std::int64_t tests_generated = 0;    // assembled artifacts
  std::int64_t compile_failed = 0;     // failed on at least one version
  std::int64_t tests_compiled = 0;     // compiled on all four versions
  std::int64_t invalid = 0;            // flaky vectors discarded
  std::int64_t discarded_scenarios = 0;
};

struct RunMetrics {
  RunTallies tallies;
  double per_method_generated = 0;  // tests_generated / methods
  double per_method_compiled = 0;   // tests_compiled / methods
  double compilation_rate = 0;      // tests_compiled / tests_generated, in [0,1]
  std::int64_t conflicts_detected = 0;
  std::int64_t wall_time_ms = 0;  // manifest-only; never rendered into tables
};

/// Derives the ratio metrics; rounding happens only at render time.
RunMetrics compute_run_metrics(const RunTallies& tallies, std::int64_t conflicts_detected,
                               std::int64_t wall_time_ms = 0);

/// num/den with exactly two decimals, half-up, in pure integer math.
std::string format_ratio_2dp(std::int64_t num, std::int64_t den);

/// 100*num/den rendered as "12.04%", two decimals, half-up.
std::string format_percent_2dp(std::int64_t num, std::int64_t den);

/// One run configuration as reports label it, e.g. "one_shot_t0.7_s123".
struct RunConfigLabel {
  PromptFormat format = PromptFormat::ZeroShot;
  double temperature = 0.0;
  int seed = 42;
};

std::string config_label_string(const RunConfigLabel& label);

/// Conflict identifier used as a matrix row: project::Class::element.
std::string conflict_identifier(const MergeScenario& scenario);

/// Detected-conflict rows crossed with run configurations, plus a derived
/// union column. Rows appear iff some configuration detected them.
struct DetectionMatrix {
  std::vector<std::string> config_labels;
  std::vector<std::string> conflict_ids;             // sorted
  std::map<std::string, std::vector<bool>> cells;    // conflict_id → per-config
};

bool matrix_union_flag(const DetectionMatrix& m, const std::string& conflict_id);
std::int64_t matrix_union_count(const DetectionMatrix& m);

/// `runs` pairs each configuration label with its verdicts;
/// `conflict_id_by_scenario` maps scenario_id to the row identifier.
DetectionMatrix build_detection_matrix(
    const std::vector<std::pair<std::string, std::vector<ScenarioVerdict>>>& runs,
    const std::map<std::string, std::string>& conflict_id_by_scenario);

/// Everything that is allowed to differ between byte-identical runs.
struct RunManifestInfo {
  std::string tool = "mergeprobe";
  std::string started_at;   // ISO 8601, empty in tests
  std::string finished_at;
  std::int64_t wall_time_ms = 0;
  std::string config_json;  // effective configuration, pre-serialized
};

/// Writes run_metrics.csv, detection_matrix.csv, witnesses.csv, and
/// manifest.json under out_dir. Table bytes are a pure function of the
/// inputs; timestamps and wall time live only in the manifest.
/// Returns the written paths.
std::vector<std::filesystem::path> emit_reports(
    const RunMetrics& metrics, const DetectionMatrix& matrix,
    const std::vector<ScenarioVerdict>& verdicts,
    const std::map<std::string, std::string>& conflict_id_by_scenario,
    const RunManifestInfo& manifest, const std::filesystem::path& out_dir);

}  // namespace mergeprobe

#endif  // MERGEPROBE_REPORTING_HPP_
