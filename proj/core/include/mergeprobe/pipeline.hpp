#ifndef MERGEPROBE_PIPELINE_HPP_
#define MERGEPROBE_PIPELINE_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mergeprobe/config.hpp"
#include "mergeprobe/generation.hpp"
#include "mergeprobe/reporting.hpp"
#include "mergeprobe/scenario.hpp"

namespace mergeprobe {

/// Everything one run produced, before report emission.
struct RunRecords {
  RunTallies tallies;
  std::vector<ScenarioVerdict> verdicts;            // sorted by scenario_id
  std::map<std::string, std::string> conflict_ids;  // scenario_id → identifier
  std::vector<std::string> warnings;
  std::vector<std::string> command_log;
  std::int64_t wall_time_ms = 0;

  std::int64_t conflicts_detected() const;
};

std::unique_ptr<GenerationBackend> make_backend(const PipelineConfig& config);

/// Executes validate → materialize → extract → prompt → generate →
/// postprocess → compile/execute → classify → aggregate for every scenario.
/// Stage failures discard only the affected unit and are tallied; only
/// configuration problems (ToolchainError, ConfigError) propagate.
/// Artifacts and logs land under `run_dir`.
RunRecords run_pipeline(const std::vector<MergeScenario>& scenarios,
                        const RunConfigLabel& point, const PipelineConfig& config,
                        GenerationBackend& backend, const std::filesystem::path& run_dir);

/// Emits the standard report set for one run into `run_dir`.
std::vector<std::filesystem::path> emit_run_reports(const RunRecords& records,
                                                    const RunConfigLabel& point,
                                                    const PipelineConfig& config,
                                                    const std::filesystem::path& run_dir,
                                                    const std::string& started_at,
                                                    const std::string& finished_at);

struct GridPointSummary {
  std::string label;
  bool executed = false;  // false = resumed from a completed point manifest
  RunTallies tallies;
  std::int64_t conflicts_detected = 0;
};

struct GridOutcome {
  std::vector<GridPointSummary> points;
  std::vector<std::pair<std::string, std::vector<ScenarioVerdict>>> runs;
  std::map<std::string, std::string> conflict_ids;
  DetectionMatrix union_matrix;
};

/// Runs every grid point, skipping points whose manifest says completed,
/// then writes the union detection matrix and the per-format mean table.
GridOutcome run_experiment_grid(const std::vector<MergeScenario>& scenarios,
                                const PipelineConfig& config);

/// UTC wall-clock timestamp, ISO 8601, second resolution.
std::string iso_utc_now();

}  // namespace mergeprobe

#endif  // MERGEPROBE_PIPELINE_HPP_
