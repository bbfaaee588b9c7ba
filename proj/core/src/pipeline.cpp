#include "mergeprobe/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mergeprobe/analyzer.hpp"
#include "mergeprobe/context.hpp"
#include "mergeprobe/harness.hpp"
#include "mergeprobe/postprocess.hpp"
#include "mergeprobe/prompt.hpp"

namespace mergeprobe {
namespace {

using Clock = std::chrono::steady_clock;

struct ScenarioResult {
  bool discarded = false;
  RunTallies tallies;  // per-scenario deltas, folded in scenario order
  ScenarioVerdict verdict;
  bool has_verdict = false;
  std::string conflict_id;
  std::vector<std::string> warnings;
  std::vector<std::string> command_log;
};

GenerationConfig generation_config(const RunConfigLabel& point,
                                   const PipelineConfig& config) {
  GenerationConfig g;
  g.model_name = config.model;
  g.temperature = point.temperature;
  g.seed = point.seed;
  g.responses_per_prompt = config.responses_per_prompt;
  g.timeout = std::chrono::milliseconds(config.generation_timeout_ms);
  return g;
}

ScenarioResult process_scenario(const MergeScenario& scenario, const RunConfigLabel& point,
                                const PipelineConfig& config, GenerationBackend& backend,
                                const std::filesystem::path& run_dir,
                                const OneShotExample* example) {
  ScenarioResult result;
  auto discard = [&result, &scenario](const std::string& why) {
    result.discarded = true;
    result.tallies.discarded_scenarios = 1;
    result.warnings.push_back("scenario " + scenario.scenario_id + " discarded: " + why);
  };

  auto issues = validate_scenario(scenario, config.workspace);
  if (!issues.empty()) {
    std::string why = "validation failed:";
    for (const auto& issue : issues) {
      why += " [" + std::string(version_label(issue.version)) + " " +
             issue_kind_name(issue.kind) + " " + issue.path + "]";
    }
    discard(why);
    return result;
  }

  std::map<VersionId, std::filesystem::path> versions;
  try {
    versions = materialize_versions(scenario, config.workspace);
  } catch (const MaterializeError& e) {
    discard(e.what());
    return result;
  }

  // Both parent contexts are extracted up front; prompts are then built for
  // the configured branches only.
  std::map<VersionId, CodeContext> contexts;
  try {
    for (VersionId branch : {VersionId::Left, VersionId::Right}) {
      contexts.emplace(branch,
                       extract_for_branch(scenario, branch, config.workspace,
                                          &result.warnings));
    }
  } catch (const ExtractionError& e) {
    discard(std::string("context extraction failed: ") + e.what());
    return result;
  }

  result.tallies.methods = 1;
  GenerationConfig gen_cfg = generation_config(point, config);

  struct PendingArtifact {
    TestArtifact artifact;
    VersionId branch;
  };
  std::vector<PendingArtifact> artifacts;
  std::map<VersionId, std::set<std::string>> used_names;

  for (VersionId branch : config.branches) {
    const CodeContext& ctx = contexts.at(branch);
    for (const PromptVariant& variant : config.grid.variants) {
      Prompt prompt =
          build_prompt(ctx, scenario, variant, point.format, example, &result.warnings);
      result.tallies.generation_calls += 1;
      std::vector<RawResponse> responses = backend.generate(prompt, gen_cfg);
      for (const RawResponse& response : responses) {
        result.tallies.responses_total += 1;
        if (response.error) {
          result.tallies.generation_errors += 1;
          result.warnings.push_back(
              "scenario " + scenario.scenario_id + " variant " +
              std::to_string(variant.variant_id) + " response " +
              std::to_string(response.response_index) + ": generation " +
              std::string(generation_error_name(*response.error)));
          continue;
        }
        std::string cleaned = clean_response(response.text);
        if (cleaned.empty()) {
          result.tallies.no_code += 1;
          continue;
        }
        TestOrigin origin;
        origin.scenario_id = scenario.scenario_id;
        origin.branch = branch;
        origin.format = point.format;
        origin.variant_id = variant.variant_id;
        origin.response_index = response.response_index;
        ExtractedTests extracted = extract_test_methods(cleaned, origin);
        if (extracted.parse_failed) {
          result.tallies.parse_failure += 1;
          continue;
        }
        for (const TestMethod& tm : extracted.tests) {
          try {
            TestArtifact artifact = assemble_test_file(tm, ctx, config.test_package,
                                                       &used_names[branch]);
            result.tallies.tests_generated += 1;
            artifacts.push_back({std::move(artifact), branch});
          } catch (const std::logic_error& e) {
            result.tallies.parse_failure += 1;
            result.warnings.push_back("scenario " + scenario.scenario_id + ": " + e.what());
          }
        }
      }
    }
  }

  ExecutionHarness harness(config.toolchain, run_dir, config.test_package);
  harness.compile_timeout = std::chrono::milliseconds(config.compile_timeout_ms);
  std::vector<ConflictWitness> signals;

  for (const PendingArtifact& pending : artifacts) {
    const TestArtifact& artifact = pending.artifact;
    if (config.generation_only) {
      CompileResult cr =
          harness.compile_test(artifact, VersionId::Base, versions.at(VersionId::Base));
      if (cr.ok) result.tallies.tests_compiled += 1;
      else result.tallies.compile_failed += 1;
      continue;
    }
    bool compiled_everywhere = true;
    for (VersionId v : kAllVersions) {
      CompileResult cr = harness.compile_test(artifact, v, versions.at(v));
      if (!cr.ok) {
        compiled_everywhere = false;
        break;  // artifact excluded; remaining versions would be wasted work
      }
    }
    if (!compiled_everywhere) {
      result.tallies.compile_failed += 1;
      continue;
    }
    result.tallies.tests_compiled += 1;

    OutcomeVector vec = harness.evaluate_outcome_vector(
        artifact, versions, config.repeats,
        std::chrono::milliseconds(config.exec_timeout_ms));
    if (!vec.stable) {
      result.tallies.invalid += 1;
      continue;
    }
    ConflictWitness witness;
    witness.artifact_file = artifact.file_name;
    witness.variant_id = artifact.test_method.origin.variant_id;
    witness.signal = classify_outcome_vector(vec);
    witness.outcomes = vec.outcomes;
    signals.push_back(std::move(witness));
  }

  if (!config.generation_only) {
    result.verdict = aggregate_scenario_verdict(scenario.scenario_id, signals);
    result.has_verdict = true;
  }
  result.conflict_id = conflict_identifier(scenario);
  result.command_log = harness.command_log();
  return result;
}

void write_point_manifest(const std::filesystem::path& path, const std::string& label,
                          const RunRecords& records) {
  nlohmann::ordered_json doc;
  doc["label"] = label;
  doc["status"] = "completed";
  doc["generation_calls"] = records.tallies.generation_calls;
  doc["conflicts_detected"] = records.conflicts_detected();
  nlohmann::ordered_json tallies;
  tallies["methods"] = records.tallies.methods;
  tallies["responses_total"] = records.tallies.responses_total;
  tallies["generation_errors"] = records.tallies.generation_errors;
  tallies["no_code"] = records.tallies.no_code;
  tallies["parse_failure"] = records.tallies.parse_failure;
  tallies["tests_generated"] = records.tallies.tests_generated;
  tallies["compile_failed"] = records.tallies.compile_failed;
  tallies["tests_compiled"] = records.tallies.tests_compiled;
  tallies["invalid"] = records.tallies.invalid;
  tallies["discarded_scenarios"] = records.tallies.discarded_scenarios;
  doc["tallies"] = tallies;
  doc["verdicts"] = nlohmann::ordered_json::array();
  for (const auto& v : records.verdicts) {
    nlohmann::ordered_json entry;
    entry["scenario_id"] = v.scenario_id;
    entry["detected"] = v.conflict_detected;
    auto it = records.conflict_ids.find(v.scenario_id);
    entry["conflict_id"] = it == records.conflict_ids.end() ? v.scenario_id : it->second;
    doc["verdicts"].push_back(entry);
  }
  std::ofstream out(path, std::ios::binary);
  out << doc.dump(2) << "\n";
}

bool load_point_manifest(const std::filesystem::path& path, GridPointSummary* summary,
                         std::vector<ScenarioVerdict>* verdicts,
                         std::map<std::string, std::string>* conflict_ids) {
  std::ifstream in(path);
  if (!in) return false;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error&) {
    return false;
  }
  if (doc.value("status", "") != "completed") return false;
  summary->conflicts_detected = doc.value("conflicts_detected", 0);
  const auto& tallies = doc["tallies"];
  summary->tallies.methods = tallies.value("methods", 0);
  summary->tallies.generation_calls = doc.value("generation_calls", 0);
  summary->tallies.responses_total = tallies.value("responses_total", 0);
  summary->tallies.generation_errors = tallies.value("generation_errors", 0);
  summary->tallies.no_code = tallies.value("no_code", 0);
  summary->tallies.parse_failure = tallies.value("parse_failure", 0);
  summary->tallies.tests_generated = tallies.value("tests_generated", 0);
  summary->tallies.compile_failed = tallies.value("compile_failed", 0);
  summary->tallies.tests_compiled = tallies.value("tests_compiled", 0);
  summary->tallies.invalid = tallies.value("invalid", 0);
  summary->tallies.discarded_scenarios = tallies.value("discarded_scenarios", 0);
  for (const auto& entry : doc.value("verdicts", nlohmann::json::array())) {
    ScenarioVerdict v;
    v.scenario_id = entry.value("scenario_id", "");
    v.conflict_detected = entry.value("detected", false);
    verdicts->push_back(std::move(v));
    (*conflict_ids)[verdicts->back().scenario_id] =
        entry.value("conflict_id", verdicts->back().scenario_id);
  }
  return true;
}

std::string two_decimals(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

void write_mean_metrics(const std::filesystem::path& path,
                        const std::vector<GridPointSummary>& points,
                        const std::vector<PromptFormat>& formats) {
  std::ostringstream csv;
  csv << "format,runs,mean_tests_generated,mean_tests_compiled,mean_per_method_generated,"
         "mean_per_method_compiled,mean_compilation_rate,mean_conflicts_detected\n";
  for (PromptFormat format : formats) {
    std::string prefix = std::string(format_key(format)) + "_";
    std::int64_t runs = 0;
    double generated = 0, compiled = 0, pm_generated = 0, pm_compiled = 0, rate = 0,
           conflicts = 0;
    for (const auto& p : points) {
      if (p.label.rfind(prefix, 0) != 0) continue;
      ++runs;
      const RunTallies& t = p.tallies;
      generated += static_cast<double>(t.tests_generated);
      compiled += static_cast<double>(t.tests_compiled);
      if (t.methods > 0) {
        pm_generated += static_cast<double>(t.tests_generated) / t.methods;
        pm_compiled += static_cast<double>(t.tests_compiled) / t.methods;
      }
      if (t.tests_generated > 0) {
        rate += 100.0 * static_cast<double>(t.tests_compiled) / t.tests_generated;
      }
      conflicts += static_cast<double>(p.conflicts_detected);
    }
    if (runs == 0) continue;
    double n = static_cast<double>(runs);
    csv << format_key(format) << ',' << runs << ',' << two_decimals(generated / n) << ','
        << two_decimals(compiled / n) << ',' << two_decimals(pm_generated / n) << ','
        << two_decimals(pm_compiled / n) << ',' << two_decimals(rate / n) << "%,"
        << two_decimals(conflicts / n) << "\n";
  }
  std::ofstream out(path, std::ios::binary);
  out << csv.str();
}

}  // namespace

std::int64_t RunRecords::conflicts_detected() const {
  std::int64_t n = 0;
  for (const auto& v : verdicts) {
    if (v.conflict_detected) ++n;
  }
  return n;
}

std::unique_ptr<GenerationBackend> make_backend(const PipelineConfig& config) {
  if (config.backend == "http") {
    return std::make_unique<HttpBackend>(config.endpoint_host, config.endpoint_port,
                                         config.max_in_flight);
  }
  StubTable table;
  if (!config.stub_table.empty()) table = StubTable::load(config.stub_table);
  return std::make_unique<StubBackend>(std::move(table));
}

RunRecords run_pipeline(const std::vector<MergeScenario>& scenarios,
                        const RunConfigLabel& point, const PipelineConfig& config,
                        GenerationBackend& backend, const std::filesystem::path& run_dir) {
  auto started = Clock::now();
  std::filesystem::create_directories(run_dir);

  OneShotExample example_storage;
  const OneShotExample* example = nullptr;
  if (!config.one_shot_example.empty()) {
    example_storage = load_one_shot_example(config.one_shot_example);
    example = &example_storage;
  }

  std::vector<ScenarioResult> results(scenarios.size());
  std::exception_ptr fatal;
  std::mutex fatal_mu;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= scenarios.size()) return;
      {
        std::lock_guard lock(fatal_mu);
        if (fatal) return;
      }
      try {
        results[i] =
            process_scenario(scenarios[i], point, config, backend, run_dir, example);
      } catch (...) {
        std::lock_guard lock(fatal_mu);
        if (!fatal) fatal = std::current_exception();
        return;
      }
    }
  };

  int threads = config.parallelism;
  if (threads <= 1 || scenarios.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    int count = static_cast<int>(
        std::min(static_cast<std::size_t>(threads), scenarios.size()));
    pool.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (fatal) std::rethrow_exception(fatal);

  RunRecords records;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    ScenarioResult& r = results[i];
    RunTallies& t = records.tallies;
    const RunTallies& d = r.tallies;
    t.methods += d.methods;
    t.generation_calls += d.generation_calls;
    t.responses_total += d.responses_total;
    t.generation_errors += d.generation_errors;
    t.no_code += d.no_code;
    t.parse_failure += d.parse_failure;
    t.tests_generated += d.tests_generated;
    t.compile_failed += d.compile_failed;
    t.tests_compiled += d.tests_compiled;
    t.invalid += d.invalid;
    t.discarded_scenarios += d.discarded_scenarios;
    if (r.has_verdict) records.verdicts.push_back(std::move(r.verdict));
    if (!r.discarded) records.conflict_ids[scenarios[i].scenario_id] = r.conflict_id;
    records.warnings.insert(records.warnings.end(), r.warnings.begin(), r.warnings.end());
    records.command_log.insert(records.command_log.end(), r.command_log.begin(),
                               r.command_log.end());
  }
  std::sort(records.verdicts.begin(), records.verdicts.end(),
            [](const ScenarioVerdict& a, const ScenarioVerdict& b) {
              return a.scenario_id < b.scenario_id;
            });
  records.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started).count();
  return records;
}

std::vector<std::filesystem::path> emit_run_reports(const RunRecords& records,
                                                    const RunConfigLabel& point,
                                                    const PipelineConfig& config,
                                                    const std::filesystem::path& run_dir,
                                                    const std::string& started_at,
                                                    const std::string& finished_at) {
  RunMetrics metrics = compute_run_metrics(records.tallies, records.conflicts_detected(),
                                           records.wall_time_ms);
  DetectionMatrix matrix = build_detection_matrix(
      {{config_label_string(point), records.verdicts}}, records.conflict_ids);
  RunManifestInfo manifest;
  manifest.started_at = started_at;
  manifest.finished_at = finished_at;
  manifest.wall_time_ms = records.wall_time_ms;
  manifest.config_json = config_to_json(config);
  auto written = emit_reports(metrics, matrix, records.verdicts, records.conflict_ids,
                              manifest, run_dir);

  if (!records.command_log.empty()) {
    std::ofstream log(run_dir / "commands.log", std::ios::binary);
    for (const auto& line : records.command_log) log << line << "\n";
    written.push_back(run_dir / "commands.log");
  }
  if (!records.warnings.empty()) {
    std::ofstream log(run_dir / "warnings.log", std::ios::binary);
    for (const auto& line : records.warnings) log << line << "\n";
    written.push_back(run_dir / "warnings.log");
  }
  return written;
}

GridOutcome run_experiment_grid(const std::vector<MergeScenario>& scenarios,
                                const PipelineConfig& config) {
  std::vector<MergeScenario> selected;
  if (config.grid.scenario_filter.empty()) {
    selected = scenarios;
  } else {
    std::set<std::string> wanted(config.grid.scenario_filter.begin(),
                                 config.grid.scenario_filter.end());
    for (const auto& s : scenarios) {
      if (wanted.count(s.scenario_id)) selected.push_back(s);
    }
  }

  auto backend = make_backend(config);
  GridOutcome outcome;

  for (PromptFormat format : config.grid.formats) {
    for (double temperature : config.grid.temperatures) {
      for (int seed : config.grid.seeds) {
        RunConfigLabel point{format, temperature, seed};
        std::string label = config_label_string(point);
        std::filesystem::path run_dir = config.out_dir / "runs" / label;
        std::filesystem::path point_file = run_dir / "point.json";

        GridPointSummary summary;
        summary.label = label;
        std::vector<ScenarioVerdict> verdicts;
        if (load_point_manifest(point_file, &summary, &verdicts, &outcome.conflict_ids)) {
          summary.executed = false;
        } else {
          std::string started_at = iso_utc_now();
          PipelineConfig point_config = config;
          point_config.temperature = temperature;
          point_config.seed = seed;
          point_config.format = format;
          RunRecords records =
              run_pipeline(selected, point, point_config, *backend, run_dir);
          emit_run_reports(records, point, point_config, run_dir, started_at,
                           iso_utc_now());
          write_point_manifest(point_file, label, records);
          summary.executed = true;
          summary.tallies = records.tallies;
          summary.conflicts_detected = records.conflicts_detected();
          verdicts = records.verdicts;
          for (const auto& [id, conflict] : records.conflict_ids) {
            outcome.conflict_ids[id] = conflict;
          }
        }
        outcome.points.push_back(summary);
        outcome.runs.emplace_back(label, std::move(verdicts));
      }
    }
  }

  outcome.union_matrix = build_detection_matrix(outcome.runs, outcome.conflict_ids);

  {
    std::ostringstream csv;
    csv << "conflict";
    for (const auto& label : outcome.union_matrix.config_labels) csv << ',' << label;
    csv << ",union\n";
    for (const auto& id : outcome.union_matrix.conflict_ids) {
      std::string field = id;
      if (field.find(',') != std::string::npos) field = "\"" + field + "\"";
      csv << field;
      for (bool flag : outcome.union_matrix.cells.at(id)) csv << ',' << (flag ? '1' : '0');
      csv << ',' << (matrix_union_flag(outcome.union_matrix, id) ? '1' : '0') << "\n";
    }
    std::filesystem::create_directories(config.out_dir);
    std::ofstream out(config.out_dir / "union_detection_matrix.csv", std::ios::binary);
    out << csv.str();
  }
  write_mean_metrics(config.out_dir / "mean_metrics.csv", outcome.points,
                     config.grid.formats);
  {
    nlohmann::ordered_json doc;
    doc["tool"] = "mergeprobe";
    doc["finished_at"] = iso_utc_now();
    doc["points"] = nlohmann::ordered_json::array();
    for (const auto& p : outcome.points) {
      doc["points"].push_back({{"label", p.label},
                               {"executed", p.executed},
                               {"generation_calls", p.tallies.generation_calls},
                               {"conflicts_detected", p.conflicts_detected}});
    }
    doc["union_conflicts"] = matrix_union_count(outcome.union_matrix);
    doc["config"] = nlohmann::json::parse(config_to_json(config));
    std::ofstream out(config.out_dir / "grid_manifest.json", std::ios::binary);
    out << doc.dump(2) << "\n";
  }
  return outcome;
}

std::string iso_utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm_utc.tm_year + 1900,
                tm_utc.tm_mon + 1, tm_utc.tm_mday, tm_utc.tm_hour, tm_utc.tm_min,
                tm_utc.tm_sec);
  return buf;
}

}  // namespace mergeprobe
