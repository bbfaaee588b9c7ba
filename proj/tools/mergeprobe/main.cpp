// Pipeline driver. Verbs:
//   validate  parse a scenario dataset and report per-version issues
//   run       one pipeline run at a single (format, temperature, seed) point
//   grid      the full experiment grid with resume support
//   report    summarize a finished output directory
// Exit code 0 = run completed (conflicts found or not), 1 = configuration
// or other fatal error.

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mergeprobe/config.hpp"
#include "mergeprobe/harness.hpp"
#include "mergeprobe/pipeline.hpp"
#include "mergeprobe/scenario.hpp"

namespace mp = mergeprobe;

namespace {

struct Flags {
  std::string config_file;
  std::string dataset;
  std::string workspace;
  std::string out_dir;
  std::string backend;
  std::string endpoint;  // host[:port]
  std::string model;
  std::string stub_table;
  double temperature = 0.0;
  int seed = 42;
  std::string format;
  std::vector<int> variants;
  std::vector<double> temperatures;
  std::vector<int> seeds;
  std::vector<std::string> formats;
  std::vector<std::string> scenario_filter;
  std::vector<std::string> branches;
  std::string mjava_binary;
  int repeats = 3;
  int responses = 1;
  std::int64_t gen_timeout_ms = 300000;
  std::int64_t exec_timeout_ms = 60000;
  int parallelism = 1;
  bool generation_only = false;
};

void add_dataset_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--dataset,-d", f.dataset, "Scenario dataset file");
  cmd->add_option("--workspace,-w", f.workspace,
                  "Directory for materialized revisions");
  cmd->add_option("--config,-c", f.config_file, "JSON configuration file");
}

void add_run_options(CLI::App* cmd, Flags& f) {
  add_dataset_options(cmd, f);
  cmd->add_option("--out,-o", f.out_dir, "Report output directory");
  cmd->add_option("--backend", f.backend, "Generation backend: stub | http");
  cmd->add_option("--endpoint", f.endpoint, "HTTP backend host[:port]");
  cmd->add_option("--model", f.model, "Model name sent to the backend");
  cmd->add_option("--stub-table", f.stub_table,
                  "Canned-response table for the stub backend");
  cmd->add_option("--variants", f.variants,
                  "Prompt variant ids to build (subset of 1..8)");
  cmd->add_option("--scenarios", f.scenario_filter,
                  "Restrict the run to these scenario ids");
  cmd->add_option("--branches", f.branches,
                  "Parent branches to prompt for: left, right");
  cmd->add_option("--repeats", f.repeats,
                  "Executions per test per version for stability");
  cmd->add_option("--responses", f.responses, "Responses requested per prompt");
  cmd->add_option("--generation-timeout-ms", f.gen_timeout_ms,
                  "Whole-call generation timeout");
  cmd->add_option("--exec-timeout-ms", f.exec_timeout_ms,
                  "Single test execution timeout");
  cmd->add_option("--parallelism", f.parallelism,
                  "Concurrent scenarios within a run");
  cmd->add_flag("--generation-only", f.generation_only,
                "Skip conflict analysis; compile against Base only");
  cmd->add_option("--mjava", f.mjava_binary,
                  "Use the bundled subset runner at this path as the toolchain");
}

// Not every subcommand registers every option; absent counts as unset.
std::size_t opt_count(const CLI::App* cmd, const std::string& name) {
  const CLI::Option* opt = cmd->get_option_no_throw(name);
  return opt ? opt->count() : 0;
}

// Flags > file > defaults.
mp::PipelineConfig effective_config(const CLI::App* cmd, const Flags& f) {
  mp::PipelineConfig config;
  if (opt_count(cmd, "--config")) config = mp::load_config(f.config_file);
  if (opt_count(cmd, "--dataset")) config.dataset = f.dataset;
  if (opt_count(cmd, "--workspace")) config.workspace = f.workspace;
  if (opt_count(cmd, "--out")) config.out_dir = f.out_dir;
  if (opt_count(cmd, "--backend")) config.backend = f.backend;
  if (opt_count(cmd, "--endpoint")) {
    auto colon = f.endpoint.rfind(':');
    if (colon == std::string::npos) {
      config.endpoint_host = f.endpoint;
    } else {
      config.endpoint_host = f.endpoint.substr(0, colon);
      try {
        config.endpoint_port = std::stoi(f.endpoint.substr(colon + 1));
      } catch (const std::exception&) {
        throw mp::ConfigError("invalid endpoint '" + f.endpoint + "'");
      }
    }
  }
  if (opt_count(cmd, "--model")) config.model = f.model;
  if (opt_count(cmd, "--stub-table")) config.stub_table = f.stub_table;
  if (opt_count(cmd, "--temperature")) config.temperature = f.temperature;
  if (opt_count(cmd, "--seed")) config.seed = f.seed;
  if (opt_count(cmd, "--format")) {
    auto parsed = mp::parse_format_key(f.format);
    if (!parsed) throw mp::ConfigError("unknown format '" + f.format + "'");
    config.format = *parsed;
  }
  if (opt_count(cmd, "--variants")) {
    std::vector<mp::PromptVariant> all = mp::enumerate_prompt_variants();
    std::vector<mp::PromptVariant> picked;
    for (int id : f.variants) {
      if (id < 1 || id > static_cast<int>(all.size())) {
        throw mp::ConfigError("variant id out of range: " + std::to_string(id));
      }
      picked.push_back(all[static_cast<std::size_t>(id) - 1]);
    }
    if (picked.empty()) throw mp::ConfigError("no variants selected");
    config.grid.variants = std::move(picked);
  }
  if (opt_count(cmd, "--temperatures")) config.grid.temperatures = f.temperatures;
  if (opt_count(cmd, "--seeds")) config.grid.seeds = f.seeds;
  if (opt_count(cmd, "--formats")) {
    config.grid.formats.clear();
    for (const auto& key : f.formats) {
      auto parsed = mp::parse_format_key(key);
      if (!parsed) throw mp::ConfigError("unknown format '" + key + "'");
      config.grid.formats.push_back(*parsed);
    }
  }
  if (opt_count(cmd, "--scenarios")) config.grid.scenario_filter = f.scenario_filter;
  if (opt_count(cmd, "--branches")) {
    config.branches.clear();
    for (const auto& key : f.branches) {
      auto v = mp::parse_version_key(key);
      if (!v || (*v != mp::VersionId::Left && *v != mp::VersionId::Right)) {
        throw mp::ConfigError("branch must be left or right, got '" + key + "'");
      }
      config.branches.push_back(*v);
    }
  }
  if (opt_count(cmd, "--mjava")) {
    config.toolchain =
        mp::mjava_toolchain_profile(std::filesystem::absolute(f.mjava_binary));
  }
  if (opt_count(cmd, "--repeats")) config.repeats = f.repeats;
  if (opt_count(cmd, "--responses")) config.responses_per_prompt = f.responses;
  if (opt_count(cmd, "--generation-timeout-ms")) {
    config.generation_timeout_ms = f.gen_timeout_ms;
  }
  if (opt_count(cmd, "--exec-timeout-ms")) config.exec_timeout_ms = f.exec_timeout_ms;
  if (opt_count(cmd, "--parallelism")) config.parallelism = f.parallelism;
  if (opt_count(cmd, "--generation-only")) config.generation_only = true;
  return config;
}

std::vector<mp::MergeScenario> load_dataset(const mp::PipelineConfig& config) {
  if (config.dataset.empty()) {
    throw mp::ConfigError("no dataset given (use --dataset or the config file)");
  }
  std::vector<std::string> warnings;
  std::vector<mp::MergeScenario> scenarios =
      mp::load_scenarios(config.dataset, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return scenarios;
}

int cmd_validate(const CLI::App* cmd, const Flags& f) {
  mp::PipelineConfig config = effective_config(cmd, f);
  std::vector<mp::MergeScenario> scenarios = load_dataset(config);
  std::size_t clean = 0;
  for (const auto& s : scenarios) {
    std::vector<mp::ValidationIssue> issues =
        mp::validate_scenario(s, config.workspace);
    if (issues.empty()) {
      ++clean;
      continue;
    }
    for (const auto& issue : issues) {
      std::cout << s.scenario_id << ": " << mp::version_label(issue.version)
                << " " << mp::issue_kind_name(issue.kind) << " " << issue.path;
      if (!issue.detail.empty()) std::cout << " (" << issue.detail << ")";
      std::cout << "\n";
    }
  }
  std::cout << scenarios.size() << " scenario(s), " << clean << " valid, "
            << (scenarios.size() - clean) << " with issues\n";
  return 0;
}

void print_tallies(const mp::RunTallies& t, std::int64_t conflicts) {
  std::cout << "  generation calls:   " << t.generation_calls << "\n"
            << "  tests generated:    " << t.tests_generated << "\n"
            << "  tests compiled:     " << t.tests_compiled << "\n"
            << "  compile failed:     " << t.compile_failed << "\n"
            << "  invalid (flaky):    " << t.invalid << "\n"
            << "  discarded scenarios:" << t.discarded_scenarios << "\n"
            << "  conflicts detected: " << conflicts << "\n";
}

int cmd_run(const CLI::App* cmd, const Flags& f) {
  mp::PipelineConfig config = effective_config(cmd, f);
  std::vector<mp::MergeScenario> scenarios = load_dataset(config);
  if (!config.grid.scenario_filter.empty()) {
    std::vector<mp::MergeScenario> picked;
    for (const auto& s : scenarios) {
      if (std::find(config.grid.scenario_filter.begin(),
                    config.grid.scenario_filter.end(),
                    s.scenario_id) != config.grid.scenario_filter.end()) {
        picked.push_back(s);
      }
    }
    scenarios = std::move(picked);
  }
  mp::RunConfigLabel point{config.format, config.temperature, config.seed};
  std::string label = mp::config_label_string(point);
  std::filesystem::path run_dir = config.out_dir / "runs" / label;

  std::string started = mp::iso_utc_now();
  std::unique_ptr<mp::GenerationBackend> backend = mp::make_backend(config);
  mp::RunRecords records =
      mp::run_pipeline(scenarios, point, config, *backend, run_dir);
  std::vector<std::filesystem::path> written = mp::emit_run_reports(
      records, point, config, run_dir, started, mp::iso_utc_now());

  std::cout << "run " << label << " complete\n";
  print_tallies(records.tallies, records.conflicts_detected());
  for (const auto& path : written) std::cout << "  wrote " << path.string() << "\n";
  return 0;
}

int cmd_grid(const CLI::App* cmd, const Flags& f) {
  mp::PipelineConfig config = effective_config(cmd, f);
  std::vector<mp::MergeScenario> scenarios = load_dataset(config);
  mp::GridOutcome outcome = mp::run_experiment_grid(scenarios, config);
  for (const auto& p : outcome.points) {
    std::cout << p.label << (p.executed ? "" : " (resumed)") << ": "
              << p.tallies.generation_calls << " calls, "
              << p.conflicts_detected << " conflict(s)\n";
  }
  std::cout << "union: " << mp::matrix_union_count(outcome.union_matrix)
            << " distinct conflict(s)\n";
  return 0;
}

int cmd_report(const std::string& out_dir) {
  std::filesystem::path runs = std::filesystem::path(out_dir) / "runs";
  if (!std::filesystem::is_directory(runs)) {
    std::cerr << "error: " << runs.string() << " is not a directory\n";
    return 1;
  }
  std::vector<std::filesystem::path> points;
  for (const auto& entry : std::filesystem::directory_iterator(runs)) {
    if (entry.is_directory() &&
        std::filesystem::exists(entry.path() / "point.json")) {
      points.push_back(entry.path() / "point.json");
    }
  }
  std::sort(points.begin(), points.end());
  if (points.empty()) {
    std::cerr << "error: no completed runs under " << runs.string() << "\n";
    return 1;
  }
  std::vector<std::pair<std::string, std::vector<mp::ScenarioVerdict>>> runs_data;
  std::map<std::string, std::string> conflict_ids;
  for (const auto& path : points) {
    std::ifstream in(path);
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded() || doc.value("status", "") != "completed") continue;
    std::string label = doc.value("label", path.parent_path().filename().string());
    std::vector<mp::ScenarioVerdict> verdicts;
    for (const auto& entry : doc.value("verdicts", nlohmann::json::array())) {
      mp::ScenarioVerdict v;
      v.scenario_id = entry.value("scenario_id", "");
      v.conflict_detected = entry.value("detected", false);
      conflict_ids[v.scenario_id] = entry.value("conflict_id", v.scenario_id);
      verdicts.push_back(std::move(v));
    }
    std::cout << label << ": " << doc.value("generation_calls", 0)
              << " calls, " << doc.value("conflicts_detected", 0)
              << " conflict(s)\n";
    runs_data.emplace_back(std::move(label), std::move(verdicts));
  }
  mp::DetectionMatrix matrix = mp::build_detection_matrix(runs_data, conflict_ids);
  std::cout << "union: " << mp::matrix_union_count(matrix)
            << " distinct conflict(s)\n";
  for (const auto& id : matrix.conflict_ids) std::cout << "  " << id << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Behavioral merge-conflict detection via generated tests"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* validate =
      app.add_subcommand("validate", "Check a scenario dataset");
  add_dataset_options(validate, f);

  CLI::App* run = app.add_subcommand(
      "run", "One pipeline run at a single (format, temperature, seed) point");
  add_run_options(run, f);
  run->add_option("--temperature", f.temperature, "Sampling temperature");
  run->add_option("--seed", f.seed, "Sampling seed");
  run->add_option("--format", f.format, "Prompt format: zero_shot | one_shot");

  CLI::App* grid =
      app.add_subcommand("grid", "Run the full experiment grid (resumable)");
  add_run_options(grid, f);
  grid->add_option("--temperatures", f.temperatures, "Grid temperatures");
  grid->add_option("--seeds", f.seeds, "Grid seeds");
  grid->add_option("--formats", f.formats, "Grid prompt formats");

  std::string report_dir = "out";
  CLI::App* report =
      app.add_subcommand("report", "Summarize a finished output directory");
  report->add_option("--out,-o", report_dir, "Output directory to summarize");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (validate->parsed()) return cmd_validate(validate, f);
    if (run->parsed()) return cmd_run(run, f);
    if (grid->parsed()) return cmd_grid(grid, f);
    return cmd_report(report_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
