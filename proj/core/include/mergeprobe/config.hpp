#ifndef MERGEPROBE_CONFIG_HPP_
#define MERGEPROBE_CONFIG_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "mergeprobe/generation.hpp"
#include "mergeprobe/prompt.hpp"
#include "mergeprobe/toolchain.hpp"

namespace mergeprobe {

/// The run axes swept by the experiment grid; a single run uses one point.
struct ExperimentGrid {
  std::vector<double> temperatures = {0.0, 0.7};
  std::vector<int> seeds = {42, 123};
  std::vector<PromptFormat> formats = {PromptFormat::ZeroShot, PromptFormat::OneShot};
  std::vector<PromptVariant> variants = enumerate_prompt_variants();
  std::vector<std::string> scenario_filter;  // scenario_ids; empty = all
};

struct PipelineConfig {
  std::filesystem::path dataset;
  std::filesystem::path workspace = "workspace";
  std::filesystem::path out_dir = "out";

  std::string backend = "stub";  // "stub" | "http"
  std::filesystem::path stub_table;
  std::string endpoint_host = "127.0.0.1";
  int endpoint_port = 11434;
  std::string model = "codellama:70b";
  int max_in_flight = 1;

  // Single-run generation settings; grid points override temperature,
  // seed, and format.
  double temperature = 0.0;
  int seed = 42;
  PromptFormat format = PromptFormat::ZeroShot;
  int responses_per_prompt = 1;
  std::int64_t generation_timeout_ms = 300000;

  std::vector<VersionId> branches = {VersionId::Left};  // prompt branches
  int repeats = 3;
  std::int64_t exec_timeout_ms = 60000;
  std::int64_t compile_timeout_ms = 120000;
  int parallelism = 1;
  std::string test_package = "generated";
  bool generation_only = false;  // compile-rate studies: no conflict analysis

  std::filesystem::path one_shot_example;  // empty = built-in example
  ToolchainProfile toolchain;
  ExperimentGrid grid;
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Reads a JSON config document; missing keys keep their defaults.
/// Unknown keys raise ConfigError (they are config typos, not data).
PipelineConfig load_config(const std::filesystem::path& path);

/// The effective configuration as JSON, embedded in run manifests.
std::string config_to_json(const PipelineConfig& config);

}  // namespace mergeprobe

#endif  // MERGEPROBE_CONFIG_HPP_
