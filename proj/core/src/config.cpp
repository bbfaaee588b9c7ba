#include "mergeprobe/config.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

namespace mergeprobe {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

PromptFormat parse_format_or_throw(const std::string& key) {
  auto f = parse_format_key(key);
  if (!f) throw ConfigError("unknown prompt format: " + key);
  return *f;
}

VersionId parse_branch_or_throw(const std::string& key) {
  auto v = parse_version_key(key);
  if (!v) throw ConfigError("unknown branch: " + key);
  if (*v != VersionId::Left && *v != VersionId::Right) {
    throw ConfigError("prompts are built for parent branches only, got: " + key);
  }
  return *v;
}

PromptVariant variant_by_id(int id) {
  for (const auto& v : enumerate_prompt_variants()) {
    if (v.variant_id == id) return v;
  }
  throw ConfigError("unknown prompt variant id: " + std::to_string(id));
}

void check_known_keys(const json& obj, const std::set<std::string>& known,
                      const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) {
      throw ConfigError("unknown config key '" + key + "' in " + where);
    }
  }
}

void load_toolchain(const json& doc, ToolchainProfile* p) {
  check_known_keys(doc, {"name", "compile_cmd", "run_cmd", "classpath_roots",
                         "test_framework"},
                   "toolchain");
  if (doc.contains("name")) p->name = doc["name"].get<std::string>();
  if (doc.contains("compile_cmd")) {
    p->compile_cmd = doc["compile_cmd"].get<std::vector<std::string>>();
  }
  if (doc.contains("run_cmd")) p->run_cmd = doc["run_cmd"].get<std::vector<std::string>>();
  if (doc.contains("classpath_roots")) {
    p->classpath_roots = doc["classpath_roots"].get<std::vector<std::string>>();
  }
  if (doc.contains("test_framework")) {
    p->test_framework = doc["test_framework"].get<std::string>();
  }
}

void load_grid(const json& doc, ExperimentGrid* g) {
  check_known_keys(doc, {"temperatures", "seeds", "formats", "variants", "scenario_filter"},
                   "grid");
  if (doc.contains("temperatures")) {
    g->temperatures = doc["temperatures"].get<std::vector<double>>();
  }
  if (doc.contains("seeds")) g->seeds = doc["seeds"].get<std::vector<int>>();
  if (doc.contains("formats")) {
    g->formats.clear();
    for (const auto& f : doc["formats"]) {
      g->formats.push_back(parse_format_or_throw(f.get<std::string>()));
    }
  }
  if (doc.contains("variants")) {
    g->variants.clear();
    for (const auto& v : doc["variants"]) g->variants.push_back(variant_by_id(v.get<int>()));
  }
  if (doc.contains("scenario_filter")) {
    g->scenario_filter = doc["scenario_filter"].get<std::vector<std::string>>();
  }
}

}  // namespace

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  check_known_keys(doc,
                   {"dataset", "workspace", "out_dir", "backend", "stub_table",
                    "endpoint_host", "endpoint_port", "model", "max_in_flight",
                    "temperature", "seed", "format", "responses_per_prompt",
                    "generation_timeout_ms", "branches", "repeats", "exec_timeout_ms",
                    "compile_timeout_ms", "parallelism", "test_package", "generation_only",
                    "one_shot_example", "toolchain", "grid"},
                   "config root");

  PipelineConfig cfg;
  auto path_of = [](const json& v) { return std::filesystem::path(v.get<std::string>()); };
  if (doc.contains("dataset")) cfg.dataset = path_of(doc["dataset"]);
  if (doc.contains("workspace")) cfg.workspace = path_of(doc["workspace"]);
  if (doc.contains("out_dir")) cfg.out_dir = path_of(doc["out_dir"]);
  if (doc.contains("backend")) {
    cfg.backend = doc["backend"].get<std::string>();
    if (cfg.backend != "stub" && cfg.backend != "http") {
      throw ConfigError("backend must be 'stub' or 'http', got: " + cfg.backend);
    }
  }
  if (doc.contains("stub_table")) cfg.stub_table = path_of(doc["stub_table"]);
  if (doc.contains("endpoint_host")) cfg.endpoint_host = doc["endpoint_host"].get<std::string>();
  if (doc.contains("endpoint_port")) cfg.endpoint_port = doc["endpoint_port"].get<int>();
  if (doc.contains("model")) cfg.model = doc["model"].get<std::string>();
  if (doc.contains("max_in_flight")) cfg.max_in_flight = doc["max_in_flight"].get<int>();
  if (doc.contains("temperature")) cfg.temperature = doc["temperature"].get<double>();
  if (doc.contains("seed")) cfg.seed = doc["seed"].get<int>();
  if (doc.contains("format")) {
    cfg.format = parse_format_or_throw(doc["format"].get<std::string>());
  }
  if (doc.contains("responses_per_prompt")) {
    cfg.responses_per_prompt = doc["responses_per_prompt"].get<int>();
    if (cfg.responses_per_prompt < 1) throw ConfigError("responses_per_prompt must be >= 1");
  }
  if (doc.contains("generation_timeout_ms")) {
    cfg.generation_timeout_ms = doc["generation_timeout_ms"].get<std::int64_t>();
    if (cfg.generation_timeout_ms <= 0) throw ConfigError("generation_timeout_ms must be > 0");
  }
  if (doc.contains("branches")) {
    cfg.branches.clear();
    for (const auto& b : doc["branches"]) {
      cfg.branches.push_back(parse_branch_or_throw(b.get<std::string>()));
    }
    if (cfg.branches.empty()) throw ConfigError("branches must be non-empty");
  }
  if (doc.contains("repeats")) {
    cfg.repeats = doc["repeats"].get<int>();
    if (cfg.repeats < 1) throw ConfigError("repeats must be >= 1");
  }
  if (doc.contains("exec_timeout_ms")) {
    cfg.exec_timeout_ms = doc["exec_timeout_ms"].get<std::int64_t>();
  }
  if (doc.contains("compile_timeout_ms")) {
    cfg.compile_timeout_ms = doc["compile_timeout_ms"].get<std::int64_t>();
  }
  if (doc.contains("parallelism")) {
    cfg.parallelism = doc["parallelism"].get<int>();
    if (cfg.parallelism < 1) throw ConfigError("parallelism must be >= 1");
  }
  if (doc.contains("test_package")) cfg.test_package = doc["test_package"].get<std::string>();
  if (doc.contains("generation_only")) {
    cfg.generation_only = doc["generation_only"].get<bool>();
  }
  if (doc.contains("one_shot_example")) cfg.one_shot_example = path_of(doc["one_shot_example"]);
  if (doc.contains("toolchain")) load_toolchain(doc["toolchain"], &cfg.toolchain);
  if (doc.contains("grid")) load_grid(doc["grid"], &cfg.grid);
  return cfg;
}

std::string config_to_json(const PipelineConfig& config) {
  ordered_json doc;
  doc["dataset"] = config.dataset.string();
  doc["workspace"] = config.workspace.string();
  doc["out_dir"] = config.out_dir.string();
  doc["backend"] = config.backend;
  doc["stub_table"] = config.stub_table.string();
  doc["endpoint_host"] = config.endpoint_host;
  doc["endpoint_port"] = config.endpoint_port;
  doc["model"] = config.model;
  doc["max_in_flight"] = config.max_in_flight;
  doc["temperature"] = config.temperature;
  doc["seed"] = config.seed;
  doc["format"] = std::string(format_key(config.format));
  doc["responses_per_prompt"] = config.responses_per_prompt;
  doc["generation_timeout_ms"] = config.generation_timeout_ms;
  doc["branches"] = ordered_json::array();
  for (VersionId b : config.branches) doc["branches"].push_back(std::string(version_key(b)));
  doc["repeats"] = config.repeats;
  doc["exec_timeout_ms"] = config.exec_timeout_ms;
  doc["compile_timeout_ms"] = config.compile_timeout_ms;
  doc["parallelism"] = config.parallelism;
  doc["test_package"] = config.test_package;
  doc["generation_only"] = config.generation_only;
  doc["one_shot_example"] = config.one_shot_example.string();
  doc["toolchain"] = {{"name", config.toolchain.name},
                      {"compile_cmd", config.toolchain.compile_cmd},
                      {"run_cmd", config.toolchain.run_cmd},
                      {"classpath_roots", config.toolchain.classpath_roots},
                      {"test_framework", config.toolchain.test_framework}};
  doc["grid"]["temperatures"] = config.grid.temperatures;
  doc["grid"]["seeds"] = config.grid.seeds;
  doc["grid"]["formats"] = ordered_json::array();
  for (PromptFormat f : config.grid.formats) {
    doc["grid"]["formats"].push_back(std::string(format_key(f)));
  }
  doc["grid"]["variants"] = ordered_json::array();
  for (const auto& v : config.grid.variants) doc["grid"]["variants"].push_back(v.variant_id);
  doc["grid"]["scenario_filter"] = config.grid.scenario_filter;
  return doc.dump();
}

}  // namespace mergeprobe
