#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "mergeprobe/config.hpp"

namespace mp = mergeprobe;
namespace fs = std::filesystem;

namespace {

fs::path write_config(const std::string& name, const std::string& body) {
  fs::path dir = fs::temp_directory_path() / "mergeprobe-test" / "configs";
  fs::create_directories(dir);
  fs::path file = dir / name;
  std::ofstream(file) << body;
  return file;
}

}  // namespace

TEST_CASE("an empty document keeps every default") {
  mp::PipelineConfig cfg = mp::load_config(write_config("empty.json", "{}"));
  CHECK(cfg.dataset.empty());
  CHECK(cfg.workspace == "workspace");
  CHECK(cfg.out_dir == "out");
  CHECK(cfg.backend == "stub");
  CHECK(cfg.endpoint_host == "127.0.0.1");
  CHECK(cfg.endpoint_port == 11434);
  CHECK(cfg.model == "codellama:70b");
  CHECK(cfg.max_in_flight == 1);
  CHECK(cfg.temperature == 0.0);
  CHECK(cfg.seed == 42);
  CHECK(cfg.format == mp::PromptFormat::ZeroShot);
  CHECK(cfg.responses_per_prompt == 1);
  CHECK(cfg.generation_timeout_ms == 300000);
  CHECK(cfg.branches == std::vector<mp::VersionId>{mp::VersionId::Left});
  CHECK(cfg.repeats == 3);
  CHECK(cfg.exec_timeout_ms == 60000);
  CHECK(cfg.compile_timeout_ms == 120000);
  CHECK(cfg.parallelism == 1);
  CHECK(cfg.test_package == "generated");
  CHECK_FALSE(cfg.generation_only);
  CHECK(cfg.toolchain.name == "javac");
  CHECK(cfg.grid.temperatures == std::vector<double>{0.0, 0.7});
  CHECK(cfg.grid.seeds == std::vector<int>{42, 123});
  CHECK(cfg.grid.formats.size() == 2);
  CHECK(cfg.grid.variants.size() == 8);
  CHECK(cfg.grid.scenario_filter.empty());
}

TEST_CASE("a full document overrides every default") {
  fs::path file = write_config("full.json", R"({
    "dataset": "scenarios.jsonl",
    "workspace": "ws",
    "out_dir": "results",
    "backend": "http",
    "stub_table": "table.json",
    "endpoint_host": "10.0.0.5",
    "endpoint_port": 8080,
    "model": "codellama:7b",
    "max_in_flight": 4,
    "temperature": 0.7,
    "seed": 123,
    "format": "one_shot",
    "responses_per_prompt": 3,
    "generation_timeout_ms": 5000,
    "branches": ["left", "right"],
    "repeats": 5,
    "exec_timeout_ms": 1000,
    "compile_timeout_ms": 2000,
    "parallelism": 8,
    "test_package": "gen",
    "generation_only": true,
    "one_shot_example": "example.json",
    "toolchain": {
      "name": "custom",
      "compile_cmd": ["cc", "{file}"],
      "run_cmd": ["rr", "{test_class}"],
      "classpath_roots": ["src"],
      "test_framework": "junit4"
    },
    "grid": {
      "temperatures": [0.0],
      "seeds": [7],
      "formats": ["zero_shot"],
      "variants": [7, 8],
      "scenario_filter": ["textutil-cleanText"]
    }
  })");
  mp::PipelineConfig cfg = mp::load_config(file);
  CHECK(cfg.dataset == "scenarios.jsonl");
  CHECK(cfg.workspace == "ws");
  CHECK(cfg.out_dir == "results");
  CHECK(cfg.backend == "http");
  CHECK(cfg.stub_table == "table.json");
  CHECK(cfg.endpoint_host == "10.0.0.5");
  CHECK(cfg.endpoint_port == 8080);
  CHECK(cfg.model == "codellama:7b");
  CHECK(cfg.max_in_flight == 4);
  CHECK(cfg.temperature == 0.7);
  CHECK(cfg.seed == 123);
  CHECK(cfg.format == mp::PromptFormat::OneShot);
  CHECK(cfg.responses_per_prompt == 3);
  CHECK(cfg.generation_timeout_ms == 5000);
  CHECK(cfg.branches ==
        std::vector<mp::VersionId>{mp::VersionId::Left, mp::VersionId::Right});
  CHECK(cfg.repeats == 5);
  CHECK(cfg.exec_timeout_ms == 1000);
  CHECK(cfg.compile_timeout_ms == 2000);
  CHECK(cfg.parallelism == 8);
  CHECK(cfg.test_package == "gen");
  CHECK(cfg.generation_only);
  CHECK(cfg.one_shot_example == "example.json");
  CHECK(cfg.toolchain.name == "custom");
  CHECK(cfg.toolchain.compile_cmd == std::vector<std::string>{"cc", "{file}"});
  CHECK(cfg.grid.temperatures == std::vector<double>{0.0});
  CHECK(cfg.grid.seeds == std::vector<int>{7});
  CHECK(cfg.grid.formats == std::vector<mp::PromptFormat>{mp::PromptFormat::ZeroShot});
  REQUIRE(cfg.grid.variants.size() == 2);
  CHECK(cfg.grid.variants[0].variant_id == 7);
  CHECK(cfg.grid.variants[0].include_fields);
  CHECK(cfg.grid.variants[0].include_constructors);
  CHECK_FALSE(cfg.grid.variants[0].include_summary);
  CHECK(cfg.grid.variants[1].variant_id == 8);
  CHECK(cfg.grid.scenario_filter == std::vector<std::string>{"textutil-cleanText"});
}

TEST_CASE("config typos are errors, not silently ignored keys") {
  CHECK_THROWS_WITH_AS(mp::load_config(write_config("typo.json", R"({"datset": "x"})")),
                       doctest::Contains("datset"), mp::ConfigError);
  CHECK_THROWS_WITH_AS(
      mp::load_config(write_config("typo2.json", R"({"grid": {"sedes": [1]}})")),
      doctest::Contains("sedes"), mp::ConfigError);
  CHECK_THROWS_WITH_AS(
      mp::load_config(write_config("typo3.json", R"({"toolchain": {"cmd": []}})")),
      doctest::Contains("cmd"), mp::ConfigError);
}

TEST_CASE("invalid values are rejected with their rule") {
  auto load = [](const std::string& name, const std::string& body) {
    return mp::load_config(write_config(name, body));
  };
  CHECK_THROWS_AS(load("v1.json", R"({"backend": "carrier-pigeon"})"), mp::ConfigError);
  CHECK_THROWS_AS(load("v2.json", R"({"responses_per_prompt": 0})"), mp::ConfigError);
  CHECK_THROWS_AS(load("v3.json", R"({"generation_timeout_ms": 0})"), mp::ConfigError);
  CHECK_THROWS_AS(load("v4.json", R"({"branches": []})"), mp::ConfigError);
  CHECK_THROWS_AS(load("v5.json", R"({"branches": ["base"]})"), mp::ConfigError);
  CHECK_THROWS_AS(load("v6.json", R"({"branches": ["upstream"]})"), mp::ConfigError);
  CHECK_THROWS_AS(load("v7.json", R"({"repeats": 0})"), mp::ConfigError);
  CHECK_THROWS_AS(load("v8.json", R"({"parallelism": 0})"), mp::ConfigError);
  CHECK_THROWS_AS(load("v9.json", R"({"format": "two_shot"})"), mp::ConfigError);
  CHECK_THROWS_AS(load("v10.json", R"({"grid": {"variants": [9]}})"), mp::ConfigError);
  CHECK_THROWS_AS(load("v11.json", "{ not json"), mp::ConfigError);
  CHECK_THROWS_AS(mp::load_config("/no/such/config.json"), mp::ConfigError);
}

TEST_CASE("the effective config serializes and reloads losslessly") {
  mp::PipelineConfig cfg;
  cfg.dataset = "d.jsonl";
  cfg.backend = "http";
  cfg.temperature = 0.7;
  cfg.branches = {mp::VersionId::Left, mp::VersionId::Right};
  cfg.grid.variants = {mp::enumerate_prompt_variants()[6]};

  std::string serialized = mp::config_to_json(cfg);
  auto doc = nlohmann::json::parse(serialized);
  CHECK(doc["dataset"] == "d.jsonl");
  CHECK(doc["backend"] == "http");
  CHECK(doc["format"] == "zero_shot");
  CHECK(doc["branches"] == nlohmann::json::array({"left", "right"}));
  CHECK(doc["grid"]["variants"] == nlohmann::json::array({7}));

  mp::PipelineConfig round = mp::load_config(write_config("round.json", serialized));
  CHECK(round.dataset == cfg.dataset);
  CHECK(round.backend == cfg.backend);
  CHECK(round.temperature == cfg.temperature);
  CHECK(round.branches == cfg.branches);
  REQUIRE(round.grid.variants.size() == 1);
  CHECK(round.grid.variants[0].variant_id == 7);
  CHECK(mp::config_to_json(round) == serialized);
}
