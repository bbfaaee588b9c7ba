#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mergeprobe/scenario.hpp"

namespace mp = mergeprobe;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = MERGEPROBE_FIXTURE_DIR;

fs::path write_dataset(const char* name, const std::string& body) {
  fs::path dir = fs::temp_directory_path() / "mergeprobe-test" / "datasets";
  fs::create_directories(dir);
  fs::path file = dir / name;
  std::ofstream out(file, std::ios::binary);
  out << body;
  return file;
}

std::string minimal_record(const std::string& id) {
  return "{\"scenario_id\":\"" + id +
         "\",\"project_name\":\"p\","
         "\"commits\":{\"base\":\"b\",\"left\":\"l\",\"right\":\"r\",\"merge\":\"m\"},"
         "\"build_paths\":{\"base\":\"pom.xml\",\"left\":\"pom.xml\","
         "\"right\":\"pom.xml\",\"merge\":\"pom.xml\"},"
         "\"target_class\":\"p.C\",\"target_method\":\"m()\","
         "\"summary_left\":\"sl\",\"summary_right\":\"sr\"}";
}

}  // namespace

TEST_CASE("bundled dataset loads with full field fidelity") {
  auto scenarios = mp::load_scenarios(kFixtures / "scenarios.jsonl");
  REQUIRE(scenarios.size() == 2);

  const mp::MergeScenario& text = scenarios[0];
  CHECK(text.scenario_id == "textutil-cleanText");
  CHECK(text.project_name == "textutil");
  CHECK(text.commits.at(mp::VersionId::Base) == "text/base");
  CHECK(text.commits.at(mp::VersionId::Merge) == "text/merge");
  CHECK(text.build_paths.at(mp::VersionId::Left) == "pom.xml");
  CHECK(text.target_class == "textutil.Text");
  CHECK(text.target_method == "cleanText()");
  CHECK(text.summary_left.find("normalize") != std::string::npos);
  CHECK(text.source_dir.is_absolute());

  CHECK(scenarios[1].scenario_id == "cloud-slang-getAllEventTypes");
}

TEST_CASE("save/load round-trips every schema field") {
  auto scenarios = mp::load_scenarios(kFixtures / "scenarios.jsonl");
  fs::path copy = write_dataset("roundtrip.jsonl", "");
  mp::save_scenarios(copy, scenarios);
  auto reloaded = mp::load_scenarios(copy);
  REQUIRE(reloaded.size() == scenarios.size());
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    // source_dir is positional, not schema; compare schema fields.
    CHECK(reloaded[i].scenario_id == scenarios[i].scenario_id);
    CHECK(reloaded[i].project_name == scenarios[i].project_name);
    CHECK(reloaded[i].commits == scenarios[i].commits);
    CHECK(reloaded[i].build_paths == scenarios[i].build_paths);
    CHECK(reloaded[i].target_class == scenarios[i].target_class);
    CHECK(reloaded[i].target_method == scenarios[i].target_method);
    CHECK(reloaded[i].summary_left == scenarios[i].summary_left);
    CHECK(reloaded[i].summary_right == scenarios[i].summary_right);
    CHECK(reloaded[i].repo_url == scenarios[i].repo_url);
  }
}

TEST_CASE("malformed records report the position and field") {
  SUBCASE("invalid JSON line") {
    fs::path f = write_dataset("bad-json.jsonl", "{not json}\n");
    CHECK_THROWS_AS(mp::load_scenarios(f), mp::ScenarioParseError);
    try {
      mp::load_scenarios(f);
    } catch (const mp::ScenarioParseError& e) {
      CHECK(e.record_index == 0);
    }
  }

  SUBCASE("missing required field") {
    std::string rec = minimal_record("x");
    rec.replace(rec.find("\"target_class\""), 14, "\"other_class\"");
    fs::path f = write_dataset("missing-field.jsonl", rec + "\n");
    try {
      mp::load_scenarios(f);
      FAIL("expected ScenarioParseError");
    } catch (const mp::ScenarioParseError& e) {
      CHECK(e.field == "target_class");
      CHECK(e.record_index == 0);
    }
  }

  SUBCASE("incomplete version map") {
    std::string rec = minimal_record("x");
    rec.replace(rec.find("\"merge\":\"m\""), 11, "\"extra\":\"m\"");
    fs::path f = write_dataset("bad-versions.jsonl", rec + "\n");
    try {
      mp::load_scenarios(f);
      FAIL("expected ScenarioParseError");
    } catch (const mp::ScenarioParseError& e) {
      CHECK(e.field == "commits.merge");
    }
  }

  SUBCASE("duplicate scenario_id") {
    fs::path f = write_dataset("dup.jsonl",
                               minimal_record("same") + "\n" + minimal_record("same") + "\n");
    try {
      mp::load_scenarios(f);
      FAIL("expected ScenarioParseError");
    } catch (const mp::ScenarioParseError& e) {
      CHECK(e.record_index == 1);
      CHECK(e.field == "scenario_id");
    }
  }

  SUBCASE("missing file is a runtime error, not a parse error") {
    CHECK_THROWS_AS(mp::load_scenarios("/nonexistent/scenarios.jsonl"),
                    std::runtime_error);
  }
}

TEST_CASE("unknown fields are skipped with a warning") {
  std::string rec = minimal_record("x");
  rec.insert(rec.size() - 1, ",\"new_field\":true");
  fs::path f = write_dataset("unknown-field.jsonl", rec + "\n");
  std::vector<std::string> warnings;
  auto scenarios = mp::load_scenarios(f, &warnings);
  CHECK(scenarios.size() == 1);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("new_field") != std::string::npos);
}

TEST_CASE("blank lines are not records") {
  fs::path f = write_dataset("blanks.jsonl", "\n" + minimal_record("x") + "\n\n  \n");
  CHECK(mp::load_scenarios(f).size() == 1);
}

TEST_CASE("version roots resolve directory references against the dataset dir") {
  auto scenarios = mp::load_scenarios(kFixtures / "scenarios.jsonl");
  fs::path root = mp::version_root(scenarios[0], mp::VersionId::Left, "unused-ws");
  CHECK(fs::equivalent(root, kFixtures / "text" / "left"));

  // SHA-style references land in the workspace instead.
  mp::MergeScenario sha = scenarios[0];
  sha.commits[mp::VersionId::Left] = "0123456789abcdef";
  CHECK(mp::version_root(sha, mp::VersionId::Left, "ws") ==
        fs::path("ws") / sha.scenario_id / "left");
}

TEST_CASE("validation issues are data, not exceptions") {
  auto scenarios = mp::load_scenarios(kFixtures / "scenarios.jsonl");

  SUBCASE("bundled scenarios are clean") {
    for (const auto& s : scenarios) {
      CHECK(mp::validate_scenario(s, "unused-ws").empty());
    }
  }

  SUBCASE("missing build file") {
    mp::MergeScenario s = scenarios[0];
    s.build_paths[mp::VersionId::Right] = "build.gradle";
    auto issues = mp::validate_scenario(s, "unused-ws");
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].version == mp::VersionId::Right);
    CHECK(issues[0].kind == mp::IssueKind::MissingFile);
  }

  SUBCASE("target class that maps to no file") {
    mp::MergeScenario s = scenarios[0];
    s.target_class = "textutil.Missing";
    auto issues = mp::validate_scenario(s, "unused-ws");
    CHECK(issues.size() == 4);
    CHECK(issues[0].kind == mp::IssueKind::MissingFile);
    CHECK(issues[0].detail.find("textutil.Missing") != std::string::npos);
  }

  SUBCASE("class absent from the file it resolves to") {
    // The nested name falls back to Text.java, which declares no such type.
    mp::MergeScenario s = scenarios[0];
    s.target_class = "textutil.Text.Cleaner";
    auto issues = mp::validate_scenario(s, "unused-ws");
    CHECK(issues.size() == 4);
    CHECK(issues[0].kind == mp::IssueKind::MissingClass);
    CHECK(issues[0].path.find("Text.java") != std::string::npos);
  }

  SUBCASE("missing target method is reported per version") {
    mp::MergeScenario s = scenarios[0];
    s.target_method = "normalizeWhiteSpace()";
    auto issues = mp::validate_scenario(s, "unused-ws");
    // Base and Right predate the method; Left and Merge have it.
    REQUIRE(issues.size() == 2);
    CHECK(issues[0].version == mp::VersionId::Base);
    CHECK(issues[0].kind == mp::IssueKind::MissingMethod);
    CHECK(issues[1].version == mp::VersionId::Right);
  }
}
