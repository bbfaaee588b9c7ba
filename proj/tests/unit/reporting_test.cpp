#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "mergeprobe/reporting.hpp"

namespace mp = mergeprobe;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const char* name) {
  fs::path dir = fs::temp_directory_path() / "mergeprobe-test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("two-decimal rendering is exact integer half-up") {
  CHECK(mp::format_ratio_2dp(10404, 79) == "131.70");
  CHECK(mp::format_ratio_2dp(1253, 79) == "15.86");
  CHECK(mp::format_percent_2dp(1253, 10404) == "12.04%");
  CHECK(mp::format_percent_2dp(586, 8592) == "6.82%");

  CHECK(mp::format_ratio_2dp(1, 2) == "0.50");
  CHECK(mp::format_ratio_2dp(1, 3) == "0.33");
  CHECK(mp::format_ratio_2dp(2, 3) == "0.67");
  // Exactly representable halves round away from zero.
  CHECK(mp::format_ratio_2dp(1, 200) == "0.01");
  CHECK(mp::format_ratio_2dp(3, 200) == "0.02");
  CHECK(mp::format_ratio_2dp(5, 1) == "5.00");
  CHECK(mp::format_percent_2dp(1, 1) == "100.00%");
  CHECK(mp::format_percent_2dp(0, 7) == "0.00%");
}

TEST_CASE("zero denominators render as zero, not a crash") {
  CHECK(mp::format_ratio_2dp(0, 0) == "0.00");
  CHECK(mp::format_ratio_2dp(5, 0) == "0.00");
  CHECK(mp::format_percent_2dp(5, 0) == "0.00%");
}

TEST_CASE("run metrics derive the published ratios") {
  mp::RunTallies t;
  t.methods = 79;
  t.tests_generated = 10404;
  t.tests_compiled = 1253;
  mp::RunMetrics m = mp::compute_run_metrics(t, 3, 1234);
  CHECK(m.per_method_generated == doctest::Approx(10404.0 / 79));
  CHECK(m.per_method_compiled == doctest::Approx(1253.0 / 79));
  CHECK(m.compilation_rate == doctest::Approx(1253.0 / 10404));
  CHECK(m.conflicts_detected == 3);
  CHECK(m.wall_time_ms == 1234);

  mp::RunMetrics empty = mp::compute_run_metrics(mp::RunTallies{}, 0);
  CHECK(empty.per_method_generated == 0);
  CHECK(empty.compilation_rate == 0);
}

TEST_CASE("config labels name runs the way reports reference them") {
  CHECK(mp::config_label_string({mp::PromptFormat::ZeroShot, 0.0, 42}) ==
        "zero_shot_t0.0_s42");
  CHECK(mp::config_label_string({mp::PromptFormat::OneShot, 0.7, 123}) ==
        "one_shot_t0.7_s123");
}

TEST_CASE("conflict identifier is project::Class::element") {
  mp::MergeScenario s;
  s.project_name = "cloud-slang";
  s.target_class = "io.cloudslang.lang.api.SlangImpl";
  s.target_method = "getAllEventTypes()";
  CHECK(mp::conflict_identifier(s) == "cloud-slang::SlangImpl::getAllEventTypes()");
}

namespace {

mp::ScenarioVerdict verdict_of(const std::string& id, bool detected) {
  mp::ScenarioVerdict v;
  v.scenario_id = id;
  v.conflict_detected = detected;
  return v;
}

}  // namespace

TEST_CASE("detection matrix keeps only detected rows and derives the union") {
  std::map<std::string, std::string> ids = {
      {"s1", "p::A::m()"}, {"s2", "p::B::n()"}, {"s3", "p::C::o()"}};
  mp::DetectionMatrix m = mp::build_detection_matrix(
      {{"cfg1", {verdict_of("s1", true), verdict_of("s2", false), verdict_of("s3", false)}},
       {"cfg2", {verdict_of("s1", false), verdict_of("s2", true), verdict_of("s3", false)}}},
      ids);

  CHECK(m.config_labels == std::vector<std::string>{"cfg1", "cfg2"});
  REQUIRE(m.conflict_ids == std::vector<std::string>{"p::A::m()", "p::B::n()"});
  CHECK(m.cells.at("p::A::m()") == std::vector<bool>{true, false});
  CHECK(m.cells.at("p::B::n()") == std::vector<bool>{false, true});
  CHECK(m.cells.count("p::C::o()") == 0);
  CHECK(mp::matrix_union_flag(m, "p::A::m()"));
  CHECK(mp::matrix_union_count(m) == 2);
}

TEST_CASE("report emission is deterministic outside the manifest") {
  mp::RunTallies t;
  t.methods = 2;
  t.generation_calls = 2;
  t.responses_total = 2;
  t.tests_generated = 4;
  t.tests_compiled = 3;
  t.compile_failed = 1;
  mp::RunMetrics metrics = mp::compute_run_metrics(t, 1, 900);

  mp::ScenarioVerdict v = verdict_of("s1", true);
  mp::ConflictWitness w;
  w.artifact_file = "TextTest_left_prompt7_0_0.java";
  w.variant_id = 7;
  w.signal = mp::ConflictSignal::H1_BaseMergeFail_ParentPass;
  w.outcomes = {{mp::VersionId::Base, mp::TestOutcome::Fail},
                {mp::VersionId::Left, mp::TestOutcome::Pass},
                {mp::VersionId::Right, mp::TestOutcome::Fail},
                {mp::VersionId::Merge, mp::TestOutcome::Fail}};
  v.witnesses.push_back(w);

  std::map<std::string, std::string> ids = {{"s1", "proj::Text::cleanText()"}};
  mp::DetectionMatrix matrix =
      mp::build_detection_matrix({{"zero_shot_t0.0_s42", {v}}}, ids);

  mp::RunManifestInfo info1;
  info1.started_at = "2026-01-01T00:00:00Z";
  info1.finished_at = "2026-01-01T00:05:00Z";
  info1.wall_time_ms = 300000;
  info1.config_json = "{\"seed\":42}";

  mp::RunManifestInfo info2 = info1;
  info2.started_at = "2026-02-02T10:00:00Z";  // different wall clock
  info2.finished_at = "2026-02-02T10:09:00Z";
  info2.wall_time_ms = 540000;

  fs::path dir1 = fresh_dir("reports-a");
  fs::path dir2 = fresh_dir("reports-b");
  auto written1 = mp::emit_reports(metrics, matrix, {v}, ids, info1, dir1);
  auto written2 = mp::emit_reports(metrics, matrix, {v}, ids, info2, dir2);
  REQUIRE(written1.size() == written2.size());

  for (std::size_t i = 0; i < written1.size(); ++i) {
    if (written1[i].filename() == "manifest.json") continue;
    CAPTURE(written1[i].string());
    CHECK(read_file(written1[i]) == read_file(written2[i]));
  }

  std::string csv = read_file(dir1 / "run_metrics.csv");
  CHECK(csv.find("per_method_generated") != std::string::npos);
  CHECK(csv.find("2.00") != std::string::npos);   // 4 generated / 2 methods
  CHECK(csv.find("75.00%") != std::string::npos); // 3 compiled / 4 generated
  CHECK(csv.find("wall") == std::string::npos);   // timing never in tables

  std::string witnesses = read_file(dir1 / "witnesses.csv");
  CHECK(witnesses.find("H1_BaseMergeFail_ParentPass") != std::string::npos);
  CHECK(witnesses.find("F,P,F,F") != std::string::npos);

  std::string manifest = read_file(dir1 / "manifest.json");
  CHECK(manifest.find("2026-01-01T00:00:00Z") != std::string::npos);
  CHECK(manifest.find("300000") != std::string::npos);
}
