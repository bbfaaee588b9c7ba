#include "mergeprobe/harness.hpp"

#include <fstream>
#include <sstream>

namespace mergeprobe {
namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

// SHA-style references are exported with `git archive` piped through tar;
// the stamp file makes re-materialization a no-op.
std::filesystem::path materialize_sha(const MergeScenario& s, VersionId version,
                                      const std::filesystem::path& workspace) {
  const std::string& sha = s.commits.at(version);
  std::string label(version_label(version));
  if (s.repo_url.empty()) {
    throw MaterializeError("unresolvable revision " + label +
                           ": no checkout directory and no repo_url for '" + sha + "'");
  }
  std::filesystem::path target =
      workspace / s.scenario_id / std::string(version_key(version));
  std::filesystem::path stamp = target / ".materialized";
  if (std::filesystem::is_regular_file(stamp) && read_text(stamp) == sha) {
    return target;
  }
  std::error_code ec;
  std::filesystem::remove_all(target, ec);
  std::filesystem::create_directories(target);

  std::filesystem::path tar_file = target.string() + ".tar";
  auto archive = run_command({"git", "-C", s.repo_url, "archive", "--format=tar",
                              "--output", tar_file.string(), sha},
                             workspace, std::chrono::milliseconds(60000));
  if (!archive.ok()) {
    std::filesystem::remove(tar_file, ec);
    throw MaterializeError("unresolvable revision " + label + ": " +
                           (archive.err.empty() ? "git archive failed" : archive.err));
  }
  auto extract = run_command({"tar", "-xf", tar_file.string(), "-C", target.string()},
                             workspace, std::chrono::milliseconds(60000));
  std::filesystem::remove(tar_file, ec);
  if (!extract.ok()) {
    throw MaterializeError("unresolvable revision " + label + ": " +
                           (extract.err.empty() ? "tar extract failed" : extract.err));
  }
  write_text(stamp, sha);
  return target;
}

}  // namespace

std::string_view outcome_name(TestOutcome outcome) {
  switch (outcome) {
    case TestOutcome::Pass: return "Pass";
    case TestOutcome::Fail: return "Fail";
    case TestOutcome::Error: return "Error";
  }
  return "Error";
}

char outcome_letter(TestOutcome outcome) {
  switch (outcome) {
    case TestOutcome::Pass: return 'P';
    case TestOutcome::Fail: return 'F';
    case TestOutcome::Error: return 'E';
  }
  return 'E';
}

std::map<VersionId, std::filesystem::path> materialize_versions(
    const MergeScenario& scenario, const std::filesystem::path& workspace) {
  std::map<VersionId, std::filesystem::path> out;
  for (VersionId v : kAllVersions) {
    std::filesystem::path root = version_root(scenario, v, workspace);
    if (std::filesystem::is_directory(root) &&
        !std::filesystem::is_regular_file(root / ".materialized")) {
      out[v] = std::filesystem::absolute(root);  // pre-checked-out directory
      continue;
    }
    // Absolute for the same reason as above: toolchain subprocesses run
    // from the scratch dir, not the caller's cwd.
    out[v] = std::filesystem::absolute(materialize_sha(scenario, v, workspace));
  }
  return out;
}

ExecutionHarness::ExecutionHarness(ToolchainProfile profile, std::filesystem::path scratch_dir,
                                   std::string test_package)
    : profile_(std::move(profile)),
      scratch_dir_(std::move(scratch_dir)),
      test_package_(std::move(test_package)) {}

std::filesystem::path ExecutionHarness::write_artifact(const TestArtifact& artifact) {
  std::filesystem::path dir = scratch_dir_ / "generated-tests" /
                              artifact.test_method.origin.scenario_id /
                              std::string(version_key(artifact.test_method.origin.branch));
  std::filesystem::create_directories(dir);
  std::filesystem::path file = dir / artifact.file_name;
  if (!std::filesystem::is_regular_file(file) || read_text(file) != artifact.file_text) {
    write_text(file, artifact.file_text);
  }
  return file;
}

std::map<std::string, std::string> ExecutionHarness::placeholder_values(
    const TestArtifact& artifact, VersionId version,
    const std::filesystem::path& version_path) {
  std::filesystem::path file = write_artifact(artifact);
  std::string stem = artifact.file_name.substr(0, artifact.file_name.rfind('.'));
  std::filesystem::path out_dir = scratch_dir_ / "classes" /
                                  artifact.test_method.origin.scenario_id / stem /
                                  std::string(version_key(version));
  std::filesystem::create_directories(out_dir);
  return {
      {"classpath", build_classpath(profile_, version_path, {out_dir.string()})},
      {"file", file.string()},
      {"test_class", test_package_ + "." + stem},
      {"out_dir", out_dir.string()},
  };
}

CompileResult ExecutionHarness::compile_test(const TestArtifact& artifact, VersionId version,
                                             const std::filesystem::path& version_path) {
  auto argv = substitute_placeholders(profile_.compile_cmd,
                                      placeholder_values(artifact, version, version_path));
  command_log_.push_back(format_argv(argv));
  auto res = run_command(argv, scratch_dir_, compile_timeout);
  if (res.spawn_failed) {
    throw ToolchainError("compiler unavailable: " + res.err);
  }
  CompileResult cr;
  cr.version = version;
  cr.ok = res.ok();
  cr.duration = res.duration;
  if (!cr.ok) {
    cr.diagnostics = res.err.empty() ? res.out : res.err;
    if (cr.diagnostics.empty()) {
      cr.diagnostics = res.timed_out
                           ? "compiler timed out"
                           : "compiler exited with code " + std::to_string(res.exit_code);
    }
  }
  return cr;
}

TestOutcome ExecutionHarness::execute_test(const TestArtifact& artifact, VersionId version,
                                           const std::filesystem::path& version_path,
                                           std::chrono::milliseconds timeout) {
  auto argv = substitute_placeholders(profile_.run_cmd,
                                      placeholder_values(artifact, version, version_path));
  command_log_.push_back(format_argv(argv));
  auto res = run_command(argv, scratch_dir_, timeout);
  if (res.spawn_failed) {
    throw ToolchainError("test runner unavailable: " + res.err);
  }
  if (res.timed_out || res.signaled) return TestOutcome::Error;
  if (res.exit_code == 0) return TestOutcome::Pass;
  if (res.exit_code == 1) return TestOutcome::Fail;
  return TestOutcome::Error;
}

OutcomeVector ExecutionHarness::evaluate_outcome_vector(
    const TestArtifact& artifact, const std::map<VersionId, std::filesystem::path>& versions,
    int repeats, std::chrono::milliseconds timeout) {
  OutcomeVector vec;
  vec.artifact_file = artifact.file_name;
  vec.runs = repeats;
  vec.stable = true;
  for (int run = 0; run < repeats; ++run) {
    for (const auto& [version, path] : versions) {
      TestOutcome outcome = execute_test(artifact, version, path, timeout);
      auto [it, inserted] = vec.outcomes.emplace(version, outcome);
      if (!inserted && it->second != outcome) vec.stable = false;
    }
  }
  return vec;
}

}  // namespace mergeprobe
