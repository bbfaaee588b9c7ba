#ifndef MERGEPROBE_HARNESS_HPP_
#define MERGEPROBE_HARNESS_HPP_

#include <chrono>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mergeprobe/postprocess.hpp"
#include "mergeprobe/scenario.hpp"
#include "mergeprobe/subprocess.hpp"
#include "mergeprobe/toolchain.hpp"
#include "mergeprobe/version_id.hpp"

namespace mergeprobe {

struct CompileResult {
  VersionId version = VersionId::Base;
  bool ok = false;
  std::string diagnostics;  // non-empty whenever ok is false
  std::chrono::milliseconds duration{0};
};

enum class TestOutcome { Pass, Fail, Error };

std::string_view outcome_name(TestOutcome outcome);  // "Pass" / "Fail" / "Error"
char outcome_letter(TestOutcome outcome);            // 'P' / 'F' / 'E'

/// Per-version verdicts of one test across `runs` repetitions. stable is
/// true iff every repetition agreed on every version; unstable vectors are
/// discarded before conflict analysis.
struct OutcomeVector {
  std::string artifact_file;
  std::map<VersionId, TestOutcome> outcomes;  // first repetition's verdicts
  bool stable = false;
  int runs = 0;
};

/// Scenario cannot provide a version checkout; the scenario is discarded
/// with this reason.
struct MaterializeError : std::runtime_error {
  explicit MaterializeError(const std::string& reason) : std::runtime_error(reason) {}
};

/// Toolchain binary missing or unrunnable; fatal for the whole run.
struct ToolchainError : std::runtime_error {
  explicit ToolchainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Provides the four version checkouts. Directory references pass through;
/// SHA references are exported from the scenario's repository into
/// `workspace/<scenario_id>/<version>`. Idempotent: a checkout stamped with
/// the requested revision is reused.
std::map<VersionId, std::filesystem::path> materialize_versions(
    const MergeScenario& scenario, const std::filesystem::path& workspace);

class ExecutionHarness {
 public:
  ExecutionHarness(ToolchainProfile profile, std::filesystem::path scratch_dir,
                   std::string test_package = "generated");

  /// Writes the artifact under `generated-tests/{scenario}/{branch}/` inside
  /// the scratch dir. Idempotent; returns the file path.
  std::filesystem::path write_artifact(const TestArtifact& artifact);

  /// Compiles one artifact against one version. Compiler failures are data
  /// (ok=false); a missing toolchain binary throws ToolchainError.
  CompileResult compile_test(const TestArtifact& artifact, VersionId version,
                             const std::filesystem::path& version_path);

  /// Runs one compiled artifact: exit 0 → Pass, exit 1 → Fail, anything
  /// else (timeout, crash, framework error) → Error.
  TestOutcome execute_test(const TestArtifact& artifact, VersionId version,
                           const std::filesystem::path& version_path,
                           std::chrono::milliseconds timeout);

  /// Runs every version `repeats` times; any disagreement across repetitions
  /// marks the vector unstable.
  OutcomeVector evaluate_outcome_vector(const TestArtifact& artifact,
                                        const std::map<VersionId, std::filesystem::path>& versions,
                                        int repeats, std::chrono::milliseconds timeout);

  const ToolchainProfile& profile() const { return profile_; }
  const std::string& test_package() const { return test_package_; }

  /// Every process invocation, full argv, in execution order.
  const std::vector<std::string>& command_log() const { return command_log_; }

  std::chrono::milliseconds compile_timeout{120000};

 private:
  std::map<std::string, std::string> placeholder_values(const TestArtifact& artifact,
                                                        VersionId version,
                                                        const std::filesystem::path& version_path);

  ToolchainProfile profile_;
  std::filesystem::path scratch_dir_;
  std::string test_package_;
  std::vector<std::string> command_log_;
};

}  // namespace mergeprobe

#endif  // MERGEPROBE_HARNESS_HPP_
