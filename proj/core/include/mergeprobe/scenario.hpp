#ifndef MERGEPROBE_SCENARIO_HPP_
#define MERGEPROBE_SCENARIO_HPP_

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mergeprobe/version_id.hpp"

namespace mergeprobe {

/// One merge quadruple: the four revisions, their build files, the target
/// method, and the per-parent change summaries that feed the prompts.
struct MergeScenario {
  std::string scenario_id;
  std::string project_name;
  // Revision references: either a directory path (resolved against
  // source_dir) or a VCS SHA to be materialized under the workspace.
  std::map<VersionId, std::string> commits;
  std::map<VersionId, std::string> build_paths;
  std::string target_class;   // fully qualified
  std::string target_method;  // signature string, e.g. "cleanText()"
  std::string summary_left;
  std::string summary_right;
  std::string repo_url;  // required only when commits hold SHAs

  // Directory of the scenario file; set by load_scenarios, not serialized.
  std::filesystem::path source_dir;

  bool operator==(const MergeScenario& other) const;
};

struct ScenarioParseError : std::runtime_error {
  ScenarioParseError(const std::string& msg, int record_index_, std::string field_)
      : std::runtime_error(msg), record_index(record_index_), field(std::move(field_)) {}
  int record_index;   // 0-based position in file order, -1 for file-level errors
  std::string field;  // offending schema field, empty when not field-specific
};

enum class IssueKind { MissingFile, MissingClass, MissingMethod };

std::string issue_kind_name(IssueKind kind);

struct ValidationIssue {
  VersionId version;
  IssueKind kind;
  std::string path;    // file the check looked at (or probed for)
  std::string detail;  // human-readable explanation
};

/// Loads a line-delimited scenario file. Records are returned in file order.
/// Unknown fields are skipped and reported through `warnings` when non-null.
/// Throws ScenarioParseError on malformed records or duplicate scenario_id,
/// std::runtime_error when the file cannot be read.
std::vector<MergeScenario> load_scenarios(const std::filesystem::path& path,
                                          std::vector<std::string>* warnings = nullptr);

/// Writes scenarios in the same line-delimited schema load_scenarios reads.
/// load(save(x)) == x on all schema fields.
void save_scenarios(const std::filesystem::path& path,
                    const std::vector<MergeScenario>& scenarios);

/// Root directory holding one version's checkout. Directory-valued commit
/// references resolve against the scenario's source_dir; SHA references
/// resolve to the materializer's target `workspace/<scenario_id>/<version>`.
std::filesystem::path version_root(const MergeScenario& s, VersionId version,
                                   const std::filesystem::path& workspace);

/// Checks that every version exposes the build file and the target class
/// file, that the class parses and declares the target method. Issues are
/// data; an empty list means the scenario is runnable.
std::vector<ValidationIssue> validate_scenario(const MergeScenario& s,
                                               const std::filesystem::path& workspace);

}  // namespace mergeprobe

#endif  // MERGEPROBE_SCENARIO_HPP_
