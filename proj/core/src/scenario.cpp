#include "mergeprobe/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mergeprobe/context.hpp"
#include "mergeprobe/java/lexer.hpp"
#include "mergeprobe/java/structure.hpp"

namespace mergeprobe {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string record_label(int index, const std::string& id) {
  std::string label = "record " + std::to_string(index);
  if (!id.empty()) label += " (scenario " + id + ")";
  return label;
}

[[noreturn]] void record_error(int index, const std::string& id, const std::string& field,
                               const std::string& what) {
  throw ScenarioParseError(record_label(index, id) + ": " + what, index, field);
}

std::string require_string(const json& rec, const char* field, int index,
                           const std::string& id) {
  auto it = rec.find(field);
  if (it == rec.end()) record_error(index, id, field, std::string("missing field ") + field);
  if (!it->is_string()) record_error(index, id, field, std::string(field) + " must be a string");
  return it->get<std::string>();
}

std::map<VersionId, std::string> require_version_map(const json& rec, const char* field,
                                                     int index, const std::string& id) {
  auto it = rec.find(field);
  if (it == rec.end()) record_error(index, id, field, std::string("missing field ") + field);
  if (!it->is_object()) record_error(index, id, field, std::string(field) + " must be an object");
  std::map<VersionId, std::string> out;
  for (VersionId v : kAllVersions) {
    std::string key(version_key(v));
    std::string dotted = std::string(field) + "." + key;
    auto entry = it->find(key);
    if (entry == it->end()) {
      record_error(index, id, dotted, "missing field " + dotted);
    }
    if (!entry->is_string()) {
      record_error(index, id, dotted, dotted + " must be a string");
    }
    out[v] = entry->get<std::string>();
  }
  for (auto& [key, value] : it->items()) {
    if (!parse_version_key(key)) {
      record_error(index, id, std::string(field) + "." + key,
                   std::string(field) + " holds unknown version key '" + key + "'");
    }
  }
  return out;
}

constexpr const char* kKnownFields[] = {"scenario_id", "project_name", "commits",
                                        "build_paths", "target_class", "target_method",
                                        "summary_left", "summary_right", "repo_url"};

bool is_known_field(const std::string& name) {
  for (const char* f : kKnownFields) {
    if (name == f) return true;
  }
  return false;
}

MergeScenario parse_record(const json& rec, int index, std::vector<std::string>* warnings) {
  if (!rec.is_object()) {
    record_error(index, "", "", "record is not an object");
  }
  std::string id;
  if (auto it = rec.find("scenario_id"); it != rec.end() && it->is_string()) {
    id = it->get<std::string>();
  }
  MergeScenario s;
  s.scenario_id = require_string(rec, "scenario_id", index, id);
  if (s.scenario_id.empty()) {
    record_error(index, id, "scenario_id", "scenario_id must be non-empty");
  }
  s.project_name = require_string(rec, "project_name", index, id);
  s.commits = require_version_map(rec, "commits", index, id);
  s.build_paths = require_version_map(rec, "build_paths", index, id);
  s.target_class = require_string(rec, "target_class", index, id);
  s.target_method = require_string(rec, "target_method", index, id);
  if (s.target_class.empty()) {
    record_error(index, id, "target_class", "target_class must be non-empty");
  }
  if (s.target_method.empty()) {
    record_error(index, id, "target_method", "target_method must be non-empty");
  }
  s.summary_left = require_string(rec, "summary_left", index, id);
  s.summary_right = require_string(rec, "summary_right", index, id);
  if (auto it = rec.find("repo_url"); it != rec.end()) {
    if (!it->is_string()) record_error(index, id, "repo_url", "repo_url must be a string");
    s.repo_url = it->get<std::string>();
  }
  if (warnings) {
    for (auto& [key, value] : rec.items()) {
      if (!is_known_field(key)) {
        warnings->push_back(record_label(index, id) + ": ignoring unknown field '" + key +
                            "'");
      }
    }
  }
  return s;
}

}  // namespace

bool MergeScenario::operator==(const MergeScenario& other) const {
  return scenario_id == other.scenario_id && project_name == other.project_name &&
         commits == other.commits && build_paths == other.build_paths &&
         target_class == other.target_class && target_method == other.target_method &&
         summary_left == other.summary_left && summary_right == other.summary_right &&
         repo_url == other.repo_url;
}

std::string issue_kind_name(IssueKind kind) {
  switch (kind) {
    case IssueKind::MissingFile: return "MissingFile";
    case IssueKind::MissingClass: return "MissingClass";
    case IssueKind::MissingMethod: return "MissingMethod";
  }
  return "Unknown";
}

std::vector<MergeScenario> load_scenarios(const std::filesystem::path& path,
                                          std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open scenario file: " + path.string());
  }
  std::vector<MergeScenario> out;
  std::set<std::string> seen_ids;
  std::string line;
  int index = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      record_error(index, "", "", std::string("malformed record: ") + e.what());
    }
    MergeScenario s = parse_record(rec, index, warnings);
    if (!seen_ids.insert(s.scenario_id).second) {
      record_error(index, s.scenario_id, "scenario_id",
                   "duplicate scenario_id '" + s.scenario_id + "'");
    }
    // Absolute so version roots stay valid no matter where toolchain
    // subprocesses are spawned from.
    s.source_dir = std::filesystem::absolute(path).parent_path();
    out.push_back(std::move(s));
    ++index;
  }
  return out;
}

void save_scenarios(const std::filesystem::path& path,
                    const std::vector<MergeScenario>& scenarios) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write scenario file: " + path.string());
  }
  for (const auto& s : scenarios) {
    ordered_json rec;
    rec["scenario_id"] = s.scenario_id;
    rec["project_name"] = s.project_name;
    for (VersionId v : kAllVersions) {
      rec["commits"][std::string(version_key(v))] = s.commits.at(v);
    }
    for (VersionId v : kAllVersions) {
      rec["build_paths"][std::string(version_key(v))] = s.build_paths.at(v);
    }
    rec["target_class"] = s.target_class;
    rec["target_method"] = s.target_method;
    rec["summary_left"] = s.summary_left;
    rec["summary_right"] = s.summary_right;
    if (!s.repo_url.empty()) rec["repo_url"] = s.repo_url;
    out << rec.dump() << "\n";
  }
}

std::filesystem::path version_root(const MergeScenario& s, VersionId version,
                                   const std::filesystem::path& workspace) {
  const std::string& ref = s.commits.at(version);
  std::filesystem::path as_path(ref);
  if (as_path.is_absolute() && std::filesystem::is_directory(as_path)) return as_path;
  if (!s.source_dir.empty() && std::filesystem::is_directory(s.source_dir / as_path)) {
    return s.source_dir / as_path;
  }
  // SHA-style reference: the harness materializes it under the workspace.
  return workspace / s.scenario_id / std::string(version_key(version));
}

std::vector<ValidationIssue> validate_scenario(const MergeScenario& s,
                                               const std::filesystem::path& workspace) {
  std::vector<ValidationIssue> issues;
  std::string method_name;
  int arity = 0;
  java::parse_method_signature(s.target_method, &method_name, &arity);

  for (VersionId v : kAllVersions) {
    std::filesystem::path root = version_root(s, v, workspace);
    if (!std::filesystem::is_directory(root)) {
      issues.push_back({v, IssueKind::MissingFile, root.string(),
                        "version checkout directory does not exist"});
      continue;
    }
    auto build_it = s.build_paths.find(v);
    if (build_it != s.build_paths.end() && !build_it->second.empty()) {
      std::filesystem::path build_file = root / build_it->second;
      if (!std::filesystem::is_regular_file(build_file)) {
        issues.push_back(
            {v, IssueKind::MissingFile, build_file.string(), "build file does not exist"});
      }
    }
    auto file = resolve_class_file(root, s.target_class);
    if (!file) {
      issues.push_back({v, IssueKind::MissingFile, (root / "...").string(),
                        "no source file found for class " + s.target_class});
      continue;
    }
    std::ifstream in(*file, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string bytes = std::move(buf).str();

    java::CompilationUnit unit;
    try {
      unit = java::parse_compilation_unit(bytes);
    } catch (const java::ParseError& e) {
      issues.push_back({v, IssueKind::MissingClass, file->string(),
                        std::string("source does not parse: ") + e.what()});
      continue;
    } catch (const java::LexError& e) {
      issues.push_back({v, IssueKind::MissingClass, file->string(),
                        std::string("source does not lex: ") + e.what()});
      continue;
    }
    const java::JavaClass* cls = java::find_class(unit, s.target_class);
    if (!cls) {
      issues.push_back({v, IssueKind::MissingClass, file->string(),
                        "class " + s.target_class + " not declared in file"});
      continue;
    }
    if (java::find_methods(*cls, method_name, arity).empty()) {
      issues.push_back({v, IssueKind::MissingMethod, file->string(),
                        "method " + s.target_method + " not found in class " + cls->name});
    }
  }
  return issues;
}

}  // namespace mergeprobe
