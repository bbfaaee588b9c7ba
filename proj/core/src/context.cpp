#include "mergeprobe/context.hpp"

#include <fstream>
#include <sstream>

#include "mergeprobe/java/lexer.hpp"
#include "mergeprobe/java/structure.hpp"

namespace mergeprobe {
namespace {

std::vector<std::string> split_qualified_name(std::string_view fqcn) {
  std::vector<std::string> segments;
  std::string current;
  for (char c : fqcn) {
    if (c == '.' || c == '$') {
      if (!current.empty()) segments.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) segments.push_back(std::move(current));
  return segments;
}

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ExtractionError(ExtractionFailure::MissingFile,
                          "cannot read source file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

}  // namespace

const std::vector<std::string>& default_source_roots() {
  static const std::vector<std::string> roots = {"src/main/java", "src/java", "src",
                                                 ""};
  return roots;
}

std::optional<std::filesystem::path> resolve_class_file(
    const std::filesystem::path& root, std::string_view fully_qualified_class,
    const std::vector<std::string>& source_roots) {
  auto segments = split_qualified_name(fully_qualified_class);
  if (segments.empty()) return std::nullopt;
  for (const auto& sroot : source_roots) {
    std::filesystem::path base = sroot.empty() ? root : root / sroot;
    // Deepest candidate first so `pkg.Outer.Inner` prefers Inner.java but
    // falls back to the enclosing Outer.java.
    for (std::size_t last = segments.size(); last-- > 0;) {
      std::filesystem::path candidate = base;
      for (std::size_t i = 0; i < last; ++i) candidate /= segments[i];
      candidate /= segments[last] + ".java";
      if (std::filesystem::is_regular_file(candidate)) return candidate;
    }
  }
  return std::nullopt;
}

CodeContext extract_context(std::string_view source_text, const std::string& target_class,
                            const std::string& target_method, VersionId branch,
                            std::vector<std::string>* warnings) {
  java::CompilationUnit unit;
  try {
    unit = java::parse_compilation_unit(source_text);
  } catch (const java::ParseError& e) {
    throw ExtractionError(ExtractionFailure::ParseFailure, e.what(), e.line, e.column);
  } catch (const java::LexError& e) {
    throw ExtractionError(ExtractionFailure::ParseFailure, e.what(), e.line, e.column);
  }

  const java::JavaClass* cls = java::find_class(unit, target_class);
  if (!cls) {
    throw ExtractionError(ExtractionFailure::MissingClass,
                          "class not found in source: " + target_class);
  }

  std::string method_name;
  int arity = 0;
  java::parse_method_signature(target_method, &method_name, &arity);
  auto matches = java::find_methods(*cls, method_name, arity);
  if (matches.empty()) {
    throw ExtractionError(ExtractionFailure::MissingMethod,
                          "method not found in class " + cls->name + ": " + target_method);
  }
  if (matches.size() > 1 && warnings) {
    warnings->push_back("class " + cls->name + " declares " +
                        std::to_string(matches.size()) + " overloads matching '" +
                        target_method + "'; using the first declaration");
  }

  CodeContext ctx;
  ctx.branch = branch;
  ctx.class_name = cls->name;
  ctx.package_name = unit.package_name;
  ctx.imports = unit.imports;
  ctx.fields = cls->fields;
  ctx.constructors = cls->constructors;
  ctx.method_body = matches.front()->text;
  return ctx;
}

CodeContext extract_for_branch(const MergeScenario& scenario, VersionId branch,
                               const std::filesystem::path& workspace,
                               std::vector<std::string>* warnings) {
  std::filesystem::path root = version_root(scenario, branch, workspace);
  auto file = resolve_class_file(root, scenario.target_class);
  if (!file) {
    throw ExtractionError(ExtractionFailure::MissingFile,
                          "no source file for " + scenario.target_class + " under " +
                              root.string());
  }
  std::string bytes = read_file_bytes(*file);
  return extract_context(bytes, scenario.target_class, scenario.target_method, branch,
                         warnings);
}

}  // namespace mergeprobe
