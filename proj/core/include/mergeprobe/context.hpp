#ifndef MERGEPROBE_CONTEXT_HPP_
#define MERGEPROBE_CONTEXT_HPP_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mergeprobe/scenario.hpp"
#include "mergeprobe/version_id.hpp"

namespace mergeprobe {

/// Everything the prompt needs to know about one branch's version of the
/// class under test. All pieces are source slices, dedented to their
/// declaration column.
struct CodeContext {
  VersionId branch = VersionId::Base;
  std::string class_name;    // simple name of the class under test
  std::string package_name;  // empty when the file has no package
  std::vector<std::string> imports;
  std::vector<std::string> fields;
  std::vector<std::string> constructors;
  std::string method_body;  // full method source, signature included

  bool operator==(const CodeContext&) const = default;
};

enum class ExtractionFailure { ParseFailure, MissingFile, MissingClass, MissingMethod };

struct ExtractionError : std::runtime_error {
  ExtractionError(ExtractionFailure kind_, const std::string& msg, int line_ = 0,
                  int column_ = 0)
      : std::runtime_error(msg), kind(kind_), line(line_), column(column_) {}
  ExtractionFailure kind;
  int line;    // 1-based source position for ParseFailure, 0 otherwise
  int column;
};

///// Source roots probed when mapping a class name to a file: first match wins.
const std::vector<std::string>& default_source_roots();

/// Maps a fully qualified class name to its source file under `root`.
/// Nested-class names fall back to the enclosing top-level file.
std::optional<std::filesystem::path> resolve_class_file(
    const std::filesystem::path& root, std::string_view fully_qualified_class,
    const std::vector<std::string>& source_roots = default_source_roots());

/// Extracts imports, fields, constructors, and the target method from one
/// version of the source file. Nested classes are searched depth-first; the
/// declaration-order-first method matching the signature's name and arity is
/// selected (a bare name matches any arity). Overload ambiguity is resolved
/// to the first declaration and reported through `warnings`.
/// Throws ExtractionError on parse failure or when class/method are absent.
CodeContext extract_context(std::string_view source_text, const std::string& target_class,
                            const std::string& target_method, VersionId branch,
                            std::vector<std::string>* warnings = nullptr);

/// Resolves the class file inside the branch checkout, then delegates to
/// extract_context on the file bytes.
CodeContext extract_for_branch(const MergeScenario& scenario, VersionId branch,
                               const std::filesystem::path& workspace,
                               std::vector<std::string>* warnings = nullptr);

}  // namespace mergeprobe

#endif  // MERGEPROBE_CONTEXT_HPP_
