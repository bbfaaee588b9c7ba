#ifndef MERGEPROBE_POSTPROCESS_HPP_
#define MERGEPROBE_POSTPROCESS_HPP_

#include <set>
#include <string>
#include <vector>

#include "mergeprobe/context.hpp"
#include "mergeprobe/prompt.hpp"
#include "mergeprobe/version_id.hpp"

namespace mergeprobe {

/// Where a test method came from; drives file naming and report attribution.
struct TestOrigin {
  std::string scenario_id;
  VersionId branch = VersionId::Left;
  PromptFormat format = PromptFormat::ZeroShot;
  int variant_id = 1;
  int response_index = 0;
  int method_index = 0;

  bool operator==(const TestOrigin&) const = default;
};

struct TestMethod {
  std::string source_text;  // starts with @Test, annotation through closing brace
  std::string method_name;
  std::vector<std::string> helpers;  // unannotated methods from the same response
  TestOrigin origin;
};

struct TestArtifact {
  std::string file_name;  // {Class}Test_{branch}_prompt{v}_{method_index}_{seq}.java
  std::string file_text;
  TestMethod test_method;
};

/// Sanitizes raw model output. Fenced code blocks are extracted and joined
/// in order with one blank line; without fences the text itself is filtered.
/// Either way natural-language lines, fence markers, and lines with
/// non-lexical characters are dropped and blank runs collapse to one line.
/// Idempotent; "" is a valid result (tallied as no-code by callers).
std::string clean_response(const std::string& text);

struct ExtractedTests {
  std::vector<TestMethod> tests;
  bool parse_failed = false;  // unparseable even inside a synthetic class shell
};

/// Pulls every @Test-annotated method out of sanitized text. The text is
/// parsed as-is first, then retried wrapped in a synthetic class shell.
/// Unannotated methods ride along as helpers on every extracted test.
/// method_index numbers the tests in declaration order.
ExtractedTests extract_test_methods(const std::string& cleaned, const TestOrigin& origin);

/// Builds the single-test compilation unit and its file name. The file gets
/// the harness test package, the context's imports verbatim, the JUnit 4
/// imports (deduplicated), an import of the class under test, and a public
/// class named exactly like the file. When `used_method_names` is given the
/// test method is renamed `name_1`, `name_2`, ... on collision.
/// Throws std::logic_error when the assembled file does not re-parse.
TestArtifact assemble_test_file(const TestMethod& tm, const CodeContext& ctx,
                                const std::string& test_package = "generated",
                                std::set<std::string>* used_method_names = nullptr);

}  // namespace mergeprobe

#endif  // MERGEPROBE_POSTPROCESS_HPP_
