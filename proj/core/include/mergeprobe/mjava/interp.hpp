#ifndef MERGEPROBE_MJAVA_INTERP_HPP_
#define MERGEPROBE_MJAVA_INTERP_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mergeprobe/mjava/ast.hpp"

namespace mergeprobe::mjava {

/// Loads and caches compilation units from a set of package roots.
/// Simple names resolve against the referencing unit's own classes, its
/// explicit imports, its package, then language builtins.
class Workspace {
 public:
  explicit Workspace(std::vector<std::filesystem::path> source_roots);

  /// Parses source text and registers it. Throws SubsetError.
  const Unit* add_unit(std::string_view source, const std::string& source_name);

  /// Loads <package>/<Simple>.java from the source roots; nullptr when no
  /// file exists. Parse failures surface as diagnostics, not exceptions.
  const Unit* load_from_package(const std::string& package_name,
                                const std::string& simple_name);

  const ClassDecl* resolve_class(const std::string& simple_name,
                                 const Unit& from);

  /// True for names satisfied by the runtime itself (String, Set, HashSet,
  /// Assert) rather than by a source file.
  static bool is_builtin_class(const std::string& simple_name);

  /// True for import paths the runtime honours without a source file
  /// (java.lang/java.util/org.junit and their members).
  static bool is_builtin_import(const std::string& import_path);

  const std::vector<const Unit*>& units() const { return order_; }
  std::vector<std::string>& diagnostics() { return diagnostics_; }

 private:
  std::vector<std::filesystem::path> roots_;
  std::map<std::string, std::unique_ptr<Unit>> by_key_;  // pkg + "/" + file
  std::vector<const Unit*> order_;
  std::map<std::string, const Unit*> failed_;  // negative cache
  std::vector<std::string> diagnostics_;
};

/// Static checks over every unit reachable from the workspace: unresolved
/// imports, unknown classes/methods/fields, arity mismatches, basic type
/// errors. Returns diagnostics, empty when the sources are well formed.
std::vector<std::string> check_workspace(Workspace& workspace);

enum class RunStatus { Pass, Fail, Error };

struct TestRunResult {
  std::string method_name;
  RunStatus status = RunStatus::Pass;
  std::string message;  // failure or error detail
};

/// Executes every @Test method of `test_class` in declaration order on a
/// fresh instance each. Assertion misses report Fail, interpreter faults
/// report Error; execution always continues to the next test.
std::vector<TestRunResult> run_test_class(Workspace& workspace,
                                          const Unit& test_unit,
                                          const ClassDecl& test_class);

}  // namespace mergeprobe::mjava

#endif  // MERGEPROBE_MJAVA_INTERP_HPP_
