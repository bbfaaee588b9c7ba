// Checker and test runner for the Java subset used by merge-analysis
// fixtures. `check` mirrors a compiler invocation (exit 0 clean, 1 with
// diagnostics); `run` executes @Test methods (exit 0 all pass, 1 assertion
// failure, 2 runtime error).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mergeprobe/mjava/interp.hpp"
#include "mergeprobe/mjava/parser.hpp"

namespace mjava = mergeprobe::mjava;

namespace {

std::vector<std::filesystem::path> split_sourcepath(const std::string& joined) {
  std::vector<std::filesystem::path> roots;
  std::string::size_type pos = 0;
  while (pos <= joined.size()) {
    auto sep = joined.find(':', pos);
    if (sep == std::string::npos) sep = joined.size();
    if (sep > pos) roots.emplace_back(joined.substr(pos, sep - pos));
    pos = sep + 1;
  }
  return roots;
}

bool read_file(const std::filesystem::path& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

int run_check(const std::string& sourcepath,
              const std::vector<std::string>& files) {
  mjava::Workspace ws(split_sourcepath(sourcepath));
  bool loaded_any = false;
  for (const auto& file : files) {
    std::string text;
    if (!read_file(file, text)) {
      std::cerr << "error: cannot read " << file << "\n";
      return 2;
    }
    try {
      ws.add_unit(text, file);
      loaded_any = true;
    } catch (const mjava::SubsetError& e) {
      std::cerr << e.what() << "\n";
      return 1;
    }
  }
  if (!loaded_any) return 2;
  std::vector<std::string> diags = mjava::check_workspace(ws);
  for (const auto& d : diags) std::cerr << d << "\n";
  return diags.empty() ? 0 : 1;
}

int run_tests(const std::string& sourcepath, const std::string& test_file,
              const std::string& test_class) {
  std::string text;
  if (!read_file(test_file, text)) {
    std::cerr << "error: cannot read " << test_file << "\n";
    return 2;
  }
  mjava::Workspace ws(split_sourcepath(sourcepath));
  const mjava::Unit* unit = nullptr;
  try {
    unit = ws.add_unit(text, test_file);
  } catch (const mjava::SubsetError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  // Executing unchecked code could mask missing symbols as passes.
  std::vector<std::string> diags = mjava::check_workspace(ws);
  if (!diags.empty()) {
    for (const auto& d : diags) std::cerr << d << "\n";
    return 2;
  }

  std::string simple = test_class;
  if (auto dot = simple.rfind('.'); dot != std::string::npos) {
    simple = simple.substr(dot + 1);
  }
  const mjava::ClassDecl* cls = nullptr;
  for (const auto& c : unit->classes) {
    if (simple.empty() || c.name == simple) {
      cls = &c;
      break;
    }
  }
  if (!cls) {
    std::cerr << "error: test class '" << simple << "' not found in "
              << test_file << "\n";
    return 2;
  }

  std::vector<mjava::TestRunResult> results =
      mjava::run_test_class(ws, *unit, *cls);
  if (results.empty()) {
    std::cout << "No runnable methods in " << cls->name << "\n";
    return 1;
  }
  int failures = 0;
  int errors = 0;
  for (const auto& r : results) {
    switch (r.status) {
      case mjava::RunStatus::Pass:
        std::cout << r.method_name << ": PASS\n";
        break;
      case mjava::RunStatus::Fail:
        std::cout << r.method_name << ": FAIL " << r.message << "\n";
        ++failures;
        break;
      case mjava::RunStatus::Error:
        std::cout << r.method_name << ": ERROR " << r.message << "\n";
        ++errors;
        break;
    }
  }
  std::cout << "Tests run: " << results.size() << ", Failures: " << failures
            << ", Errors: " << errors << "\n";
  if (errors > 0) return 2;
  return failures > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Java-subset checker and JUnit-style test runner"};
  app.require_subcommand(1);

  std::string check_sourcepath;
  std::vector<std::string> check_files;
  CLI::App* check = app.add_subcommand(
      "check", "Statically check source files against the supported subset");
  check->add_option("--sourcepath", check_sourcepath,
                    "Colon-separated package roots");
  check->add_option("files", check_files, "Source files to check")
      ->required()
      ->expected(-1);

  std::string run_sourcepath;
  std::string run_file;
  std::string run_class;
  CLI::App* run =
      app.add_subcommand("run", "Execute the @Test methods of a test class");
  run->add_option("--sourcepath", run_sourcepath,
                  "Colon-separated package roots");
  run->add_option("--test-file", run_file, "File containing the test class")
      ->required();
  run->add_option("test_class", run_class,
                  "Test class name (defaults to the file's first class)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems are errors, not test failures
  }

  if (check->parsed()) return run_check(check_sourcepath, check_files);
  return run_tests(run_sourcepath, run_file, run_class);
}
