#ifndef MERGEPROBE_TOOLCHAIN_HPP_
#define MERGEPROBE_TOOLCHAIN_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mergeprobe {

/// Compiler and runner command templates. Placeholders substituted per
/// invocation: {classpath} (classpath_roots resolved against the version
/// root, ':'-joined, plus the artifact out dir for run commands), {file}
/// (the test source file), {test_class} (fully qualified test class),
/// {out_dir} (per-invocation scratch dir for compiled classes).
struct ToolchainProfile {
  std::string name = "javac";
  std::vector<std::string> compile_cmd = {"javac", "-cp", "{classpath}", "-d",
                                          "{out_dir}", "{file}"};
  std::vector<std::string> run_cmd = {"java", "-cp", "{classpath}",
                                      "org.junit.runner.JUnitCore", "{test_class}"};
  std::vector<std::string> classpath_roots = {"."};
  std::string test_framework = "junit4";
};

/// Stock profile targeting the standard Java toolchain.
ToolchainProfile default_toolchain_profile();

/// Profile driving the bundled subset interpreter at `mjava_binary`.
ToolchainProfile mjava_toolchain_profile(const std::filesystem::path& mjava_binary);

std::vector<std::string> substitute_placeholders(
    const std::vector<std::string>& command_template,
    const std::map<std::string, std::string>& values);

/// The {classpath} value for one version: classpath_roots resolved against
/// the version root (existing entries only; the root itself when none
/// exist), joined with ':'. `extra` entries are appended verbatim.
std::string build_classpath(const ToolchainProfile& profile,
                            const std::filesystem::path& version_root,
                            const std::vector<std::string>& extra = {});

}  // namespace mergeprobe

#endif  // MERGEPROBE_TOOLCHAIN_HPP_
