#include "mergeprobe/toolchain.hpp"

namespace mergeprobe {

ToolchainProfile default_toolchain_profile() { return ToolchainProfile{}; }

ToolchainProfile mjava_toolchain_profile(const std::filesystem::path& mjava_binary) {
  ToolchainProfile p;
  p.name = "mjava";
  p.compile_cmd = {mjava_binary.string(), "check", "--sourcepath", "{classpath}", "{file}"};
  p.run_cmd = {mjava_binary.string(), "run", "--sourcepath", "{classpath}", "--test-file",
               "{file}", "{test_class}"};
  p.classpath_roots = {"src/main/java", "src/java", "src", "."};
  p.test_framework = "junit4";
  return p;
}

std::vector<std::string> substitute_placeholders(
    const std::vector<std::string>& command_template,
    const std::map<std::string, std::string>& values) {
  std::vector<std::string> out;
  out.reserve(command_template.size());
  for (const auto& element : command_template) {
    std::string rendered = element;
    for (const auto& [key, value] : values) {
      std::string token = "{" + key + "}";
      for (std::size_t at = rendered.find(token); at != std::string::npos;
           at = rendered.find(token, at + value.size())) {
        rendered.replace(at, token.size(), value);
      }
    }
    out.push_back(std::move(rendered));
  }
  return out;
}

std::string build_classpath(const ToolchainProfile& profile,
                            const std::filesystem::path& version_root,
                            const std::vector<std::string>& extra) {
  std::string cp;
  auto append = [&cp](const std::string& entry) {
    if (entry.empty()) return;
    if (!cp.empty()) cp += ':';
    cp += entry;
  };
  bool any_root = false;
  for (const auto& root : profile.classpath_roots) {
    std::filesystem::path p = root == "." ? version_root : version_root / root;
    if (std::filesystem::is_directory(p)) {
      append(p.string());
      any_root = true;
    }
  }
  if (!any_root) append(version_root.string());
  for (const auto& e : extra) append(e);
  return cp;
}

}  // namespace mergeprobe
