#ifndef MERGEPROBE_PROMPT_HPP_
#define MERGEPROBE_PROMPT_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mergeprobe/context.hpp"
#include "mergeprobe/scenario.hpp"
#include "mergeprobe/version_id.hpp"

namespace mergeprobe {

enum class Role { System, User, Assistant };

std::string_view role_key(Role role);  // "system" / "user" / "assistant"

struct Message {
  Role role;
  std::string content;  // non-empty

  bool operator==(const Message&) const = default;
};

enum class PromptFormat { ZeroShot, OneShot };

std::string_view format_key(PromptFormat format);  // "zero_shot" / "one_shot"
std::optional<PromptFormat> parse_format_key(std::string_view key);

/// One of the eight context subsets. The target method body is always
/// included; the three flags toggle the optional sections.
struct PromptVariant {
  int variant_id = 1;  // 1..8
  bool include_summary = false;
  bool include_fields = false;
  bool include_constructors = false;

  bool operator==(const PromptVariant&) const = default;
};

/// The eight variants in fixed order: 1 = body only, 2 = +summary,
/// 3 = +fields, 4 = +constructors, 5..7 = the two-section subsets,
/// 8 = everything.
std::vector<PromptVariant> enumerate_prompt_variants();

struct Prompt {
  std::vector<Message> messages;
  PromptFormat format = PromptFormat::ZeroShot;
  PromptVariant variant;
  std::string scenario_id;
  VersionId branch = VersionId::Left;

  bool operator==(const Prompt&) const = default;
};

/// The worked example inserted before the real request in one-shot prompts.
struct OneShotExample {
  std::string user;
  std::string assistant;
};

/// Built-in example: a fictitious Calculator.add method with one passing
/// test. Identical to the bundled data file.
const OneShotExample& default_one_shot_example();

/// Loads a {"user": ..., "assistant": ...} example file.
OneShotExample load_one_shot_example(const std::filesystem::path& path);

/// The fixed system message shared by every prompt.
const std::string& system_prompt_text();

/// Renders the user message for one context subset. Sections appear in the
/// order summary, fields, constructors, method body, each under its fixed
/// heading; disabled sections leave no trace. An enabled summary section is
/// dropped with a warning when the scenario carries no summary text.
std::string build_user_message(const CodeContext& ctx, const MergeScenario& scenario,
                               const PromptVariant& variant,
                               std::vector<std::string>* warnings = nullptr);

/// Assembles the full message sequence: [system, user] for zero-shot,
/// [system, user(example), assistant(example), user] for one-shot.
/// `example` defaults to default_one_shot_example().
Prompt build_prompt(const CodeContext& ctx, const MergeScenario& scenario,
                    const PromptVariant& variant, PromptFormat format,
                    const OneShotExample* example = nullptr,
                    std::vector<std::string>* warnings = nullptr);

}  // namespace mergeprobe

#endif  // MERGEPROBE_PROMPT_HPP_
