#include "mergeprobe/prompt.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mergeprobe {
namespace {

constexpr std::string_view kSystemText =
    "You are a senior Java developer with expertise in JUnit testing.\n"
    "Your task is to provide JUnit tests for the given method in the class under test, "
    "considering the changes introduced in the left and right branches.\n"
    "You have to answer with the test code only, inside code blocks (```).\n"
    "The tests should start with @Test.";

constexpr std::string_view kClosingText =
    "Now generate JUnit tests for the method under test, considering the given context. "
    "Remember to create meaningful assertions.\n"
    "Write all tests inside code blocks (```), and start each test with @Test.";

constexpr std::string_view kExampleUser =
    "Here is the context of the method under test in the class Calculator on the left "
    "branch:\n"
    "\n"
    "Class fields:\n"
    "private int memory;\n"
    "\n"
    "Constructors:\n"
    "public Calculator() {\n"
    "  this.memory = 0;\n"
    "}\n"
    "\n"
    "Target Method Under Test:\n"
    "public int add(int a, int b) {\n"
    "  return a + b;\n"
    "}\n"
    "\n"
    "Now generate JUnit tests for the method under test, considering the given context. "
    "Remember to create meaningful assertions.\n"
    "Write all tests inside code blocks (```), and start each test with @Test.";

constexpr std::string_view kExampleAssistant =
    "```java\n"
    "@Test\n"
    "public void testAdd() {\n"
    "  Calculator calc = new Calculator();\n"
    "  assertEquals(5, calc.add(2, 3));\n"
    "}\n"
    "```";

void append_section(std::string* out, std::string_view heading, std::string_view content) {
  *out += heading;
  *out += "\n";
  *out += content;
  *out += "\n\n";
}

}  // namespace

std::string_view role_key(Role role) {
  switch (role) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  return "user";
}

std::string_view format_key(PromptFormat format) {
  return format == PromptFormat::ZeroShot ? "zero_shot" : "one_shot";
}

std::optional<PromptFormat> parse_format_key(std::string_view key) {
  if (key == "zero_shot") return PromptFormat::ZeroShot;
  if (key == "one_shot") return PromptFormat::OneShot;
  return std::nullopt;
}

std::vector<PromptVariant> enumerate_prompt_variants() {
  return {
      {1, false, false, false},
      {2, true, false, false},
      {3, false, true, false},
      {4, false, false, true},
      {5, true, true, false},
      {6, true, false, true},
      {7, false, true, true},
      {8, true, true, true},
  };
}

const OneShotExample& default_one_shot_example() {
  static const OneShotExample example{std::string(kExampleUser),
                                      std::string(kExampleAssistant)};
  return example;
}

OneShotExample load_one_shot_example(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open one-shot example file: " + path.string());
  }
  nlohmann::json doc = nlohmann::json::parse(in);
  OneShotExample example;
  example.user = doc.at("user").get<std::string>();
  example.assistant = doc.at("assistant").get<std::string>();
  if (example.user.empty() || example.assistant.empty()) {
    throw std::runtime_error("one-shot example messages must be non-empty: " + path.string());
  }
  return example;
}

const std::string& system_prompt_text() {
  static const std::string text(kSystemText);
  return text;
}

std::string build_user_message(const CodeContext& ctx, const MergeScenario& scenario,
                               const PromptVariant& variant,
                               std::vector<std::string>* warnings) {
  std::string branch(version_key(ctx.branch));
  std::string out = "Here is the context of the method under test in the class " +
                    ctx.class_name + " on the " + branch + " branch:\n\n";

  if (variant.include_summary) {
    const std::string& summary =
        ctx.branch == VersionId::Right ? scenario.summary_right : scenario.summary_left;
    if (summary.empty()) {
      if (warnings) {
        warnings->push_back("scenario " + scenario.scenario_id + ": no " + branch +
                            " change summary; section omitted from variant " +
                            std::to_string(variant.variant_id));
      }
    } else {
      append_section(&out, "Changes summary (" + branch + "):", summary);
    }
  }
  if (variant.include_fields && !ctx.fields.empty()) {
    std::string joined;
    for (const auto& f : ctx.fields) {
      if (!joined.empty()) joined += "\n";
      joined += f;
    }
    append_section(&out, "Class fields:", joined);
  }
  if (variant.include_constructors && !ctx.constructors.empty()) {
    std::string joined;
    for (const auto& c : ctx.constructors) {
      if (!joined.empty()) joined += "\n\n";
      joined += c;
    }
    append_section(&out, "Constructors:", joined);
  }
  append_section(&out, "Target Method Under Test:", ctx.method_body);

  out += kClosingText;
  return out;
}

Prompt build_prompt(const CodeContext& ctx, const MergeScenario& scenario,
                    const PromptVariant& variant, PromptFormat format,
                    const OneShotExample* example, std::vector<std::string>* warnings) {
  Prompt p;
  p.format = format;
  p.variant = variant;
  p.scenario_id = scenario.scenario_id;
  p.branch = ctx.branch;
  p.messages.push_back({Role::System, system_prompt_text()});
  if (format == PromptFormat::OneShot) {
    const OneShotExample& ex = example ? *example : default_one_shot_example();
    p.messages.push_back({Role::User, ex.user});
    p.messages.push_back({Role::Assistant, ex.assistant});
  }
  p.messages.push_back({Role::User, build_user_message(ctx, scenario, variant, warnings)});
  return p;
}

}  // namespace mergeprobe
