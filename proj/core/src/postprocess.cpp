#include "mergeprobe/postprocess.hpp"

#include <sstream>

#include "mergeprobe/java/lexer.hpp"
#include "mergeprobe/java/structure.hpp"

namespace mergeprobe {
namespace {

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(std::move(current));
      current.clear();
    } else if (c == '\r') {
      lines.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) lines.push_back(std::move(current));
  return lines;
}

bool is_fence_line(std::string_view line) { return trim_view(line).substr(0, 3) == "```"; }

// A non-blank line counts as code when it carries structural punctuation or
// starts like a declaration or comment; bare prose sentences carry neither.
bool looks_like_code(std::string_view line) {
  std::string_view t = trim_view(line);
  if (t.empty()) return true;  // blanks are layout, kept until normalization
  if (t.substr(0, 2) == "//" || t.substr(0, 2) == "/*" || t.substr(0, 2) == "*/") return true;
  if (t.substr(0, 1) == "*") return true;
  if (t.substr(0, 7) == "import " || t.substr(0, 8) == "package ") return true;
  for (char c : t) {
    if (c == '{' || c == '}' || c == ';' || c == '=' || c == '(' || c == ')' ||
        c == '@' || c == '[' || c == ']' || c == '"') {
      return true;
    }
  }
  return false;
}

// Keep-or-drop filter applied to every candidate line, fenced or not. Every
// decision is stable under re-application, which makes clean_response
// idempotent by construction.
void filter_into(const std::vector<std::string>& lines, std::vector<std::string>* out) {
  for (const auto& raw : lines) {
    std::string line = raw;
    // Stray fence tokens inside a line are markup, never code.
    for (std::size_t at = line.find("```"); at != std::string::npos;
         at = line.find("```")) {
      line.erase(at, 3);
    }
    std::string_view t = trim_view(line);
    if (t.empty()) {
      out->push_back("");
      continue;
    }
    if (!looks_like_code(line)) continue;
    if (!java::try_lex(t, nullptr)) continue;
    out->push_back(line);
  }
}

std::string join_normalized(const std::vector<std::string>& lines) {
  std::string out;
  bool pending_blank = false;
  bool any = false;
  for (const auto& raw : lines) {
    std::string line = raw;
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (trim_view(line).empty()) {
      pending_blank = any;  // leading blanks vanish, interior runs collapse
      continue;
    }
    if (any) out += pending_blank ? "\n\n" : "\n";
    out += line;
    any = true;
    pending_blank = false;
  }
  return out;
}

// True when the member's annotation list names @Test. The scan stops at the
// body's opening brace so @Test occurrences inside the body never count.
bool has_test_annotation(const std::string& member_text, std::size_t* at,
                         std::size_t* length) {
  std::vector<java::Token> toks;
  if (!java::try_lex(member_text, &toks)) return false;
  int paren_depth = 0;
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (toks[i].is("(")) ++paren_depth;
    else if (toks[i].is(")")) --paren_depth;
    else if (toks[i].is("{") && paren_depth == 0) break;
    if (!toks[i].is("@")) continue;
    const auto& name = toks[i + 1];
    if (name.kind == java::TokKind::Identifier && name.text == "Test") {
      // Annotation arguments, e.g. @Test(timeout = 1000), belong to the span.
      std::size_t end = name.offset + name.text.size();
      if (i + 2 < toks.size() && toks[i + 2].is("(")) {
        int depth = 0;
        for (std::size_t j = i + 2; j < toks.size(); ++j) {
          if (toks[j].is("(")) ++depth;
          else if (toks[j].is(")")) --depth;
          if (depth == 0) {
            end = toks[j].offset + toks[j].text.size();
            break;
          }
        }
      }
      *at = toks[i].offset;
      *length = end - toks[i].offset;
      return true;
    }
  }
  return false;
}

// Normalizes a member slice so it begins with its @Test annotation.
std::string front_load_test_annotation(const std::string& member_text) {
  std::size_t at = 0, len = 0;
  if (!has_test_annotation(member_text, &at, &len)) return member_text;
  if (at == 0) return member_text;
  std::string annotation = member_text.substr(at, len);
  std::string rest = member_text.substr(0, at) + member_text.substr(at + len);
  std::size_t keep = rest.find_first_not_of(" \t\n");
  return annotation + "\n" + (keep == std::string::npos ? "" : rest.substr(keep));
}

void collect_methods(const java::JavaClass& cls, std::vector<const java::JavaMethod*>* out) {
  for (const auto& m : cls.methods) out->push_back(&m);
  for (const auto& n : cls.nested) collect_methods(n, out);
}

// True iff the text parses; a successful parse may still yield no methods.
bool parse_methods(const std::string& text, std::vector<java::JavaMethod>* methods) {
  java::CompilationUnit unit;
  try {
    unit = java::parse_compilation_unit(text);
  } catch (const java::ParseError&) {
    return false;
  } catch (const java::LexError&) {
    return false;
  }
  std::vector<const java::JavaMethod*> found;
  for (const auto& t : unit.types) collect_methods(t, &found);
  for (const auto* m : found) methods->push_back(*m);
  return true;
}

std::string indent_block(const std::string& text, const std::string& pad) {
  std::string out;
  for (const auto& line : split_lines(text)) {
    if (!line.empty()) out += pad;
    out += line;
    out += "\n";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

// Renames the declaration site: the first `old_name(` identifier token.
std::string rename_method_declaration(const std::string& source, const std::string& old_name,
                                      const std::string& new_name) {
  std::vector<java::Token> toks;
  if (!java::try_lex(source, &toks)) return source;
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (toks[i].kind == java::TokKind::Identifier && toks[i].text == old_name &&
        toks[i + 1].is("(")) {
      std::string out = source;
      out.replace(toks[i].offset, old_name.size(), new_name);
      return out;
    }
  }
  return source;
}

}  // namespace

std::string clean_response(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);

  bool has_fence = false;
  for (const auto& line : lines) {
    if (is_fence_line(line)) {
      has_fence = true;
      break;
    }
  }

  std::vector<std::string> candidates;
  if (has_fence) {
    bool inside = false;
    for (const auto& line : lines) {
      if (is_fence_line(line)) {
        if (inside) candidates.push_back("");  // block boundary becomes one blank line
        inside = !inside;
        continue;
      }
      if (inside) candidates.push_back(line);
    }
  } else {
    candidates = std::move(lines);
  }

  std::vector<std::string> kept;
  filter_into(candidates, &kept);
  return join_normalized(kept);
}

ExtractedTests extract_test_methods(const std::string& cleaned, const TestOrigin& origin) {
  ExtractedTests result;
  if (cleaned.empty()) return result;

  std::vector<java::JavaMethod> methods;
  if (!parse_methods(cleaned, &methods)) {
    methods.clear();
    std::string wrapped = "class __ResponseShell {\n" + cleaned + "\n}";
    if (!parse_methods(wrapped, &methods)) {
      result.parse_failed = true;
      return result;
    }
  }

  std::vector<std::string> helpers;
  std::vector<std::pair<std::string, std::string>> annotated;  // (source, name)
  for (const auto& m : methods) {
    std::size_t at = 0, len = 0;
    if (has_test_annotation(m.text, &at, &len)) {
      annotated.emplace_back(front_load_test_annotation(m.text), m.name);
    } else {
      helpers.push_back(m.text);
    }
  }

  for (std::size_t i = 0; i < annotated.size(); ++i) {
    TestMethod tm;
    tm.source_text = annotated[i].first;
    tm.method_name = annotated[i].second;
    tm.helpers = helpers;
    tm.origin = origin;
    tm.origin.method_index = static_cast<int>(i);
    result.tests.push_back(std::move(tm));
  }
  return result;
}

TestArtifact assemble_test_file(const TestMethod& tm, const CodeContext& ctx,
                                const std::string& test_package,
                                std::set<std::string>* used_method_names) {
  std::ostringstream name;
  name << ctx.class_name << "Test_" << version_key(tm.origin.branch) << "_prompt"
       << tm.origin.variant_id << "_" << tm.origin.method_index << "_"
       << tm.origin.response_index;
  std::string class_name = name.str();
  std::string file_name = class_name + ".java";

  TestMethod method = tm;
  if (used_method_names) {
    std::string unique = method.method_name;
    int suffix = 0;
    while (!used_method_names->insert(unique).second) {
      unique = method.method_name + "_" + std::to_string(++suffix);
    }
    if (unique != method.method_name) {
      method.source_text =
          rename_method_declaration(method.source_text, method.method_name, unique);
      method.method_name = unique;
    }
  }

  std::vector<std::string> imports = ctx.imports;
  auto add_import = [&imports](const std::string& decl) {
    for (const auto& existing : imports) {
      if (existing == decl) return;
    }
    imports.push_back(decl);
  };
  if (!ctx.package_name.empty()) {
    add_import("import " + ctx.package_name + "." + ctx.class_name + ";");
  }
  add_import("import org.junit.Test;");
  add_import("import static org.junit.Assert.*;");

  std::ostringstream text;
  text << "package " << test_package << ";\n\n";
  for (const auto& imp : imports) text << imp << "\n";
  text << "\npublic class " << class_name << " {\n\n";
  text << indent_block(method.source_text, "  ") << "\n";
  for (const auto& helper : method.helpers) {
    text << "\n" << indent_block(helper, "  ") << "\n";
  }
  text << "}\n";

  TestArtifact artifact;
  artifact.file_name = std::move(file_name);
  artifact.file_text = text.str();
  artifact.test_method = std::move(method);

  try {
    java::parse_compilation_unit(artifact.file_text);
  } catch (const std::exception& e) {
    throw std::logic_error("assembled test file does not re-parse (" + artifact.file_name +
                           "): " + e.what());
  }
  return artifact;
}

}  // namespace mergeprobe
