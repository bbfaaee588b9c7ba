#include "mergeprobe/java/structure.hpp"

#include <cctype>

#include "mergeprobe/java/lexer.hpp"

namespace mergeprobe::java {
namespace {

bool is_modifier(const Token& t) {
  if (t.kind != TokKind::Keyword) return false;
  return t.is("public") || t.is("private") || t.is("protected") || t.is("static") ||
         t.is("final") || t.is("abstract") || t.is("synchronized") || t.is("native") ||
         t.is("transient") || t.is("volatile") || t.is("strictfp") || t.is("default") ||
         t.is("sealed");
}

bool is_type_keyword(const Token& t) {
  return t.is_keyword("class") || t.is_keyword("interface") || t.is_keyword("enum") ||
         (t.kind == TokKind::Identifier && t.text == "record");
}

// Net angle-bracket depth change contributed by one operator token.
int angle_delta(const Token& t) {
  if (t.kind != TokKind::Punct) return 0;
  if (t.is("<")) return 1;
  if (t.is(">")) return -1;
  if (t.is(">>")) return -2;
  if (t.is(">>>")) return -3;
  return 0;
}

class StructureParser {
 public:
  explicit StructureParser(std::string_view src) : src_(src), toks_(lex(src)) {}

  CompilationUnit run() {
    CompilationUnit unit;
    parse_header(&unit);
    while (pos_ < toks_.size()) {
      std::size_t mark = pos_;
      skip_annotations_and_modifiers();
      if (pos_ < toks_.size() && is_type_keyword(cur())) {
        unit.types.push_back(parse_type());
      } else if (pos_ < toks_.size() && cur().is(";")) {
        ++pos_;
      } else if (pos_ == mark) {
        fail("expected a type declaration");
      }
    }
    return unit;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    if (pos_ < toks_.size()) throw ParseError(msg, cur().line, cur().column);
    int line = toks_.empty() ? 1 : toks_.back().line;
    throw ParseError(msg + " (at end of file)", line, 1);
  }

  void expect(std::string_view text) {
    if (pos_ >= toks_.size() || !cur().is(text)) {
      fail(std::string("expected '") + std::string(text) + "'");
    }
    ++pos_;
  }

  std::size_t end_offset(std::size_t tok_index) const {
    const Token& t = toks_[tok_index];
    return t.offset + t.text.size();
  }

  std::string slice(std::size_t first_tok, std::size_t last_tok) const {
    std::size_t begin = toks_[first_tok].offset;
    return std::string(src_.substr(begin, end_offset(last_tok) - begin));
  }

  // Member slices are dedented to the declaration's start column so the
  // extracted text is independent of the file's nesting depth.
  std::string member_slice(std::size_t first_tok, std::size_t last_tok) const {
    std::string text = slice(first_tok, last_tok);
    int indent = toks_[first_tok].column - 1;
    if (indent <= 0 || text.find('\n') == std::string::npos) return text;
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    for (;;) {
      std::size_t eol = text.find('\n', i);
      std::size_t end = eol == std::string::npos ? text.size() : eol + 1;
      out.append(text, i, end - i);
      if (eol == std::string::npos) break;
      i = end;
      int stripped = 0;
      while (i < text.size() && stripped < indent &&
             (text[i] == ' ' || text[i] == '\t')) {
        ++i;
        ++stripped;
      }
    }
    return out;
  }

  void parse_header(CompilationUnit* unit) {
    // Annotations may precede the package declaration (package-info files).
    while (pos_ < toks_.size() && cur().is("@") && pos_ + 1 < toks_.size() &&
           !toks_[pos_ + 1].is_keyword("interface")) {
      skip_annotation();
    }
    if (pos_ < toks_.size() && cur().is_keyword("package")) {
      ++pos_;
      std::string name;
      while (pos_ < toks_.size() && !cur().is(";")) {
        name += cur().text;
        ++pos_;
      }
      expect(";");
      unit->package_name = std::move(name);
    }
    while (pos_ < toks_.size() && cur().is_keyword("import")) {
      std::size_t first = pos_;
      while (pos_ < toks_.size() && !cur().is(";")) ++pos_;
      if (pos_ >= toks_.size()) fail("unterminated import declaration");
      unit->imports.push_back(slice(first, pos_));
      ++pos_;
    }
  }

  void skip_annotation() {
    expect("@");
    if (pos_ >= toks_.size() ||
        (cur().kind != TokKind::Identifier && cur().kind != TokKind::Keyword)) {
      fail("expected annotation name");
    }
    ++pos_;
    while (pos_ + 1 < toks_.size() && cur().is(".") &&
           toks_[pos_ + 1].kind == TokKind::Identifier) {
      pos_ += 2;
    }
    if (pos_ < toks_.size() && cur().is("(")) skip_balanced("(", ")");
  }

  void skip_annotations_and_modifiers() {
    for (;;) {
      if (pos_ >= toks_.size()) return;
      if (cur().is("@")) {
        // '@interface' introduces an annotation type, not an annotation use.
        if (pos_ + 1 < toks_.size() && toks_[pos_ + 1].is_keyword("interface")) return;
        skip_annotation();
      } else if (is_modifier(cur())) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  void skip_balanced(std::string_view open, std::string_view close) {
    expect(open);
    int depth = 1;
    while (pos_ < toks_.size() && depth > 0) {
      if (cur().is(open)) ++depth;
      else if (cur().is(close)) --depth;
      ++pos_;
    }
    if (depth != 0) fail(std::string("unbalanced '") + std::string(open) + "'");
  }

  JavaClass parse_type() {
    JavaClass cls;
    if (cur().is("@")) {
      ++pos_;  // '@interface'
      cls.kind = "interface";
    } else {
      cls.kind = std::string(cur().text);
    }
    ++pos_;
    if (pos_ >= toks_.size() || cur().kind != TokKind::Identifier) {
      fail("expected type name");
    }
    cls.name = std::string(cur().text);
    ++pos_;
    // Skip type parameters, record components, extends/implements clauses.
    int paren_depth = 0, angle_depth = 0;
    while (pos_ < toks_.size()) {
      if (paren_depth == 0 && angle_depth == 0 && cur().is("{")) break;
      if (cur().is("(")) ++paren_depth;
      else if (cur().is(")")) --paren_depth;
      else angle_depth += angle_delta(cur());
      ++pos_;
    }
    expect("{");
    if (cls.kind == "enum") skip_enum_constants();
    while (pos_ < toks_.size() && !cur().is("}")) {
      parse_member(&cls);
    }
    expect("}");
    return cls;
  }

  // Enum constants run from the opening brace to ';' or to the closing brace.
  // Constant bodies and argument lists are balanced over.
  void skip_enum_constants() {
    int depth = 0;
    while (pos_ < toks_.size()) {
      if (depth == 0 && cur().is(";")) {
        ++pos_;
        return;
      }
      if (depth == 0 && cur().is("}")) return;
      if (cur().is("(") || cur().is("{")) ++depth;
      else if (cur().is(")") || (cur().is("}") && depth > 0)) --depth;
      ++pos_;
    }
    fail("unterminated enum body");
  }

  void parse_member(JavaClass* cls) {
    std::size_t member_first = pos_;
    skip_annotations_and_modifiers();
    if (pos_ >= toks_.size()) fail("unterminated class body");

    if (cur().is(";")) {
      ++pos_;
      return;
    }
    if (cur().is("{")) {  // instance or static initializer block
      skip_balanced("{", "}");
      return;
    }
    if (is_type_keyword(cur()) ||
        (cur().is("@") && pos_ + 1 < toks_.size() && toks_[pos_ + 1].is_keyword("interface"))) {
      cls->nested.push_back(parse_type());
      return;
    }
    // Generic method type parameters precede the return type.
    if (cur().is("<")) {
      int depth = 0;
      while (pos_ < toks_.size()) {
        depth += angle_delta(cur());
        ++pos_;
        if (depth <= 0) break;
      }
    }

    // Scan ahead for the first top-level '(', '=', or ';' to classify the member.
    std::size_t scan = pos_;
    int angle = 0;
    std::size_t open_paren = toks_.size();
    bool is_field = false;
    while (scan < toks_.size()) {
      const Token& t = toks_[scan];
      if (angle == 0) {
        if (t.is("(")) {
          open_paren = scan;
          break;
        }
        if (t.is("=") || t.is(";")) {
          is_field = true;
          break;
        }
        if (t.is("}")) fail("malformed member declaration");
      }
      angle += angle_delta(t);
      ++scan;
    }
    if (scan >= toks_.size()) fail("unterminated member declaration");

    if (is_field) {
      finish_field(cls, member_first);
      return;
    }

    // Method or constructor: identifier immediately before '(' is the name.
    if (open_paren == 0 || toks_[open_paren - 1].kind != TokKind::Identifier) {
      fail("expected method name before parameter list");
    }
    const Token& name_tok = toks_[open_paren - 1];
    bool is_ctor = open_paren == pos_ + 1 && name_tok.text == cls->name;

    pos_ = open_paren;
    int arity = scan_parameter_arity();
    // throws clause, then either a body or ';' (abstract/interface method).
    while (pos_ < toks_.size() && !cur().is("{") && !cur().is(";")) ++pos_;
    if (pos_ >= toks_.size()) fail("unterminated method declaration");
    bool has_body = cur().is("{");
    if (has_body) {
      skip_balanced("{", "}");
    } else {
      ++pos_;
    }
    std::size_t member_last = pos_ - 1;

    if (is_ctor) {
      cls->constructors.push_back(member_slice(member_first, member_last));
    } else {
      JavaMethod m;
      m.name = std::string(name_tok.text);
      m.arity = arity;
      m.text = member_slice(member_first, member_last);
      m.has_body = has_body;
      cls->methods.push_back(std::move(m));
    }
  }

  // Field declarations end at the first ';' outside any braces (array or
  // anonymous-class initializers are balanced over).
  void finish_field(JavaClass* cls, std::size_t member_first) {
    int depth = 0;
    while (pos_ < toks_.size()) {
      if (depth == 0 && cur().is(";")) {
        cls->fields.push_back(member_slice(member_first, pos_));
        ++pos_;
        return;
      }
      if (cur().is("{") || cur().is("(") || cur().is("[")) ++depth;
      else if (cur().is("}") || cur().is(")") || cur().is("]")) --depth;
      ++pos_;
    }
    fail("unterminated field declaration");
  }

  // pos_ sits on '('. Consumes the parameter list and returns its arity.
  int scan_parameter_arity() {
    expect("(");
    if (pos_ < toks_.size() && cur().is(")")) {
      ++pos_;
      return 0;
    }
    int arity = 1;
    int paren = 0, bracket = 0, brace = 0, angle = 0;
    while (pos_ < toks_.size()) {
      const Token& t = cur();
      if (paren == 0 && bracket == 0 && brace == 0 && angle == 0) {
        if (t.is(")")) {
          ++pos_;
          return arity;
        }
        if (t.is(",")) ++arity;
      }
      if (t.is("(")) ++paren;
      else if (t.is(")")) --paren;
      else if (t.is("[")) ++bracket;
      else if (t.is("]")) --bracket;
      else if (t.is("{")) ++brace;
      else if (t.is("}")) --brace;
      else angle += angle_delta(t);
      ++pos_;
    }
    fail("unterminated parameter list");
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

const JavaClass* find_in(const JavaClass& cls, std::string_view simple) {
  if (cls.name == simple) return &cls;
  for (const auto& n : cls.nested) {
    if (const JavaClass* hit = find_in(n, simple)) return hit;
  }
  return nullptr;
}

}  // namespace

CompilationUnit parse_compilation_unit(std::string_view source) {
  return StructureParser(source).run();
}

const JavaClass* find_class(const CompilationUnit& unit, std::string_view name) {
  std::size_t cut = name.find_last_of(".$");
  std::string_view simple = cut == std::string_view::npos ? name : name.substr(cut + 1);
  for (const auto& t : unit.types) {
    if (const JavaClass* hit = find_in(t, simple)) return hit;
  }
  return nullptr;
}

std::vector<const JavaMethod*> find_methods(const JavaClass& cls, std::string_view name,
                                            int arity) {
  std::vector<const JavaMethod*> hits;
  for (const auto& m : cls.methods) {
    if (m.name == name && (arity < 0 || m.arity == arity)) hits.push_back(&m);
  }
  return hits;
}

void parse_method_signature(std::string_view signature, std::string* name, int* arity) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view sig = trim(signature);
  std::size_t paren = sig.find('(');
  if (paren == std::string_view::npos) {
    *name = std::string(trim(sig));
    *arity = -1;
    return;
  }
  *name = std::string(trim(sig.substr(0, paren)));
  std::size_t close = sig.rfind(')');
  std::string_view params = close != std::string_view::npos && close > paren
                                ? sig.substr(paren + 1, close - paren - 1)
                                : sig.substr(paren + 1);
  params = trim(params);
  if (params.empty()) {
    *arity = 0;
    return;
  }
  int count = 1, depth = 0;
  for (char c : params) {
    if (c == '<' || c == '(' || c == '[') ++depth;
    else if (c == '>' || c == ')' || c == ']') --depth;
    else if (c == ',' && depth == 0) ++count;
  }
  *arity = count;
}

}  // namespace mergeprobe::java
