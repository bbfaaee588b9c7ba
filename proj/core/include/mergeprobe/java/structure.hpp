#ifndef MERGEPROBE_JAVA_STRUCTURE_HPP_
#define MERGEPROBE_JAVA_STRUCTURE_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mergeprobe::java {

struct JavaMethod {
  std::string name;
  int arity = 0;
  // Member slice, annotations through closing brace, dedented to the
  // declaration's start column.
  std::string text;
  bool has_body = false;
};

struct JavaClass {
  std::string name;
  std::string kind;  // "class", "interface", "enum", "record"
  std::vector<std::string> fields;        // verbatim declarations incl. ';'
  std::vector<std::string> constructors;  // verbatim source snippets
  std::vector<JavaMethod> methods;
  std::vector<JavaClass> nested;
};

struct CompilationUnit {
  std::string package_name;           // empty when the file has no package
  std::vector<std::string> imports;   // verbatim "import a.b.C;" lines
  std::vector<JavaClass> types;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg), line(line_), column(column_) {}
  int line;
  int column;
};

/// Structural scan of a Java source file. Member declarations are kept as
/// source slices (dedented to their declaration column); bodies are
/// balanced but not interpreted.
/// Throws ParseError (or LexError) when the file cannot be scanned.
CompilationUnit parse_compilation_unit(std::string_view source);

/// Depth-first search, declaration order, for a type whose simple name equals
/// the last '.'/'$'-separated segment of `name`. Null when absent.
const JavaClass* find_class(const CompilationUnit& unit, std::string_view name);

/// All methods of `cls` matching `name` with the given arity, declaration
/// order. arity < 0 matches any parameter count.
std::vector<const JavaMethod*> find_methods(const JavaClass& cls, std::string_view name,
                                            int arity);

/// Splits a method signature string like "cleanText()" or "add(int, int)"
/// into a name and an arity; a bare name yields arity -1 (unconstrained).
void parse_method_signature(std::string_view signature, std::string* name, int* arity);

}  // namespace mergeprobe::java

#endif  // MERGEPROBE_JAVA_STRUCTURE_HPP_
