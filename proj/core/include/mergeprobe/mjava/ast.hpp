#ifndef MERGEPROBE_MJAVA_AST_HPP_
#define MERGEPROBE_MJAVA_AST_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mergeprobe::mjava {

/// Type name with at most one generic argument (Set<String>). Arrays and
/// nested generics are outside the subset.
struct TypeName {
  std::string name;      // "int", "boolean", "String", "Set", "void", user class
  std::string type_arg;  // element type for Set/HashSet, else empty

  bool is(const char* n) const { return name == n; }
  std::string display() const {
    return type_arg.empty() ? name : name + "<" + type_arg + ">";
  }
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  enum class Kind {
    IntLit,
    StringLit,
    BoolLit,
    NullLit,
    Name,     // local, field of this, or class reference in static calls
    This,
    Field,    // receiver.name
    Call,     // receiver.name(args) or name(args)
    New,      // new TypeName(args)
    Assign,   // lhs = rhs
    Binary,   // lhs op rhs
    Unary,    // op operand (stored in rhs)
  };

  Kind kind;
  int line = 0;

  long long int_value = 0;
  bool bool_value = false;
  std::string str_value;  // decoded string literal
  std::string name;       // identifier / member / operator spelling
  TypeName new_type;

  ExprPtr receiver;  // Field/Call receiver, null for unqualified calls
  ExprPtr lhs;
  ExprPtr rhs;
  std::vector<ExprPtr> args;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Stmt {
  enum class Kind { Block, LocalDecl, ExprStmt, Return, If, While };

  Kind kind;
  int line = 0;

  std::vector<StmtPtr> body;  // Block

  TypeName decl_type;     // LocalDecl
  std::string decl_name;
  ExprPtr init;           // LocalDecl initializer, may be null

  ExprPtr expr;           // ExprStmt / Return value / If / While condition
  StmtPtr then_branch;
  StmtPtr else_branch;
};

struct Param {
  TypeName type;
  std::string name;
};

struct MethodDecl {
  std::vector<std::string> annotations;  // simple names: "Test", "Override"
  bool is_static = false;
  TypeName return_type;
  std::string name;
  std::vector<Param> params;
  std::optional<Stmt> body;  // absent for abstract declarations
  int line = 0;

  bool has_annotation(const char* a) const {
    for (const auto& x : annotations) {
      if (x == a) return true;
    }
    return false;
  }
};

struct CtorDecl {
  std::vector<Param> params;
  Stmt body;
  int line = 0;
};

struct FieldDecl {
  bool is_static = false;
  TypeName type;
  std::string name;
  ExprPtr init;  // may be null
  int line = 0;
};

struct ClassDecl {
  std::string name;
  std::vector<FieldDecl> fields;
  std::vector<CtorDecl> ctors;
  std::vector<MethodDecl> methods;

  const MethodDecl* find_method(const std::string& name, std::size_t arity) const {
    for (const auto& m : methods) {
      if (m.name == name && m.params.size() == arity) return &m;
    }
    return nullptr;
  }
  const FieldDecl* find_field(const std::string& name) const {
    for (const auto& f : fields) {
      if (f.name == name) return &f;
    }
    return nullptr;
  }
};

struct Unit {
  std::string package_name;
  std::vector<std::string> imports;  // dotted names, "a.b.*" allowed
  std::vector<ClassDecl> classes;
  std::string source_name;  // file name for diagnostics
};

}  // namespace mergeprobe::mjava

#endif  // MERGEPROBE_MJAVA_AST_HPP_
