#include "mergeprobe/mjava/interp.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "mergeprobe/mjava/parser.hpp"

namespace mergeprobe::mjava {
namespace {

std::string package_to_path(const std::string& package_name) {
  std::string path = package_name;
  for (char& c : path) {
    if (c == '.') c = '/';
  }
  return path;
}

bool read_file(const std::filesystem::path& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

}  // namespace

Workspace::Workspace(std::vector<std::filesystem::path> source_roots)
    : roots_(std::move(source_roots)) {}

bool Workspace::is_builtin_class(const std::string& simple_name) {
  return simple_name == "String" || simple_name == "Set" ||
         simple_name == "HashSet" || simple_name == "Assert" ||
         simple_name == "Object";
}

bool Workspace::is_builtin_import(const std::string& import_path) {
  auto has_prefix = [&](const char* prefix) {
    return import_path.rfind(prefix, 0) == 0;
  };
  return has_prefix("java.lang") || has_prefix("org.junit") ||
         import_path == "java.util.Set" || import_path == "java.util.HashSet" ||
         import_path == "java.util.*";
}

const Unit* Workspace::add_unit(std::string_view source,
                                const std::string& source_name) {
  auto unit = std::make_unique<Unit>(parse_unit(source, source_name));
  const Unit* raw = unit.get();
  by_key_.emplace("<direct>/" + source_name, std::move(unit));
  order_.push_back(raw);
  return raw;
}

const Unit* Workspace::load_from_package(const std::string& package_name,
                                         const std::string& simple_name) {
  std::string key = package_name + "/" + simple_name;
  if (auto it = by_key_.find(key); it != by_key_.end()) return it->second.get();
  if (auto it = failed_.find(key); it != failed_.end()) return it->second;

  std::string rel = package_to_path(package_name);
  for (const auto& root : roots_) {
    std::filesystem::path candidate =
        rel.empty() ? root / (simple_name + ".java")
                    : root / rel / (simple_name + ".java");
    std::string text;
    if (!read_file(candidate, text)) continue;
    try {
      auto unit = std::make_unique<Unit>(parse_unit(text, candidate.string()));
      const Unit* raw = unit.get();
      by_key_.emplace(std::move(key), std::move(unit));
      order_.push_back(raw);
      return raw;
    } catch (const SubsetError& e) {
      diagnostics_.push_back(e.what());
      failed_.emplace(std::move(key), nullptr);
      return nullptr;
    }
  }
  failed_.emplace(std::move(key), nullptr);
  return nullptr;
}

const ClassDecl* Workspace::resolve_class(const std::string& simple_name,
                                          const Unit& from) {
  for (const auto& cls : from.classes) {
    if (cls.name == simple_name) return &cls;
  }
  for (const auto& imp : from.imports) {
    if (imp.size() <= simple_name.size() + 1) continue;
    if (imp.compare(imp.size() - simple_name.size(), simple_name.size(),
                    simple_name) != 0 ||
        imp[imp.size() - simple_name.size() - 1] != '.') {
      continue;
    }
    if (is_builtin_import(imp)) continue;
    std::string pkg = imp.substr(0, imp.size() - simple_name.size() - 1);
    if (const Unit* unit = load_from_package(pkg, simple_name)) {
      for (const auto& cls : unit->classes) {
        if (cls.name == simple_name) return &cls;
      }
    }
    return nullptr;  // import named the class but no file provided it
  }
  if (const Unit* unit = load_from_package(from.package_name, simple_name)) {
    for (const auto& cls : unit->classes) {
      if (cls.name == simple_name) return &cls;
    }
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Static checking
// ---------------------------------------------------------------------------

namespace {

struct CT {
  enum class K { Void, Int, Bool, Str, Set, Obj, Null, ClassRef, Unknown };
  K k = K::Unknown;
  const ClassDecl* cls = nullptr;  // Obj and user ClassRef
  std::string builtin;             // builtin ClassRef name

  static CT of(K k) { return CT{k, nullptr, {}}; }
  static CT object(const ClassDecl* c) { return CT{K::Obj, c, {}}; }
  bool unknown() const { return k == K::Unknown; }
};

const char* ct_name(const CT& t) {
  switch (t.k) {
    case CT::K::Void: return "void";
    case CT::K::Int: return "int";
    case CT::K::Bool: return "boolean";
    case CT::K::Str: return "String";
    case CT::K::Set: return "Set";
    case CT::K::Obj: return t.cls ? t.cls->name.c_str() : "object";
    case CT::K::Null: return "null";
    case CT::K::ClassRef: return "class";
    case CT::K::Unknown: return "?";
  }
  return "?";
}

class Checker {
 public:
  Checker(Workspace& ws, std::vector<std::string>& diags)
      : ws_(ws), diags_(diags) {}

  void check_unit(const Unit& unit) {
    unit_ = &unit;
    for (const auto& imp : unit.imports) {
      if (Workspace::is_builtin_import(imp)) continue;
      if (imp.size() > 2 && imp.compare(imp.size() - 2, 2, ".*") == 0) {
        diag(0, "unsupported wildcard import '" + imp + "'");
        continue;
      }
      auto dot = imp.rfind('.');
      std::string pkg = dot == std::string::npos ? "" : imp.substr(0, dot);
      std::string simple = dot == std::string::npos ? imp : imp.substr(dot + 1);
      bool found = false;
      if (const Unit* u = ws_.load_from_package(pkg, simple)) {
        for (const auto& cls : u->classes) {
          if (cls.name == simple) found = true;
        }
      }
      if (!found) diag(0, "cannot resolve import '" + imp + "'");
    }
    for (const auto& cls : unit.classes) check_class(cls);
  }

 private:
  void diag(int line, const std::string& message) {
    std::string where = unit_ ? unit_->source_name : std::string("<input>");
    if (line > 0) where += ":" + std::to_string(line);
    diags_.push_back(where + ": error: " + message);
  }

  CT named_type(const TypeName& type, int line) {
    if (type.is("void")) return CT::of(CT::K::Void);
    if (type.is("int") || type.is("long")) return CT::of(CT::K::Int);
    if (type.is("boolean")) return CT::of(CT::K::Bool);
    if (type.is("String")) return CT::of(CT::K::Str);
    if (type.is("Set") || type.is("HashSet")) return CT::of(CT::K::Set);
    if (type.is("Object")) return CT::of(CT::K::Unknown);
    if (const ClassDecl* cls = ws_.resolve_class(type.name, *unit_)) {
      return CT::object(cls);
    }
    diag(line, "cannot resolve class '" + type.name + "'");
    return CT::of(CT::K::Unknown);
  }

  static bool assignable(const CT& to, const CT& from) {
    if (to.unknown() || from.unknown()) return true;
    if (from.k == CT::K::Null) {
      return to.k == CT::K::Str || to.k == CT::K::Set || to.k == CT::K::Obj;
    }
    if (to.k != from.k) return false;
    if (to.k == CT::K::Obj) return to.cls == from.cls;
    return true;
  }

  void check_class(const ClassDecl& cls) {
    cls_ = &cls;
    for (const auto& f : cls.fields) {
      CT declared = named_type(f.type, f.line);
      if (f.init) {
        in_static_ = f.is_static;
        CT init = check_expr(*f.init);
        if (!assignable(declared, init)) {
          diag(f.line, "cannot assign " + std::string(ct_name(init)) +
                           " to field '" + f.name + "' of type " +
                           ct_name(declared));
        }
      }
    }
    for (const auto& ctor : cls.ctors) {
      in_static_ = false;
      return_type_ = CT::of(CT::K::Void);
      scopes_.clear();
      push_scope();
      declare_params(ctor.params, ctor.line);
      check_stmt(ctor.body);
      pop_scope();
    }
    for (const auto& m : cls.methods) {
      in_static_ = m.is_static;
      return_type_ = named_type(m.return_type, m.line);
      scopes_.clear();
      push_scope();
      declare_params(m.params, m.line);
      if (m.body) check_stmt(*m.body);
      pop_scope();
    }
  }

  void declare_params(const std::vector<Param>& params, int line) {
    for (const auto& p : params) {
      declare(p.name, named_type(p.type, line), line);
    }
  }

  void push_scope() { scopes_.emplace_back(); }
  void pop_scope() { scopes_.pop_back(); }

  void declare(const std::string& name, CT type, int line) {
    for (const auto& scope : scopes_) {
      if (scope.count(name)) {
        diag(line, "variable '" + name + "' is already defined");
        break;
      }
    }
    scopes_.back()[name] = std::move(type);
  }

  const CT* lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (auto f = it->find(name); f != it->end()) return &f->second;
    }
    return nullptr;
  }

  void check_stmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Block:
        push_scope();
        for (const auto& child : s.body) check_stmt(*child);
        pop_scope();
        return;
      case Stmt::Kind::LocalDecl: {
        CT declared = named_type(s.decl_type, s.line);
        if (declared.k == CT::K::Void) {
          diag(s.line, "variable '" + s.decl_name + "' cannot have type void");
          declared = CT::of(CT::K::Unknown);
        }
        if (s.init) {
          CT init = check_expr(*s.init);
          if (!assignable(declared, init)) {
            diag(s.line, "cannot assign " + std::string(ct_name(init)) +
                             " to '" + s.decl_name + "' of type " +
                             ct_name(declared));
          }
        }
        declare(s.decl_name, std::move(declared), s.line);
        return;
      }
      case Stmt::Kind::ExprStmt:
        check_expr(*s.expr);
        return;
      case Stmt::Kind::Return: {
        if (!s.expr) {
          if (return_type_.k != CT::K::Void && !return_type_.unknown()) {
            diag(s.line, "missing return value");
          }
          return;
        }
        CT value = check_expr(*s.expr);
        if (return_type_.k == CT::K::Void) {
          diag(s.line, "cannot return a value from a void method");
        } else if (!assignable(return_type_, value)) {
          diag(s.line, std::string("incompatible return type ") +
                           ct_name(value) + ", expected " +
                           ct_name(return_type_));
        }
        return;
      }
      case Stmt::Kind::If:
      case Stmt::Kind::While: {
        CT cond = check_expr(*s.expr);
        if (cond.k != CT::K::Bool && !cond.unknown()) {
          diag(s.line, "condition must be boolean");
        }
        check_stmt(*s.then_branch);
        if (s.else_branch) check_stmt(*s.else_branch);
        return;
      }
    }
  }

  CT check_expr(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::IntLit: return CT::of(CT::K::Int);
      case Expr::Kind::StringLit: return CT::of(CT::K::Str);
      case Expr::Kind::BoolLit: return CT::of(CT::K::Bool);
      case Expr::Kind::NullLit: return CT::of(CT::K::Null);
      case Expr::Kind::This:
        if (in_static_) diag(e.line, "'this' used in a static context");
        return CT::object(cls_);
      case Expr::Kind::Name: return check_name(e);
      case Expr::Kind::Field: return check_field(e);
      case Expr::Kind::Call: return check_call(e);
      case Expr::Kind::New: return check_new(e);
      case Expr::Kind::Assign: {
        CT target = check_expr(*e.lhs);
        CT value = check_expr(*e.rhs);
        if (!assignable(target, value)) {
          diag(e.line, std::string("cannot assign ") + ct_name(value) +
                           " to " + ct_name(target));
        }
        return target;
      }
      case Expr::Kind::Binary: return check_binary(e);
      case Expr::Kind::Unary: {
        CT operand = check_expr(*e.rhs);
        if (e.name == "!") {
          if (operand.k != CT::K::Bool && !operand.unknown()) {
            diag(e.line, "operator ! expects boolean");
          }
          return CT::of(CT::K::Bool);
        }
        if (operand.k != CT::K::Int && !operand.unknown()) {
          diag(e.line, "operator - expects int");
        }
        return CT::of(CT::K::Int);
      }
    }
    return CT::of(CT::K::Unknown);
  }

  CT check_name(const Expr& e) {
    if (const CT* local = lookup(e.name)) return *local;
    if (const FieldDecl* f = cls_->find_field(e.name)) {
      if (in_static_ && !f->is_static) {
        diag(e.line, "instance field '" + e.name +
                         "' referenced from a static context");
      }
      return named_type(f->type, e.line);
    }
    if (Workspace::is_builtin_class(e.name)) {
      CT t = CT::of(CT::K::ClassRef);
      t.builtin = e.name;
      return t;
    }
    if (const ClassDecl* cls = ws_.resolve_class(e.name, *unit_)) {
      CT t = CT::of(CT::K::ClassRef);
      t.cls = cls;
      return t;
    }
    diag(e.line, "cannot resolve symbol '" + e.name + "'");
    return CT::of(CT::K::Unknown);
  }

  CT check_field(const Expr& e) {
    CT recv = check_expr(*e.receiver);
    if (recv.unknown()) return CT::of(CT::K::Unknown);
    if (recv.k == CT::K::Obj) {
      if (const FieldDecl* f = recv.cls->find_field(e.name)) {
        return named_type(f->type, e.line);
      }
      diag(e.line,
           "class " + recv.cls->name + " has no field '" + e.name + "'");
      return CT::of(CT::K::Unknown);
    }
    if (recv.k == CT::K::ClassRef && recv.cls) {
      if (const FieldDecl* f = recv.cls->find_field(e.name)) {
        if (!f->is_static) {
          diag(e.line, "instance field '" + e.name +
                           "' referenced from a static context");
        }
        return named_type(f->type, e.line);
      }
      diag(e.line,
           "class " + recv.cls->name + " has no field '" + e.name + "'");
      return CT::of(CT::K::Unknown);
    }
    diag(e.line, std::string(ct_name(recv)) + " has no field '" + e.name + "'");
    return CT::of(CT::K::Unknown);
  }

  bool is_assert_name(const std::string& name) const {
    return name == "assertEquals" || name == "assertTrue" ||
           name == "assertFalse" || name == "assertNull" ||
           name == "assertNotNull" || name == "assertSame" ||
           name == "assertNotSame" || name == "fail" ||
           name == "assertNotEquals";
  }

  CT check_assert_call(const Expr& e) {
    std::vector<CT> args;
    args.reserve(e.args.size());
    for (const auto& a : e.args) args.push_back(check_expr(*a));
    const std::string& n = e.name;
    auto arity_error = [&]() {
      diag(e.line, "wrong number of arguments to " + n);
      return CT::of(CT::K::Void);
    };
    if (n == "fail") {
      if (args.size() > 1) return arity_error();
      return CT::of(CT::K::Void);
    }
    if (n == "assertTrue" || n == "assertFalse") {
      std::size_t cond = args.size() - 1;
      if (args.size() != 1 && args.size() != 2) return arity_error();
      if (args.size() == 2 && args[0].k != CT::K::Str && !args[0].unknown()) {
        diag(e.line, n + " message must be a String");
      }
      if (args[cond].k != CT::K::Bool && !args[cond].unknown()) {
        diag(e.line, n + " expects a boolean condition");
      }
      return CT::of(CT::K::Void);
    }
    if (n == "assertNull" || n == "assertNotNull") {
      if (args.size() != 1 && args.size() != 2) return arity_error();
      return CT::of(CT::K::Void);
    }
    // assertEquals / assertNotEquals / assertSame / assertNotSame
    if (args.size() != 2 && args.size() != 3) return arity_error();
    std::size_t first = args.size() == 3 ? 1 : 0;
    if (args.size() == 3 && args[0].k != CT::K::Str && !args[0].unknown()) {
      diag(e.line, n + " message must be a String");
    }
    const CT& a = args[first];
    const CT& b = args[first + 1];
    bool comparable = a.unknown() || b.unknown() || a.k == CT::K::Null ||
                      b.k == CT::K::Null || a.k == b.k;
    if (!comparable) {
      diag(e.line, std::string("incomparable arguments to ") + n + ": " +
                       ct_name(a) + " and " + ct_name(b));
    }
    return CT::of(CT::K::Void);
  }

  CT check_method_on(const ClassDecl& cls, const Expr& e, bool want_static) {
    if (const MethodDecl* m = cls.find_method(e.name, e.args.size())) {
      for (const auto& a : e.args) check_expr(*a);
      if (want_static && !m->is_static) {
        diag(e.line, "non-static method '" + e.name +
                         "' referenced from a static context");
      }
      return named_type(m->return_type, e.line);
    }
    for (const auto& a : e.args) check_expr(*a);
    diag(e.line, "class " + cls.name + " has no method '" + e.name + "' with " +
                     std::to_string(e.args.size()) + " argument(s)");
    return CT::of(CT::K::Unknown);
  }

  CT check_string_method(const Expr& e) {
    struct Sig {
      const char* name;
      std::size_t arity;
      CT::K result;
    };
    static const Sig kSigs[] = {
        {"replaceAll", 2, CT::K::Str},  {"replace", 2, CT::K::Str},
        {"equals", 1, CT::K::Bool},     {"equalsIgnoreCase", 1, CT::K::Bool},
        {"length", 0, CT::K::Int},      {"isEmpty", 0, CT::K::Bool},
        {"contains", 1, CT::K::Bool},   {"trim", 0, CT::K::Str},
        {"strip", 0, CT::K::Str},       {"toLowerCase", 0, CT::K::Str},
        {"toUpperCase", 0, CT::K::Str}, {"startsWith", 1, CT::K::Bool},
        {"endsWith", 1, CT::K::Bool},   {"indexOf", 1, CT::K::Int},
        {"substring", 1, CT::K::Str},   {"substring", 2, CT::K::Str},
        {"concat", 1, CT::K::Str},      {"hashCode", 0, CT::K::Int},
        {"toString", 0, CT::K::Str},
    };
    for (const auto& a : e.args) check_expr(*a);
    for (const auto& sig : kSigs) {
      if (e.name == sig.name && e.args.size() == sig.arity) {
        return CT::of(sig.result);
      }
    }
    diag(e.line, "String has no method '" + e.name + "' with " +
                     std::to_string(e.args.size()) + " argument(s)");
    return CT::of(CT::K::Unknown);
  }

  CT check_set_method(const Expr& e) {
    struct Sig {
      const char* name;
      std::size_t arity;
      CT::K result;
    };
    static const Sig kSigs[] = {
        {"add", 1, CT::K::Bool},    {"remove", 1, CT::K::Bool},
        {"contains", 1, CT::K::Bool}, {"size", 0, CT::K::Int},
        {"isEmpty", 0, CT::K::Bool}, {"clear", 0, CT::K::Void},
        {"addAll", 1, CT::K::Bool}, {"toString", 0, CT::K::Str},
    };
    for (const auto& a : e.args) check_expr(*a);
    for (const auto& sig : kSigs) {
      if (e.name == sig.name && e.args.size() == sig.arity) {
        return CT::of(sig.result);
      }
    }
    diag(e.line, "Set has no method '" + e.name + "' with " +
                     std::to_string(e.args.size()) + " argument(s)");
    return CT::of(CT::K::Unknown);
  }

  CT check_call(const Expr& e) {
    if (!e.receiver) {
      if (is_assert_name(e.name)) return check_assert_call(e);
      if (cls_->find_method(e.name, e.args.size())) {
        const MethodDecl* m = cls_->find_method(e.name, e.args.size());
        for (const auto& a : e.args) check_expr(*a);
        if (in_static_ && !m->is_static) {
          diag(e.line, "non-static method '" + e.name +
                           "' referenced from a static context");
        }
        return named_type(m->return_type, e.line);
      }
      for (const auto& a : e.args) check_expr(*a);
      diag(e.line, "cannot resolve method '" + e.name + "' with " +
                       std::to_string(e.args.size()) + " argument(s)");
      return CT::of(CT::K::Unknown);
    }
    CT recv = check_expr(*e.receiver);
    if (recv.unknown()) {
      for (const auto& a : e.args) check_expr(*a);
      return CT::of(CT::K::Unknown);
    }
    switch (recv.k) {
      case CT::K::Str: return check_string_method(e);
      case CT::K::Set: return check_set_method(e);
      case CT::K::Obj: return check_method_on(*recv.cls, e, false);
      case CT::K::ClassRef:
        if (recv.cls) return check_method_on(*recv.cls, e, true);
        if (recv.builtin == "Assert" && is_assert_name(e.name)) {
          return check_assert_call(e);
        }
        diag(e.line, "cannot resolve static method '" + recv.builtin + "." +
                         e.name + "'");
        for (const auto& a : e.args) check_expr(*a);
        return CT::of(CT::K::Unknown);
      default:
        for (const auto& a : e.args) check_expr(*a);
        diag(e.line, std::string(ct_name(recv)) + " has no method '" + e.name +
                         "'");
        return CT::of(CT::K::Unknown);
    }
  }

  CT check_new(const Expr& e) {
    std::vector<CT> args;
    for (const auto& a : e.args) args.push_back(check_expr(*a));
    const std::string& name = e.new_type.name;
    if (name == "HashSet") {
      if (!args.empty() &&
          !(args.size() == 1 && (args[0].k == CT::K::Int ||
                                 args[0].k == CT::K::Set || args[0].unknown()))) {
        diag(e.line, "unsupported HashSet constructor");
      }
      return CT::of(CT::K::Set);
    }
    if (name == "String") {
      if (args.size() > 1 ||
          (args.size() == 1 && args[0].k != CT::K::Str && !args[0].unknown())) {
        diag(e.line, "unsupported String constructor");
      }
      return CT::of(CT::K::Str);
    }
    if (name == "Set") {
      diag(e.line, "cannot instantiate interface Set");
      return CT::of(CT::K::Set);
    }
    const ClassDecl* cls = ws_.resolve_class(name, *unit_);
    if (!cls) {
      diag(e.line, "cannot resolve class '" + name + "'");
      return CT::of(CT::K::Unknown);
    }
    if (cls->ctors.empty()) {
      if (!args.empty()) {
        diag(e.line, "class " + name + " has no constructor with " +
                         std::to_string(args.size()) + " argument(s)");
      }
      return CT::object(cls);
    }
    for (const auto& ctor : cls->ctors) {
      if (ctor.params.size() == args.size()) return CT::object(cls);
    }
    diag(e.line, "class " + name + " has no constructor with " +
                     std::to_string(args.size()) + " argument(s)");
    return CT::object(cls);
  }

  CT check_binary(const Expr& e) {
    CT a = check_expr(*e.lhs);
    CT b = check_expr(*e.rhs);
    const std::string& op = e.name;
    if (op == "+") {
      if (a.k == CT::K::Str || b.k == CT::K::Str) return CT::of(CT::K::Str);
      if ((a.k == CT::K::Int || a.unknown()) &&
          (b.k == CT::K::Int || b.unknown())) {
        return CT::of(CT::K::Int);
      }
      diag(e.line, std::string("operator + undefined for ") + ct_name(a) +
                       " and " + ct_name(b));
      return CT::of(CT::K::Unknown);
    }
    if (op == "-" || op == "*" || op == "/" || op == "%") {
      if ((a.k != CT::K::Int && !a.unknown()) ||
          (b.k != CT::K::Int && !b.unknown())) {
        diag(e.line, "operator " + op + " expects int operands");
      }
      return CT::of(CT::K::Int);
    }
    if (op == "<" || op == "<=" || op == ">" || op == ">=") {
      if ((a.k != CT::K::Int && !a.unknown()) ||
          (b.k != CT::K::Int && !b.unknown())) {
        diag(e.line, "operator " + op + " expects int operands");
      }
      return CT::of(CT::K::Bool);
    }
    if (op == "&&" || op == "||") {
      if ((a.k != CT::K::Bool && !a.unknown()) ||
          (b.k != CT::K::Bool && !b.unknown())) {
        diag(e.line, "operator " + op + " expects boolean operands");
      }
      return CT::of(CT::K::Bool);
    }
    // == and !=
    bool comparable = a.unknown() || b.unknown() || a.k == CT::K::Null ||
                      b.k == CT::K::Null || a.k == b.k;
    if (!comparable) {
      diag(e.line, std::string("incomparable operands to ") + op + ": " +
                       ct_name(a) + " and " + ct_name(b));
    }
    return CT::of(CT::K::Bool);
  }

  Workspace& ws_;
  std::vector<std::string>& diags_;
  const Unit* unit_ = nullptr;
  const ClassDecl* cls_ = nullptr;
  std::vector<std::map<std::string, CT>> scopes_;
  CT return_type_;
  bool in_static_ = false;
};

}  // namespace

std::vector<std::string> check_workspace(Workspace& workspace) {
  Checker checker(workspace, workspace.diagnostics());
  // Imports load lazily, so the unit list can grow while checking.
  for (std::size_t i = 0; i < workspace.units().size(); ++i) {
    checker.check_unit(*workspace.units()[i]);
  }
  return workspace.diagnostics();
}

}  // namespace mergeprobe::mjava
