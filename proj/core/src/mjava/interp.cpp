#include "mergeprobe/mjava/interp.hpp"

#include <cctype>
#include <cstdint>
#include <regex>
#include <set>
#include <sstream>
#include <utility>

#include "mergeprobe/mjava/parser.hpp"

namespace mergeprobe::mjava {
namespace {

struct Obj;

struct Value {
  enum class K { Null, Int, Bool, Str, Object, Set };
  K k = K::Null;
  long long i = 0;
  bool b = false;
  std::string s;
  std::shared_ptr<Obj> obj;
  std::shared_ptr<std::set<std::string>> set;

  static Value null() { return Value{}; }
  static Value of_int(long long v) {
    Value x;
    x.k = K::Int;
    x.i = v;
    return x;
  }
  static Value of_bool(bool v) {
    Value x;
    x.k = K::Bool;
    x.b = v;
    return x;
  }
  static Value of_str(std::string v) {
    Value x;
    x.k = K::Str;
    x.s = std::move(v);
    return x;
  }
};

struct Obj {
  const ClassDecl* cls = nullptr;
  const Unit* unit = nullptr;  // resolution context for the class's own code
  std::map<std::string, Value> fields;
  int id = 0;
};

struct AssertFail {
  std::string message;
};
struct Fault {
  std::string message;
};
struct ReturnSignal {
  Value value;
};

// Java int arithmetic wraps at 32 bits.
long long wrap32(long long v) { return static_cast<std::int32_t>(v); }

std::string display(const Value& v) {
  switch (v.k) {
    case Value::K::Null: return "null";
    case Value::K::Int: return std::to_string(v.i);
    case Value::K::Bool: return v.b ? "true" : "false";
    case Value::K::Str: return v.s;
    case Value::K::Set: {
      std::string out = "[";
      bool first = true;
      for (const auto& e : *v.set) {
        if (!first) out += ", ";
        out += e;
        first = false;
      }
      return out + "]";
    }
    case Value::K::Object: {
      std::ostringstream out;
      out << v.obj->cls->name << "@" << std::hex << v.obj->id;
      return out.str();
    }
  }
  return "?";
}

bool values_equal(const Value& a, const Value& b) {
  if (a.k != b.k) return false;
  switch (a.k) {
    case Value::K::Null: return true;
    case Value::K::Int: return a.i == b.i;
    case Value::K::Bool: return a.b == b.b;
    case Value::K::Str: return a.s == b.s;
    case Value::K::Set: return *a.set == *b.set;
    case Value::K::Object: return a.obj == b.obj;
  }
  return false;
}

bool same_reference(const Value& a, const Value& b) {
  if (a.k == Value::K::Null && b.k == Value::K::Null) return true;
  if (a.k != b.k) return false;
  switch (a.k) {
    case Value::K::Object: return a.obj == b.obj;
    case Value::K::Set: return a.set == b.set;
    case Value::K::Str: return a.s == b.s;  // interning illusion
    case Value::K::Int: return a.i == b.i;
    case Value::K::Bool: return a.b == b.b;
    default: return false;
  }
}

Value default_value(const TypeName& type) {
  if (type.is("int") || type.is("long")) return Value::of_int(0);
  if (type.is("boolean")) return Value::of_bool(false);
  return Value::null();
}

bool is_assert_name(const std::string& name) {
  return name == "assertEquals" || name == "assertTrue" ||
         name == "assertFalse" || name == "assertNull" ||
         name == "assertNotNull" || name == "assertSame" ||
         name == "assertNotSame" || name == "fail" ||
         name == "assertNotEquals";
}

class Interp {
 public:
  explicit Interp(Workspace& ws) : ws_(ws) {}

  Value construct(const ClassDecl& cls, const Unit& unit,
                  std::vector<Value> args, int line) {
    auto obj = std::make_shared<Obj>();
    obj->cls = &cls;
    obj->unit = &unit;
    obj->id = next_obj_id_++;
    for (const auto& f : cls.fields) {
      if (!f.is_static) obj->fields[f.name] = default_value(f.type);
    }
    Frame init_frame{obj, &cls, &unit, {}};
    init_frame.scopes.emplace_back();
    for (const auto& f : cls.fields) {
      if (!f.is_static && f.init) {
        obj->fields[f.name] = eval(*f.init, init_frame);
      }
    }
    const CtorDecl* ctor = nullptr;
    for (const auto& c : cls.ctors) {
      if (c.params.size() == args.size()) {
        ctor = &c;
        break;
      }
    }
    if (!ctor && !(cls.ctors.empty() && args.empty())) {
      throw Fault("no constructor of " + cls.name + " takes " +
                  std::to_string(args.size()) + " argument(s) (line " +
                  std::to_string(line) + ")");
    }
    if (ctor) {
      Frame frame{obj, &cls, &unit, {}};
      frame.scopes.emplace_back();
      for (std::size_t i = 0; i < ctor->params.size(); ++i) {
        frame.scopes.back()[ctor->params[i].name] = std::move(args[i]);
      }
      try {
        exec(ctor->body, frame);
      } catch (const ReturnSignal&) {
      }
    }
    Value v;
    v.k = Value::K::Object;
    v.obj = std::move(obj);
    return v;
  }

  Value invoke(const std::shared_ptr<Obj>& self, const ClassDecl& cls,
               const Unit& unit, const MethodDecl& m, std::vector<Value> args) {
    if (!m.body) {
      throw Fault("method " + cls.name + "." + m.name + " has no body");
    }
    Frame frame{self, &cls, &unit, {}};
    frame.scopes.emplace_back();
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      frame.scopes.back()[m.params[i].name] = std::move(args[i]);
    }
    try {
      exec(*m.body, frame);
    } catch (ReturnSignal& r) {
      return std::move(r.value);
    }
    return Value::null();
  }

 private:
  struct Frame {
    std::shared_ptr<Obj> self;  // null in static methods
    const ClassDecl* cls;
    const Unit* unit;
    std::vector<std::map<std::string, Value>> scopes;
  };

  const Unit* unit_of(const ClassDecl* cls) const {
    for (const Unit* u : ws_.units()) {
      for (const auto& c : u->classes) {
        if (&c == cls) return u;
      }
    }
    return nullptr;
  }

  Value* find_local(Frame& f, const std::string& name) {
    for (auto it = f.scopes.rbegin(); it != f.scopes.rend(); ++it) {
      if (auto v = it->find(name); v != it->end()) return &v->second;
    }
    return nullptr;
  }

  std::map<std::string, Value>& statics_of(const ClassDecl& cls,
                                           const Unit& unit) {
    auto it = statics_.find(&cls);
    if (it != statics_.end()) return it->second;
    auto& table = statics_[&cls];
    for (const auto& f : cls.fields) {
      if (f.is_static) table[f.name] = default_value(f.type);
    }
    Frame frame{nullptr, &cls, &unit, {}};
    frame.scopes.emplace_back();
    for (const auto& f : cls.fields) {
      if (f.is_static && f.init) table[f.name] = eval(*f.init, frame);
    }
    return statics_[&cls];
  }

  // ---- statements ----

  void exec(const Stmt& s, Frame& f) {
    switch (s.kind) {
      case Stmt::Kind::Block: {
        f.scopes.emplace_back();
        for (const auto& child : s.body) exec(*child, f);
        f.scopes.pop_back();
        return;
      }
      case Stmt::Kind::LocalDecl: {
        Value v = s.init ? eval(*s.init, f) : default_value(s.decl_type);
        f.scopes.back()[s.decl_name] = std::move(v);
        return;
      }
      case Stmt::Kind::ExprStmt:
        eval(*s.expr, f);
        return;
      case Stmt::Kind::Return: {
        ReturnSignal r;
        if (s.expr) r.value = eval(*s.expr, f);
        throw r;
      }
      case Stmt::Kind::If: {
        if (truth(eval(*s.expr, f), s.line)) {
          exec(*s.then_branch, f);
        } else if (s.else_branch) {
          exec(*s.else_branch, f);
        }
        return;
      }
      case Stmt::Kind::While: {
        while (truth(eval(*s.expr, f), s.line)) exec(*s.then_branch, f);
        return;
      }
    }
  }

  bool truth(const Value& v, int line) {
    if (v.k != Value::K::Bool) {
      throw Fault("condition is not boolean (line " + std::to_string(line) +
                  ")");
    }
    return v.b;
  }

  // ---- expressions ----

  Value eval(const Expr& e, Frame& f) {
    switch (e.kind) {
      case Expr::Kind::IntLit: return Value::of_int(e.int_value);
      case Expr::Kind::StringLit: return Value::of_str(e.str_value);
      case Expr::Kind::BoolLit: return Value::of_bool(e.bool_value);
      case Expr::Kind::NullLit: return Value::null();
      case Expr::Kind::This: {
        if (!f.self) throw Fault("'this' in static context");
        Value v;
        v.k = Value::K::Object;
        v.obj = f.self;
        return v;
      }
      case Expr::Kind::Name: return eval_name(e, f);
      case Expr::Kind::Field: return eval_field(e, f);
      case Expr::Kind::Call: return eval_call(e, f);
      case Expr::Kind::New: return eval_new(e, f);
      case Expr::Kind::Assign: return eval_assign(e, f);
      case Expr::Kind::Binary: return eval_binary(e, f);
      case Expr::Kind::Unary: {
        Value v = eval(*e.rhs, f);
        if (e.name == "!") {
          if (v.k != Value::K::Bool) throw Fault("operator ! on non-boolean");
          return Value::of_bool(!v.b);
        }
        if (v.k != Value::K::Int) throw Fault("operator - on non-int");
        return Value::of_int(wrap32(-v.i));
      }
    }
    throw Fault("unhandled expression");
  }

  Value eval_name(const Expr& e, Frame& f) {
    if (Value* local = find_local(f, e.name)) return *local;
    if (const FieldDecl* fd = f.cls->find_field(e.name)) {
      if (fd->is_static) return statics_of(*f.cls, *f.unit)[e.name];
      if (!f.self) throw Fault("instance field '" + e.name + "' in static context");
      return f.self->fields[e.name];
    }
    throw Fault("cannot resolve symbol '" + e.name + "' (line " +
                std::to_string(e.line) + ")");
  }

  // Recognises a receiver expression that names a class, not a value.
  bool static_receiver(const Expr& recv, Frame& f, const ClassDecl*& cls,
                       std::string& builtin) {
    if (recv.kind != Expr::Kind::Name) return false;
    if (find_local(f, recv.name)) return false;
    if (f.cls->find_field(recv.name)) return false;
    if (Workspace::is_builtin_class(recv.name)) {
      builtin = recv.name;
      return true;
    }
    if (const ClassDecl* c = ws_.resolve_class(recv.name, *f.unit)) {
      cls = c;
      return true;
    }
    return false;
  }

  Value eval_field(const Expr& e, Frame& f) {
    const ClassDecl* static_cls = nullptr;
    std::string builtin;
    if (static_receiver(*e.receiver, f, static_cls, builtin)) {
      if (static_cls) {
        const FieldDecl* fd = static_cls->find_field(e.name);
        if (fd && fd->is_static) {
          return statics_of(*static_cls, *unit_of(static_cls))[e.name];
        }
        throw Fault("class " + static_cls->name + " has no static field '" +
                    e.name + "'");
      }
      throw Fault("class " + builtin + " has no field '" + e.name + "'");
    }
    Value recv = eval(*e.receiver, f);
    if (recv.k == Value::K::Null) {
      throw Fault("null dereference reading field '" + e.name + "' (line " +
                  std::to_string(e.line) + ")");
    }
    if (recv.k != Value::K::Object) {
      throw Fault(display(recv) + " has no field '" + e.name + "'");
    }
    auto it = recv.obj->fields.find(e.name);
    if (it == recv.obj->fields.end()) {
      throw Fault("class " + recv.obj->cls->name + " has no field '" + e.name +
                  "' (line " + std::to_string(e.line) + ")");
    }
    return it->second;
  }

  Value eval_assign(const Expr& e, Frame& f) {
    const Expr& lhs = *e.lhs;
    if (lhs.kind == Expr::Kind::Name) {
      Value v = eval(*e.rhs, f);
      if (Value* local = find_local(f, lhs.name)) {
        *local = v;
        return v;
      }
      if (const FieldDecl* fd = f.cls->find_field(lhs.name)) {
        if (fd->is_static) {
          statics_of(*f.cls, *f.unit)[lhs.name] = v;
        } else {
          if (!f.self) throw Fault("instance field assignment in static context");
          f.self->fields[lhs.name] = v;
        }
        return v;
      }
      throw Fault("cannot resolve symbol '" + lhs.name + "' (line " +
                  std::to_string(lhs.line) + ")");
    }
    // field target: evaluate receiver before the value, as Java does
    Value recv = eval(*lhs.receiver, f);
    if (recv.k == Value::K::Null) {
      throw Fault("null dereference writing field '" + lhs.name + "' (line " +
                  std::to_string(lhs.line) + ")");
    }
    if (recv.k != Value::K::Object) {
      throw Fault(display(recv) + " has no field '" + lhs.name + "'");
    }
    Value v = eval(*e.rhs, f);
    recv.obj->fields[lhs.name] = v;
    return v;
  }

  Value eval_new(const Expr& e, Frame& f) {
    std::vector<Value> args;
    args.reserve(e.args.size());
    for (const auto& a : e.args) args.push_back(eval(*a, f));
    const std::string& name = e.new_type.name;
    if (name == "HashSet") {
      Value v;
      v.k = Value::K::Set;
      v.set = std::make_shared<std::set<std::string>>();
      if (args.size() == 1 && args[0].k == Value::K::Set) *v.set = *args[0].set;
      return v;
    }
    if (name == "String") {
      if (args.size() == 1 && args[0].k == Value::K::Str) return args[0];
      return Value::of_str("");
    }
    const ClassDecl* cls = ws_.resolve_class(name, *f.unit);
    if (!cls) {
      throw Fault("cannot resolve class '" + name + "' (line " +
                  std::to_string(e.line) + ")");
    }
    return construct(*cls, *unit_of(cls), std::move(args), e.line);
  }

  Value eval_call(const Expr& e, Frame& f) {
    if (!e.receiver) {
      if (is_assert_name(e.name)) return do_assert(e, f);
      if (const MethodDecl* m = f.cls->find_method(e.name, e.args.size())) {
        std::vector<Value> args = eval_args(e, f);
        return invoke(m->is_static ? nullptr : f.self, *f.cls, *f.unit, *m,
                      std::move(args));
      }
      throw Fault("cannot resolve method '" + e.name + "' (line " +
                  std::to_string(e.line) + ")");
    }
    const ClassDecl* static_cls = nullptr;
    std::string builtin;
    if (static_receiver(*e.receiver, f, static_cls, builtin)) {
      if (static_cls) {
        const MethodDecl* m = static_cls->find_method(e.name, e.args.size());
        if (!m) {
          throw Fault("class " + static_cls->name + " has no method '" +
                      e.name + "' (line " + std::to_string(e.line) + ")");
        }
        std::vector<Value> args = eval_args(e, f);
        return invoke(nullptr, *static_cls, *unit_of(static_cls), *m,
                      std::move(args));
      }
      if (builtin == "Assert" && is_assert_name(e.name)) return do_assert(e, f);
      throw Fault("cannot resolve static method '" + builtin + "." + e.name +
                  "'");
    }
    Value recv = eval(*e.receiver, f);
    if (recv.k == Value::K::Null) {
      throw Fault("null dereference calling '" + e.name + "' (line " +
                  std::to_string(e.line) + ")");
    }
    std::vector<Value> args = eval_args(e, f);
    switch (recv.k) {
      case Value::K::Str: return string_method(recv.s, e, args);
      case Value::K::Set: return set_method(recv, e, args);
      case Value::K::Object: {
        const MethodDecl* m = recv.obj->cls->find_method(e.name, e.args.size());
        if (!m) {
          throw Fault("class " + recv.obj->cls->name + " has no method '" +
                      e.name + "' with " + std::to_string(e.args.size()) +
                      " argument(s) (line " + std::to_string(e.line) + ")");
        }
        return invoke(recv.obj, *recv.obj->cls, *recv.obj->unit, *m,
                      std::move(args));
      }
      default:
        throw Fault(display(recv) + " has no method '" + e.name + "'");
    }
  }

  std::vector<Value> eval_args(const Expr& e, Frame& f) {
    std::vector<Value> args;
    args.reserve(e.args.size());
    for (const auto& a : e.args) args.push_back(eval(*a, f));
    return args;
  }

  Value string_method(const std::string& s, const Expr& e,
                      std::vector<Value>& args) {
    const std::string& n = e.name;
    auto str_arg = [&](std::size_t i) -> const std::string& {
      if (args[i].k != Value::K::Str) {
        throw Fault("String." + n + " expects a String argument (line " +
                    std::to_string(e.line) + ")");
      }
      return args[i].s;
    };
    if (n == "replaceAll" && args.size() == 2) {
      try {
        std::regex re(str_arg(0), std::regex::ECMAScript);
        return Value::of_str(std::regex_replace(s, re, str_arg(1)));
      } catch (const std::regex_error& err) {
        throw Fault("invalid regular expression '" + args[0].s + "': " +
                    err.what());
      }
    }
    if (n == "replace" && args.size() == 2) {
      const std::string& from = str_arg(0);
      const std::string& to = str_arg(1);
      if (from.empty()) return Value::of_str(s);
      std::string out;
      std::size_t pos = 0;
      while (true) {
        std::size_t hit = s.find(from, pos);
        if (hit == std::string::npos) {
          out.append(s, pos, std::string::npos);
          return Value::of_str(out);
        }
        out.append(s, pos, hit - pos);
        out += to;
        pos = hit + from.size();
      }
    }
    if (n == "equals" && args.size() == 1) {
      return Value::of_bool(args[0].k == Value::K::Str && args[0].s == s);
    }
    if (n == "equalsIgnoreCase" && args.size() == 1) {
      const std::string& other = str_arg(0);
      if (other.size() != s.size()) return Value::of_bool(false);
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[i])) !=
            std::tolower(static_cast<unsigned char>(other[i]))) {
          return Value::of_bool(false);
        }
      }
      return Value::of_bool(true);
    }
    if (n == "length" && args.empty()) {
      return Value::of_int(static_cast<long long>(s.size()));
    }
    if (n == "isEmpty" && args.empty()) return Value::of_bool(s.empty());
    if (n == "contains" && args.size() == 1) {
      return Value::of_bool(s.find(str_arg(0)) != std::string::npos);
    }
    if (n == "trim" && args.empty()) {
      std::size_t b = 0, e2 = s.size();
      while (b < e2 && static_cast<unsigned char>(s[b]) <= ' ') ++b;
      while (e2 > b && static_cast<unsigned char>(s[e2 - 1]) <= ' ') --e2;
      return Value::of_str(s.substr(b, e2 - b));
    }
    if (n == "strip" && args.empty()) {
      std::size_t b = 0, e2 = s.size();
      while (b < e2 && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
      while (e2 > b && std::isspace(static_cast<unsigned char>(s[e2 - 1]))) --e2;
      return Value::of_str(s.substr(b, e2 - b));
    }
    if (n == "toLowerCase" && args.empty()) {
      std::string out = s;
      for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      return Value::of_str(out);
    }
    if (n == "toUpperCase" && args.empty()) {
      std::string out = s;
      for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      return Value::of_str(out);
    }
    if (n == "startsWith" && args.size() == 1) {
      const std::string& p = str_arg(0);
      return Value::of_bool(s.rfind(p, 0) == 0);
    }
    if (n == "endsWith" && args.size() == 1) {
      const std::string& p = str_arg(0);
      return Value::of_bool(p.size() <= s.size() &&
                            s.compare(s.size() - p.size(), p.size(), p) == 0);
    }
    if (n == "indexOf" && args.size() == 1) {
      std::size_t hit = s.find(str_arg(0));
      return Value::of_int(hit == std::string::npos
                               ? -1
                               : static_cast<long long>(hit));
    }
    if (n == "substring" && (args.size() == 1 || args.size() == 2)) {
      if (args[0].k != Value::K::Int ||
          (args.size() == 2 && args[1].k != Value::K::Int)) {
        throw Fault("String.substring expects int indices");
      }
      long long b = args[0].i;
      long long e2 = args.size() == 2 ? args[1].i
                                      : static_cast<long long>(s.size());
      if (b < 0 || e2 > static_cast<long long>(s.size()) || b > e2) {
        throw Fault("String index out of range (line " +
                    std::to_string(e.line) + ")");
      }
      return Value::of_str(s.substr(static_cast<std::size_t>(b),
                                    static_cast<std::size_t>(e2 - b)));
    }
    if (n == "concat" && args.size() == 1) {
      return Value::of_str(s + str_arg(0));
    }
    if (n == "hashCode" && args.empty()) {
      std::int32_t h = 0;
      for (unsigned char c : s) h = h * 31 + c;
      return Value::of_int(h);
    }
    if (n == "toString" && args.empty()) return Value::of_str(s);
    throw Fault("String has no method '" + n + "' with " +
                std::to_string(args.size()) + " argument(s) (line " +
                std::to_string(e.line) + ")");
  }

  Value set_method(Value& recv, const Expr& e, std::vector<Value>& args) {
    const std::string& n = e.name;
    auto elem = [&](std::size_t i) -> const std::string& {
      if (args[i].k != Value::K::Str) {
        throw Fault("Set operations support String elements only (line " +
                    std::to_string(e.line) + ")");
      }
      return args[i].s;
    };
    if (n == "add" && args.size() == 1) {
      return Value::of_bool(recv.set->insert(elem(0)).second);
    }
    if (n == "remove" && args.size() == 1) {
      return Value::of_bool(recv.set->erase(elem(0)) > 0);
    }
    if (n == "contains" && args.size() == 1) {
      return Value::of_bool(recv.set->count(elem(0)) > 0);
    }
    if (n == "size" && args.empty()) {
      return Value::of_int(static_cast<long long>(recv.set->size()));
    }
    if (n == "isEmpty" && args.empty()) {
      return Value::of_bool(recv.set->empty());
    }
    if (n == "clear" && args.empty()) {
      recv.set->clear();
      return Value::null();
    }
    if (n == "addAll" && args.size() == 1) {
      if (args[0].k != Value::K::Set) {
        throw Fault("Set.addAll expects a Set argument");
      }
      std::size_t before = recv.set->size();
      recv.set->insert(args[0].set->begin(), args[0].set->end());
      return Value::of_bool(recv.set->size() != before);
    }
    if (n == "toString" && args.empty()) return Value::of_str(display(recv));
    throw Fault("Set has no method '" + n + "' with " +
                std::to_string(args.size()) + " argument(s) (line " +
                std::to_string(e.line) + ")");
  }

  Value do_assert(const Expr& e, Frame& f) {
    std::vector<Value> args = eval_args(e, f);
    const std::string& n = e.name;
    bool with_message = false;
    std::string message;
    // JUnit's (String message, ...) overloads put the message first.
    if ((n == "assertTrue" || n == "assertFalse" || n == "assertNull" ||
         n == "assertNotNull") &&
        args.size() == 2) {
      with_message = true;
    } else if ((n == "assertEquals" || n == "assertNotEquals" ||
                n == "assertSame" || n == "assertNotSame") &&
               args.size() == 3) {
      with_message = true;
    }
    if (with_message) {
      if (args[0].k == Value::K::Str) message = args[0].s;
      args.erase(args.begin());
    }
    auto fail_with = [&](const std::string& detail) -> Value {
      throw AssertFail{message.empty() ? detail : message + " " + detail};
    };
    if (n == "fail") {
      std::string m = "test failed";
      if (!args.empty() && args[0].k == Value::K::Str) m = args[0].s;
      throw AssertFail{m};
    }
    if (args.empty()) throw Fault(n + " expects arguments");
    if (n == "assertTrue") {
      if (args[0].k != Value::K::Bool) throw Fault("assertTrue on non-boolean");
      if (!args[0].b) return fail_with("assertTrue failed");
      return Value::null();
    }
    if (n == "assertFalse") {
      if (args[0].k != Value::K::Bool) throw Fault("assertFalse on non-boolean");
      if (args[0].b) return fail_with("assertFalse failed");
      return Value::null();
    }
    if (n == "assertNull") {
      if (args[0].k != Value::K::Null) {
        return fail_with("expected:<null> but was:<" + display(args[0]) + ">");
      }
      return Value::null();
    }
    if (n == "assertNotNull") {
      if (args[0].k == Value::K::Null) return fail_with("expected not null");
      return Value::null();
    }
    if (args.size() != 2) throw Fault(n + " expects two arguments");
    if (n == "assertEquals") {
      if (!values_equal(args[0], args[1])) {
        return fail_with("expected:<" + display(args[0]) + "> but was:<" +
                         display(args[1]) + ">");
      }
      return Value::null();
    }
    if (n == "assertNotEquals") {
      if (values_equal(args[0], args[1])) {
        return fail_with("values should differ, both were:<" +
                         display(args[0]) + ">");
      }
      return Value::null();
    }
    if (n == "assertSame") {
      if (!same_reference(args[0], args[1])) {
        return fail_with("expected same:<" + display(args[0]) +
                         "> was not:<" + display(args[1]) + ">");
      }
      return Value::null();
    }
    // assertNotSame
    if (same_reference(args[0], args[1])) {
      return fail_with("expected not same");
    }
    return Value::null();
  }

  Value eval_binary(const Expr& e, Frame& f) {
    const std::string& op = e.name;
    if (op == "&&" || op == "||") {
      Value a = eval(*e.lhs, f);
      if (a.k != Value::K::Bool) throw Fault("operator " + op + " on non-boolean");
      if (op == "&&" && !a.b) return Value::of_bool(false);
      if (op == "||" && a.b) return Value::of_bool(true);
      Value b = eval(*e.rhs, f);
      if (b.k != Value::K::Bool) throw Fault("operator " + op + " on non-boolean");
      return Value::of_bool(b.b);
    }
    Value a = eval(*e.lhs, f);
    Value b = eval(*e.rhs, f);
    if (op == "+") {
      if (a.k == Value::K::Str || b.k == Value::K::Str) {
        return Value::of_str(display(a) + display(b));
      }
      require_ints(a, b, op, e.line);
      return Value::of_int(wrap32(a.i + b.i));
    }
    if (op == "-") {
      require_ints(a, b, op, e.line);
      return Value::of_int(wrap32(a.i - b.i));
    }
    if (op == "*") {
      require_ints(a, b, op, e.line);
      return Value::of_int(wrap32(a.i * b.i));
    }
    if (op == "/" || op == "%") {
      require_ints(a, b, op, e.line);
      if (b.i == 0) {
        throw Fault("/ by zero (line " + std::to_string(e.line) + ")");
      }
      return Value::of_int(wrap32(op == "/" ? a.i / b.i : a.i % b.i));
    }
    if (op == "<" || op == "<=" || op == ">" || op == ">=") {
      require_ints(a, b, op, e.line);
      if (op == "<") return Value::of_bool(a.i < b.i);
      if (op == "<=") return Value::of_bool(a.i <= b.i);
      if (op == ">") return Value::of_bool(a.i > b.i);
      return Value::of_bool(a.i >= b.i);
    }
    if (op == "==") return Value::of_bool(same_reference(a, b));
    if (op == "!=") return Value::of_bool(!same_reference(a, b));
    throw Fault("unsupported operator " + op);
  }

  void require_ints(const Value& a, const Value& b, const std::string& op,
                    int line) {
    if (a.k != Value::K::Int || b.k != Value::K::Int) {
      throw Fault("operator " + op + " expects int operands (line " +
                  std::to_string(line) + ")");
    }
  }

  Workspace& ws_;
  std::map<const ClassDecl*, std::map<std::string, Value>> statics_;
  int next_obj_id_ = 1;
};

}  // namespace

std::vector<TestRunResult> run_test_class(Workspace& workspace,
                                          const Unit& test_unit,
                                          const ClassDecl& test_class) {
  std::vector<TestRunResult> results;
  Interp interp(workspace);
  for (const auto& m : test_class.methods) {
    if (!m.has_annotation("Test")) continue;
    TestRunResult r;
    r.method_name = m.name;
    if (!m.body || m.is_static || !m.params.empty() ||
        !m.return_type.is("void")) {
      r.status = RunStatus::Error;
      r.message = "@Test method must be an instance void method with no parameters";
      results.push_back(std::move(r));
      continue;
    }
    try {
      Value self = interp.construct(test_class, test_unit, {}, m.line);
      interp.invoke(self.obj, test_class, test_unit, m, {});
      r.status = RunStatus::Pass;
    } catch (const AssertFail& fail) {
      r.status = RunStatus::Fail;
      r.message = fail.message;
    } catch (const Fault& fault) {
      r.status = RunStatus::Error;
      r.message = fault.message;
    } catch (const SubsetError& err) {
      r.status = RunStatus::Error;
      r.message = err.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace mergeprobe::mjava
