#include "mergeprobe/mjava/parser.hpp"

#include <utility>

#include "mergeprobe/java/lexer.hpp"

namespace mergeprobe::mjava {
namespace {

namespace jv = mergeprobe::java;

bool is_modifier_word(const jv::Token& t) {
  return t.is_keyword("public") || t.is_keyword("private") ||
         t.is_keyword("protected") || t.is_keyword("static") ||
         t.is_keyword("final");
}

class Parser {
 public:
  Parser(std::string_view source, std::string source_name)
      : source_name_(std::move(source_name)) {
    try {
      toks_ = jv::lex(source);
    } catch (const jv::LexError& e) {
      throw SubsetError(e.what(), e.line, e.column);
    }
  }

  Unit parse() {
    Unit unit;
    unit.source_name = source_name_;
    if (at_keyword("package")) {
      advance();
      unit.package_name = parse_dotted_name();
      expect(";");
    }
    while (at_keyword("import")) {
      advance();
      if (at_keyword("static")) advance();
      std::string path = parse_dotted_name();
      if (accept(".")) {
        expect("*");
        path += ".*";
      }
      expect(";");
      unit.imports.push_back(std::move(path));
    }
    while (!eof()) {
      unit.classes.push_back(parse_class());
    }
    return unit;
  }

 private:
  // ---- token plumbing ----

  bool eof() const { return pos_ >= toks_.size(); }

  const jv::Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    if (i >= toks_.size()) {
      throw SubsetError("unexpected end of input", last_line(), 1);
    }
    return toks_[i];
  }

  int last_line() const {
    return toks_.empty() ? 1 : toks_.back().line;
  }

  const jv::Token& advance() {
    const jv::Token& t = peek();
    ++pos_;
    return t;
  }

  bool at(const char* text) const { return !eof() && toks_[pos_].is(text); }
  bool at_keyword(const char* kw) const {
    return !eof() && toks_[pos_].is_keyword(kw);
  }

  bool accept(const char* text) {
    if (!at(text)) return false;
    ++pos_;
    return true;
  }

  void expect(const char* text) {
    if (!accept(text)) {
      const jv::Token& t = peek();
      fail("expected '" + std::string(text) + "', found '" +
               std::string(t.text) + "'",
           t);
    }
  }

  std::string expect_identifier(const char* what) {
    const jv::Token& t = peek();
    if (t.kind != jv::TokKind::Identifier) {
      fail(std::string("expected ") + what + ", found '" +
               std::string(t.text) + "'",
           t);
    }
    ++pos_;
    return std::string(t.text);
  }

  [[noreturn]] void fail(const std::string& message, const jv::Token& t) const {
    throw SubsetError(source_name_ + ":" + std::to_string(t.line) + ": " +
                          message,
                      t.line, t.column);
  }

  [[noreturn]] void unsupported(const std::string& what, const jv::Token& t) const {
    fail("unsupported construct: " + what, t);
  }

  // ---- declarations ----

  std::string parse_dotted_name() {
    std::string name = expect_identifier("name");
    while (pos_ + 1 < toks_.size() && toks_[pos_].is(".") &&
           toks_[pos_ + 1].kind == jv::TokKind::Identifier) {
      ++pos_;
      name += ".";
      name += std::string(advance().text);
    }
    return name;
  }

  std::vector<std::string> parse_annotations() {
    std::vector<std::string> names;
    while (at("@")) {
      advance();
      std::string name = parse_dotted_name();
      auto dot = name.rfind('.');
      names.push_back(dot == std::string::npos ? name : name.substr(dot + 1));
      if (accept("(")) skip_balanced_parens();
    }
    return names;
  }

  // Call with the '(' already consumed.
  void skip_balanced_parens() {
    int depth = 1;
    while (depth > 0) {
      const jv::Token& t = advance();
      if (t.is("(")) ++depth;
      else if (t.is(")")) --depth;
    }
  }

  ClassDecl parse_class() {
    parse_annotations();
    while (!eof() && is_modifier_word(toks_[pos_])) advance();
    const jv::Token& head = peek();
    if (head.is_keyword("interface") || head.is_keyword("enum") ||
        head.is_keyword("record")) {
      unsupported(std::string(head.text) + " declarations", head);
    }
    if (!head.is_keyword("class")) {
      fail("expected class declaration, found '" + std::string(head.text) + "'",
           head);
    }
    advance();
    ClassDecl cls;
    cls.name = expect_identifier("class name");
    if (at_keyword("extends") || at_keyword("implements")) {
      unsupported("class inheritance", peek());
    }
    expect("{");
    while (!accept("}")) {
      parse_member(cls);
    }
    return cls;
  }

  void parse_member(ClassDecl& cls) {
    if (accept(";")) return;
    std::vector<std::string> annotations = parse_annotations();
    bool is_static = false;
    while (!eof() && is_modifier_word(toks_[pos_])) {
      if (toks_[pos_].is_keyword("static")) is_static = true;
      advance();
    }
    const jv::Token& first = peek();
    if (first.is("{")) unsupported("initializer blocks", first);
    if (first.is_keyword("class") || first.is_keyword("interface") ||
        first.is_keyword("enum")) {
      unsupported("nested types", first);
    }

    // Constructor: class name directly followed by '('.
    if (first.kind == jv::TokKind::Identifier &&
        std::string(first.text) == cls.name && peek(1).is("(")) {
      CtorDecl ctor;
      ctor.line = first.line;
      advance();
      ctor.params = parse_params();
      skip_throws();
      ctor.body = parse_block();
      cls.ctors.push_back(std::move(ctor));
      return;
    }

    TypeName type = parse_type();
    const jv::Token& name_tok = peek();
    std::string name = expect_identifier("member name");

    if (at("(")) {
      MethodDecl m;
      m.annotations = std::move(annotations);
      m.is_static = is_static;
      m.return_type = std::move(type);
      m.name = std::move(name);
      m.line = name_tok.line;
      m.params = parse_params();
      skip_throws();
      if (accept(";")) {
        cls.methods.push_back(std::move(m));
        return;
      }
      m.body = parse_block();
      cls.methods.push_back(std::move(m));
      return;
    }

    FieldDecl f;
    f.is_static = is_static;
    f.type = std::move(type);
    f.name = std::move(name);
    f.line = name_tok.line;
    if (accept("=")) f.init = parse_expr();
    if (at(",")) unsupported("multiple declarators", peek());
    expect(";");
    cls.fields.push_back(std::move(f));
  }

  TypeName parse_type() {
    const jv::Token& t = peek();
    TypeName type;
    if (t.is_keyword("int") || t.is_keyword("boolean") ||
        t.is_keyword("void") || t.is_keyword("long")) {
      type.name = std::string(t.text);
      advance();
    } else if (t.kind == jv::TokKind::Identifier) {
      type.name = parse_dotted_name();
      auto dot = type.name.rfind('.');
      if (dot != std::string::npos) type.name = type.name.substr(dot + 1);
      if (accept("<")) {
        if (!accept(">")) {  // diamond leaves type_arg empty
          type.type_arg = expect_identifier("type argument");
          expect(">");
        }
      }
    } else if (t.is_keyword("double") || t.is_keyword("float") ||
               t.is_keyword("char") || t.is_keyword("byte") ||
               t.is_keyword("short")) {
      unsupported("type '" + std::string(t.text) + "'", t);
    } else {
      fail("expected type, found '" + std::string(t.text) + "'", t);
    }
    if (at("[")) unsupported("array types", peek());
    return type;
  }

  std::vector<Param> parse_params() {
    expect("(");
    std::vector<Param> params;
    if (accept(")")) return params;
    while (true) {
      if (at_keyword("final")) advance();
      Param p;
      p.type = parse_type();
      p.name = expect_identifier("parameter name");
      params.push_back(std::move(p));
      if (accept(")")) return params;
      expect(",");
    }
  }

  void skip_throws() {
    if (!at_keyword("throws")) return;
    advance();
    parse_dotted_name();
    while (accept(",")) parse_dotted_name();
  }

  // ---- statements ----

  Stmt parse_block() {
    const jv::Token& open = peek();
    expect("{");
    Stmt block;
    block.kind = Stmt::Kind::Block;
    block.line = open.line;
    while (!accept("}")) {
      block.body.push_back(std::make_unique<Stmt>(parse_statement()));
    }
    return block;
  }

  Stmt parse_statement() {
    const jv::Token& t = peek();
    if (t.is("{")) return parse_block();
    if (t.is_keyword("return")) {
      advance();
      Stmt s;
      s.kind = Stmt::Kind::Return;
      s.line = t.line;
      if (!at(";")) s.expr = parse_expr();
      expect(";");
      return s;
    }
    if (t.is_keyword("if")) {
      advance();
      Stmt s;
      s.kind = Stmt::Kind::If;
      s.line = t.line;
      expect("(");
      s.expr = parse_expr();
      expect(")");
      s.then_branch = std::make_unique<Stmt>(parse_statement());
      if (at_keyword("else")) {
        advance();
        s.else_branch = std::make_unique<Stmt>(parse_statement());
      }
      return s;
    }
    if (t.is_keyword("while")) {
      advance();
      Stmt s;
      s.kind = Stmt::Kind::While;
      s.line = t.line;
      expect("(");
      s.expr = parse_expr();
      expect(")");
      s.then_branch = std::make_unique<Stmt>(parse_statement());
      return s;
    }
    if (t.is_keyword("for") || t.is_keyword("do") || t.is_keyword("switch") ||
        t.is_keyword("try") || t.is_keyword("throw") ||
        t.is_keyword("synchronized")) {
      unsupported("'" + std::string(t.text) + "' statements", t);
    }
    if (starts_local_decl()) {
      Stmt s;
      s.kind = Stmt::Kind::LocalDecl;
      s.line = t.line;
      s.decl_type = parse_type();
      s.decl_name = expect_identifier("variable name");
      if (accept("=")) s.init = parse_expr();
      if (at(",")) unsupported("multiple declarators", peek());
      expect(";");
      return s;
    }
    Stmt s;
    s.kind = Stmt::Kind::ExprStmt;
    s.line = t.line;
    s.expr = parse_expr();
    expect(";");
    return s;
  }

  // Distinguishes "Type name ..." from an expression at statement start.
  bool starts_local_decl() const {
    const jv::Token& t = toks_[pos_];
    if (t.is_keyword("int") || t.is_keyword("boolean") ||
        t.is_keyword("long") || t.is_keyword("final")) {
      return true;
    }
    if (t.kind != jv::TokKind::Identifier) return false;
    if (pos_ + 1 >= toks_.size()) return false;
    const jv::Token& n1 = toks_[pos_ + 1];
    if (n1.kind == jv::TokKind::Identifier) return true;  // Text t
    if (n1.is("<")) {  // Set<String> x  vs  a < b
      return pos_ + 4 < toks_.size() &&
             toks_[pos_ + 2].kind == jv::TokKind::Identifier &&
             toks_[pos_ + 3].is(">") &&
             toks_[pos_ + 4].kind == jv::TokKind::Identifier;
    }
    return false;
  }

  // ---- expressions (precedence climbing) ----

  ExprPtr parse_expr() { return parse_assignment(); }

  ExprPtr parse_assignment() {
    ExprPtr lhs = parse_or();
    if (at("=")) {
      const jv::Token& t = advance();
      if (lhs->kind != Expr::Kind::Name && lhs->kind != Expr::Kind::Field) {
        fail("assignment target must be a variable or field", t);
      }
      auto e = make(Expr::Kind::Assign, t.line);
      e->lhs = std::move(lhs);
      e->rhs = parse_assignment();
      return e;
    }
    if (at("+=") || at("-=") || at("*=") || at("/=")) {
      unsupported("compound assignment", peek());
    }
    return lhs;
  }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (at("||")) {
      int line = advance().line;
      lhs = make_binary("||", std::move(lhs), parse_and(), line);
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_equality();
    while (at("&&")) {
      int line = advance().line;
      lhs = make_binary("&&", std::move(lhs), parse_equality(), line);
    }
    return lhs;
  }

  ExprPtr parse_equality() {
    ExprPtr lhs = parse_relational();
    while (at("==") || at("!=")) {
      std::string op(advance().text);
      int line = toks_[pos_ - 1].line;
      lhs = make_binary(op, std::move(lhs), parse_relational(), line);
    }
    return lhs;
  }

  ExprPtr parse_relational() {
    ExprPtr lhs = parse_additive();
    while (at("<") || at("<=") || at(">") || at(">=")) {
      std::string op(advance().text);
      int line = toks_[pos_ - 1].line;
      lhs = make_binary(op, std::move(lhs), parse_additive(), line);
    }
    return lhs;
  }

  ExprPtr parse_additive() {
    ExprPtr lhs = parse_multiplicative();
    while (at("+") || at("-")) {
      std::string op(advance().text);
      int line = toks_[pos_ - 1].line;
      lhs = make_binary(op, std::move(lhs), parse_multiplicative(), line);
    }
    return lhs;
  }

  ExprPtr parse_multiplicative() {
    ExprPtr lhs = parse_unary();
    while (at("*") || at("/") || at("%")) {
      std::string op(advance().text);
      int line = toks_[pos_ - 1].line;
      lhs = make_binary(op, std::move(lhs), parse_unary(), line);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (at("!") || at("-")) {
      const jv::Token& t = advance();
      auto e = make(Expr::Kind::Unary, t.line);
      e->name = std::string(t.text);
      e->rhs = parse_unary();
      return e;
    }
    if (accept("+")) return parse_unary();
    if (at("++") || at("--")) unsupported("increment/decrement", peek());
    return parse_postfix();
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    while (at(".")) {
      int line = advance().line;
      std::string member = expect_identifier("member name");
      if (at("(")) {
        auto call = make(Expr::Kind::Call, line);
        call->receiver = std::move(e);
        call->name = std::move(member);
        call->args = parse_args();
        e = std::move(call);
      } else {
        auto field = make(Expr::Kind::Field, line);
        field->receiver = std::move(e);
        field->name = std::move(member);
        e = std::move(field);
      }
    }
    return e;
  }

  std::vector<ExprPtr> parse_args() {
    expect("(");
    std::vector<ExprPtr> args;
    if (accept(")")) return args;
    while (true) {
      args.push_back(parse_expr());
      if (accept(")")) return args;
      expect(",");
    }
  }

  ExprPtr parse_primary() {
    const jv::Token& t = peek();
    switch (t.kind) {
      case jv::TokKind::IntLiteral: {
        advance();
        auto e = make(Expr::Kind::IntLit, t.line);
        std::string text(t.text);
        if (!text.empty() && (text.back() == 'L' || text.back() == 'l')) {
          text.pop_back();
        }
        try {
          e->int_value = std::stoll(text, nullptr, 0);
        } catch (const std::exception&) {
          fail("integer literal out of range", t);
        }
        return e;
      }
      case jv::TokKind::StringLiteral: {
        advance();
        auto e = make(Expr::Kind::StringLit, t.line);
        e->str_value = jv::string_literal_value(t);
        return e;
      }
      case jv::TokKind::FloatLiteral:
        unsupported("floating-point literals", t);
      case jv::TokKind::CharLiteral:
        unsupported("char literals", t);
      default:
        break;
    }
    if (t.is_keyword("true") || t.is_keyword("false")) {
      advance();
      auto e = make(Expr::Kind::BoolLit, t.line);
      e->bool_value = t.is_keyword("true");
      return e;
    }
    if (t.is_keyword("null")) {
      advance();
      return make(Expr::Kind::NullLit, t.line);
    }
    if (t.is_keyword("this")) {
      advance();
      return make(Expr::Kind::This, t.line);
    }
    if (t.is_keyword("new")) {
      advance();
      auto e = make(Expr::Kind::New, t.line);
      e->new_type = parse_type();
      e->args = parse_args();
      return e;
    }
    if (t.is("(")) {
      advance();
      ExprPtr inner = parse_expr();
      expect(")");
      return inner;
    }
    if (t.kind == jv::TokKind::Identifier) {
      advance();
      if (at("(")) {
        auto call = make(Expr::Kind::Call, t.line);
        call->name = std::string(t.text);
        call->args = parse_args();
        return call;
      }
      auto e = make(Expr::Kind::Name, t.line);
      e->name = std::string(t.text);
      return e;
    }
    fail("expected expression, found '" + std::string(t.text) + "'", t);
  }

  static ExprPtr make(Expr::Kind kind, int line) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->line = line;
    return e;
  }

  static ExprPtr make_binary(const std::string& op, ExprPtr lhs, ExprPtr rhs,
                             int line) {
    auto e = make(Expr::Kind::Binary, line);
    e->name = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
  }

  std::string source_name_;
  std::vector<jv::Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Unit parse_unit(std::string_view source, const std::string& source_name) {
  return Parser(source, source_name).parse();
}

}  // namespace mergeprobe::mjava
