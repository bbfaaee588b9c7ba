#include "mergeprobe/java/lexer.hpp"

#include <array>
#include <cctype>

namespace mergeprobe::java {
namespace {

constexpr std::array<std::string_view, 54> kKeywords = {
    "abstract",   "assert",       "boolean",  "break",      "byte",
    "case",       "catch",        "char",     "class",      "const",
    "continue",   "default",      "do",       "double",     "else",
    "enum",       "extends",      "final",    "finally",    "float",
    "for",        "goto",         "if",       "implements", "import",
    "instanceof", "int",          "interface", "long",      "native",
    "new",        "package",      "private",  "protected",  "public",
    "return",     "short",        "static",   "strictfp",   "super",
    "switch",     "synchronized", "this",     "throw",      "throws",
    "transient",  "try",          "var",      "void",       "volatile",
    "while",      "true",         "false",    "null",
};

// Multi-character operators, longest first so greedy matching works.
constexpr std::array<std::string_view, 36> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->",  "::",  "==",  "!=",
    "<=",   ">=",  "&&",  "||",  "++",  "--",  "+=",  "-=",  "*=",
    "/=",   "%=",  "&=",  "|=",  "^=",  "<<",  "+",   "-",   "*",
    "/",    "%",   "=",   "<",   ">",   "!",   "~",   "&",   "|",
};

constexpr std::string_view kSinglePunct = "^?:;,.(){}[]@";

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool ident_part(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (skip_trivia(), pos_ < src_.size()) {
      out.push_back(next_token());
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        int start_line = line_, start_col = col_;
        advance();
        advance();
        while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '/')) advance();
        if (pos_ >= src_.size()) {
          throw LexError("unterminated block comment", start_line, start_col);
        }
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token make(TokKind kind, std::size_t start, int line, int col) const {
    return Token{kind, src_.substr(start, pos_ - start), start, line, col};
  }

  Token next_token() {
    std::size_t start = pos_;
    int line = line_, col = col_;
    char c = src_[pos_];

    if (ident_start(c)) {
      while (pos_ < src_.size() && ident_part(src_[pos_])) advance();
      auto text = src_.substr(start, pos_ - start);
      return Token{is_java_keyword(text) ? TokKind::Keyword : TokKind::Identifier,
                   text, start, line, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return lex_number(start, line, col);
    }
    if (c == '"') {
      if (peek(1) == '"' && peek(2) == '"') return lex_text_block(start, line, col);
      return lex_string(start, line, col);
    }
    if (c == '\'') return lex_char(start, line, col);

    for (auto op : kOperators) {
      if (src_.compare(pos_, op.size(), op) == 0) {
        for (std::size_t i = 0; i < op.size(); ++i) advance();
        return make(TokKind::Punct, start, line, col);
      }
    }
    if (kSinglePunct.find(c) != std::string_view::npos) {
      advance();
      return make(TokKind::Punct, start, line, col);
    }
    throw LexError(std::string("unexpected character '") + c + "'", line, col);
  }

  Token lex_number(std::size_t start, int line, int col) {
    bool is_float = false;
    if (src_[pos_] == '0' && (peek(1) == 'x' || peek(1) == 'X' ||
                              peek(1) == 'b' || peek(1) == 'B')) {
      advance();
      advance();
      while (pos_ < src_.size() &&
             (std::isxdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        advance();
      }
    } else {
      auto digits = [&] {
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          advance();
        }
      };
      digits();
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        is_float = true;
        advance();
        digits();
      }
      if (peek() == 'e' || peek() == 'E') {
        is_float = true;
        advance();
        if (peek() == '+' || peek() == '-') advance();
        digits();
      }
    }
    if (peek() == 'f' || peek() == 'F' || peek() == 'd' || peek() == 'D') {
      is_float = true;
      advance();
    } else if (peek() == 'l' || peek() == 'L') {
      advance();
    }
    return make(is_float ? TokKind::FloatLiteral : TokKind::IntLiteral, start, line, col);
  }

  Token lex_string(std::size_t start, int line, int col) {
    advance();  // opening quote
    while (pos_ < src_.size() && src_[pos_] != '"') {
      if (src_[pos_] == '\n') throw LexError("unterminated string literal", line, col);
      if (src_[pos_] == '\\') advance();
      if (pos_ < src_.size()) advance();
    }
    if (pos_ >= src_.size()) throw LexError("unterminated string literal", line, col);
    advance();  // closing quote
    return make(TokKind::StringLiteral, start, line, col);
  }

  Token lex_text_block(std::size_t start, int line, int col) {
    advance();
    advance();
    advance();
    while (pos_ < src_.size() &&
           !(src_[pos_] == '"' && peek(1) == '"' && peek(2) == '"')) {
      if (src_[pos_] == '\\') advance();
      if (pos_ < src_.size()) advance();
    }
    if (pos_ >= src_.size()) throw LexError("unterminated text block", line, col);
    advance();
    advance();
    advance();
    return make(TokKind::StringLiteral, start, line, col);
  }

  Token lex_char(std::size_t start, int line, int col) {
    advance();  // opening quote
    while (pos_ < src_.size() && src_[pos_] != '\'') {
      if (src_[pos_] == '\n') throw LexError("unterminated char literal", line, col);
      if (src_[pos_] == '\\') advance();
      if (pos_ < src_.size()) advance();
    }
    if (pos_ >= src_.size()) throw LexError("unterminated char literal", line, col);
    advance();  // closing quote
    return make(TokKind::CharLiteral, start, line, col);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

bool is_java_keyword(std::string_view word) {
  for (auto kw : kKeywords) {
    if (kw == word) return true;
  }
  return false;
}

std::vector<Token> lex(std::string_view source) { return Lexer(source).run(); }

bool try_lex(std::string_view source, std::vector<Token>* out) {
  try {
    auto toks = lex(source);
    if (out) *out = std::move(toks);
    return true;
  } catch (const LexError&) {
    return false;
  }
}

std::string string_literal_value(const Token& tok) {
  std::string_view body = tok.text;
  if (body.size() >= 6 && body.substr(0, 3) == "\"\"\"") {
    body = body.substr(3, body.size() - 6);
  } else if (body.size() >= 2) {
    body = body.substr(1, body.size() - 2);
  }
  std::string out;
  out.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c != '\\' || i + 1 >= body.size()) {
      out.push_back(c);
      continue;
    }
    char esc = body[++i];
    switch (esc) {
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      case 'b': out.push_back('\b'); break;
      case 'f': out.push_back('\f'); break;
      case '0': out.push_back('\0'); break;
      case '\\': out.push_back('\\'); break;
      case '\'': out.push_back('\''); break;
      case '"': out.push_back('"'); break;
      case 'u': {
        unsigned code = 0;
        std::size_t j = i + 1;
        for (int k = 0; k < 4 && j < body.size(); ++k, ++j) {
          char h = body[j];
          if (!std::isxdigit(static_cast<unsigned char>(h))) break;
          code = code * 16 + static_cast<unsigned>(
                                 std::isdigit(static_cast<unsigned char>(h))
                                     ? h - '0'
                                     : std::tolower(static_cast<unsigned char>(h)) - 'a' + 10);
        }
        if (j == i + 5) {
          i = j - 1;
          if (code < 0x80) {
            out.push_back(static_cast<char>(code));
          } else if (code < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (code >> 6)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
          } else {
            out.push_back(static_cast<char>(0xE0 | (code >> 12)));
            out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
          }
        } else {
          out.push_back(esc);
        }
        break;
      }
      default:
        out.push_back(esc);
        break;
    }
  }
  return out;
}

}  // namespace mergeprobe::java
