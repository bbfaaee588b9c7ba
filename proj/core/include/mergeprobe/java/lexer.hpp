#ifndef MERGEPROBE_JAVA_LEXER_HPP_
#define MERGEPROBE_JAVA_LEXER_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mergeprobe::java {

enum class TokKind {
  Identifier,
  Keyword,
  IntLiteral,
  FloatLiteral,
  StringLiteral,
  CharLiteral,
  Punct,
};

struct Token {
  TokKind kind;
  std::string_view text;   // verbatim slice of the source
  std::size_t offset = 0;  // byte offset of the first character
  int line = 1;
  int column = 1;

  bool is(std::string_view t) const { return text == t; }
  bool is_keyword(std::string_view t) const { return kind == TokKind::Keyword && text == t; }
};

struct LexError : std::runtime_error {
  LexError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg), line(line_), column(column_) {}
  int line;
  int column;
};

bool is_java_keyword(std::string_view word);

/// Tokenizes Java source. Comments and whitespace are skipped; string,
/// char, and text-block literals are single tokens. Throws LexError on
/// characters outside the language's lexical grammar.
std::vector<Token> lex(std::string_view source);

/// Like lex() but reports failure instead of throwing.
bool try_lex(std::string_view source, std::vector<Token>* out);

/// Decoded value of a string literal token (quotes stripped, escapes applied).
std::string string_literal_value(const Token& tok);

}  // namespace mergeprobe::java

#endif  // MERGEPROBE_JAVA_LEXER_HPP_
