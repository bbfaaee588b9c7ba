#ifndef MERGEPROBE_MJAVA_PARSER_HPP_
#define MERGEPROBE_MJAVA_PARSER_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

#include "mergeprobe/mjava/ast.hpp"

namespace mergeprobe::mjava {

/// Raised on source outside the supported subset as well as plain syntax
/// errors; message carries line/column.
class SubsetError : public std::runtime_error {
 public:
  SubsetError(const std::string& message, int line, int column)
      : std::runtime_error(message), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses one source file into a full AST. Throws SubsetError.
Unit parse_unit(std::string_view source, const std::string& source_name);

}  // namespace mergeprobe::mjava

#endif  // MERGEPROBE_MJAVA_PARSER_HPP_
