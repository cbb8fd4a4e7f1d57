#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "densitylab/set_expr.hpp"

namespace densitylab {

// Parse failure with 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message + " at " + std::to_string(line) + ":" +
                           std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Grammar (whitespace-insensitive):
//   expr   := empty | full | fin{n,...} | ap(a,d) | blocks(scheme, expr)
//           | codes(branch[, mult]) | union(e,e) | inter(e,e) | diff(e,e)
//           | compl(e) | shift(e,k)
//   scheme := geo(b[,c]) | poly(e) | tri | lin(c)
//   branch := bits '|' bits    e.g. 01|101 (head may be empty)
SetExpr parse_expr(std::string_view text);
IntervalScheme parse_scheme(std::string_view text);

// Canonical rendering; parse_expr(print_expr(e)) == e structurally.
std::string print_expr(const SetExpr& e);
std::string print_scheme(const IntervalScheme& s);

}  // namespace densitylab
