#pragma once

#include <string>
#include <vector>

namespace tps {

struct Token {
  enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, End };
  Kind kind;
  std::string text;
  int pos;  // byte offset in the source string, for error messages
};

// Tokenizes the shared polynomial grammar. Whitespace is skipped; any other
// unrecognized byte raises input_error with its position.
std::vector<Token> lex_poly(const std::string& src);

}  // namespace tps
