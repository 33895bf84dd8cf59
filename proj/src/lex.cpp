#include "tps/lex.hpp"

#include <cctype>

#include "tps/field.hpp"

namespace tps {

std::vector<Token> lex_poly(const std::string& src) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int pos = static_cast<int>(i);
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      out.push_back({Token::Number, src.substr(i, j - i), pos});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_'))
        ++j;
      out.push_back({Token::Ident, src.substr(i, j - i), pos});
      i = j;
      continue;
    }
    Token::Kind k;
    switch (c) {
      case '+': k = Token::Plus; break;
      case '-': k = Token::Minus; break;
      case '*': k = Token::Star; break;
      case '/': k = Token::Slash; break;
      case '^': k = Token::Caret; break;
      default:
        throw input_error("unexpected character '" + std::string(1, c) +
                          "' at position " + std::to_string(pos));
    }
    out.push_back({k, std::string(1, c), pos});
    ++i;
  }
  out.push_back({Token::End, "", static_cast<int>(src.size())});
  return out;
}

}  // namespace tps
