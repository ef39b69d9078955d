#ifndef EXPCOMB_LEXER_HPP
#define EXPCOMB_LEXER_HPP

#include <cctype>
#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "entry.hpp"
#include "error.hpp"

namespace expcomb::detail {

struct Token {
  std::string text;
  std::size_t pos;
};

/// Splits on whitespace; parentheses are tokens of their own.
inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(' || c == ')') {
      out.push_back({std::string(1, c), i});
      ++i;
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '(' &&
             s[j] != ')')
        ++j;
      out.push_back({std::string(s.substr(i, j - i)), i});
      i = j;
    }
  }
  return out;
}

inline bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t k = start; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

inline Int expect_int(const Token& t) {
  Int v;
  if (!parse_int(t.text, v)) throw ParseError("expected an integer, got '" + t.text + "'", t.pos);
  return v;
}

/// "k/2" with k odd.
inline bool parse_half(std::string_view s, Entry& out) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos || s.substr(slash + 1) != "2") return false;
  Int num;
  if (!parse_int(s.substr(0, slash), num) || num % 2 == 0) return false;
  out = Entry::from_twice(num);
  return true;
}

}  // namespace expcomb::detail

#endif
