// Line tokenizer and header handling shared by the machine file formats.

#ifndef TMLAB_SRC_TEXT_FORMAT_HPP_
#define TMLAB_SRC_TEXT_FORMAT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmlab/machine.hpp"

namespace tmlab::detail {

struct Token {
  std::string text;
  int column = 1;  // 1-based
};

struct Line {
  int number = 1;  // 1-based
  std::vector<Token> tokens;
};

// Splits into non-empty lines with comments removed.
std::vector<Line> tokenize(std::string_view text);

// Collects the `machine`, `states` and `alphabet` directives. Rule lines are
// handed back through `body` in file order.
struct Header {
  std::string name;
  StateId state_count = 0;
  std::vector<std::string> alphabet;  // blank first
  std::vector<Line> body;
};

Header parse_header(const std::vector<Line>& lines);

StateId parse_state(const Token& tok, StateId state_count, int line);
Symbol parse_symbol(const Token& tok, const std::vector<std::string>& alphabet,
                    int line);
void expect_arity(const Line& line, std::size_t count, const char* form);

}  // namespace tmlab::detail

#endif  // TMLAB_SRC_TEXT_FORMAT_HPP_
