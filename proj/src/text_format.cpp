#include "text_format.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace tmlab::detail {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && is_space(raw[i])) ++i;
      if (i == raw.size()) break;
      std::size_t start = i;
      while (i < raw.size() && !is_space(raw[i])) ++i;
      line.tokens.push_back({std::string(raw.substr(start, i - start)),
                             static_cast<int>(start) + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

StateId parse_state(const Token& tok, StateId state_count, int line) {
  unsigned long value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, tok.column, "expected a state id, got '" + tok.text + "'");
  }
  if (value >= state_count) {
    throw ParseError(line, tok.column,
                     "state " + tok.text + " out of range (states " +
                         std::to_string(state_count) + ")");
  }
  return static_cast<StateId>(value);
}

Symbol parse_symbol(const Token& tok, const std::vector<std::string>& alphabet,
                    int line) {
  auto it = std::find(alphabet.begin(), alphabet.end(), tok.text);
  if (it == alphabet.end()) {
    throw ParseError(line, tok.column, "symbol '" + tok.text + "' not in alphabet");
  }
  return static_cast<Symbol>(it - alphabet.begin());
}

void expect_arity(const Line& line, std::size_t count, const char* form) {
  if (line.tokens.size() != count) {
    int column = line.tokens.size() > count ? line.tokens[count].column
                                            : line.tokens.back().column;
    throw ParseError(line.number, column, std::string("expected '") + form + "'");
  }
}

Header parse_header(const std::vector<Line>& lines) {
  Header h;
  bool have_name = false;
  bool have_states = false;
  bool have_alphabet = false;
  for (const Line& line : lines) {
    const Token& head = line.tokens.front();
    if (head.text == "machine") {
      if (have_name) throw ParseError(line.number, head.column, "duplicate 'machine' line");
      expect_arity(line, 2, "machine <name>");
      h.name = line.tokens[1].text;
      have_name = true;
    } else if (head.text == "states") {
      if (have_states) throw ParseError(line.number, head.column, "duplicate 'states' line");
      expect_arity(line, 2, "states <count>");
      const Token& tok = line.tokens[1];
      unsigned long value = 0;
      auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
      if (ec != std::errc() || ptr != tok.text.data() + tok.text.size() || value < 2 ||
          value > 0xFFFFFFFFul) {
        throw ParseError(line.number, tok.column, "state count must be an integer >= 2");
      }
      h.state_count = static_cast<StateId>(value);
      have_states = true;
    } else if (head.text == "alphabet") {
      if (have_alphabet) throw ParseError(line.number, head.column, "duplicate 'alphabet' line");
      if (line.tokens.size() < 2) {
        throw ParseError(line.number, head.column, "expected 'alphabet <sym> ...'");
      }
      std::set<std::string> seen;
      bool has_blank = false;
      for (std::size_t i = 1; i < line.tokens.size(); ++i) {
        const Token& tok = line.tokens[i];
        if (!seen.insert(tok.text).second) {
          throw ParseError(line.number, tok.column, "duplicate symbol '" + tok.text + "'");
        }
        if (tok.text == "0") has_blank = true;
      }
      if (!has_blank) {
        throw ParseError(line.number, head.column, "alphabet must include the blank symbol 0");
      }
      if (seen.size() > 0xFFF0) {
        throw ParseError(line.number, head.column, "alphabet too large");
      }
      h.alphabet.push_back("0");
      for (std::size_t i = 1; i < line.tokens.size(); ++i) {
        if (line.tokens[i].text != "0") h.alphabet.push_back(line.tokens[i].text);
      }
      have_alphabet = true;
    } else {
      if (!have_states || !have_alphabet) {
        throw ParseError(line.number, head.column,
                         "'states' and 'alphabet' must precede rule lines");
      }
      h.body.push_back(line);
    }
  }
  if (!have_name) throw ParseError(1, 1, "missing 'machine' line");
  if (!have_states) throw ParseError(1, 1, "missing 'states' line");
  if (!have_alphabet) throw ParseError(1, 1, "missing 'alphabet' line");
  return h;
}

}  // namespace tmlab::detail
