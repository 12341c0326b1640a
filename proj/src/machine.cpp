#include "tmlab/machine.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "text_format.hpp"

namespace tmlab {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

std::optional<Symbol> Machine::symbol_id(std::string_view token) const {
  auto it = std::find(alphabet.begin(), alphabet.end(), token);
  if (it == alphabet.end()) return std::nullopt;
  return static_cast<Symbol>(it - alphabet.begin());
}

Machine parse_machine(std::string_view text) {
  using namespace detail;
  Header h = parse_header(tokenize(text));
  Machine m;
  m.name = h.name;
  m.state_count = h.state_count;
  m.alphabet = h.alphabet;

  for (const Line& line : h.body) {
    const Token& head = line.tokens.front();
    if (head.text == "det") {
      if (line.tokens.size() < 2) throw ParseError(line.number, head.column, "incomplete 'det' rule");
      const StateId q = parse_state(line.tokens.at(1), m.state_count, line.number);
      if (line.tokens.size() < 4) {
        throw ParseError(line.number, head.column, "incomplete 'det' rule");
      }
      const Symbol s = parse_symbol(line.tokens[2], m.alphabet, line.number);
      const Token& verb = line.tokens[3];
      DetRule rule;
      if (verb.text == "move") {
        expect_arity(line, 6, "det <q> <s> move L|R <q'>");
        const Token& dir = line.tokens[4];
        if (dir.text == "L") {
          rule.move = Direction::kLeft;
        } else if (dir.text == "R") {
          rule.move = Direction::kRight;
        } else {
          throw ParseError(line.number, dir.column, "direction must be L or R");
        }
        rule.next = parse_state(line.tokens[5], m.state_count, line.number);
      } else if (verb.text == "write") {
        expect_arity(line, 6, "det <q> <s> write <s'> <q'>");
        rule.write = parse_symbol(line.tokens[4], m.alphabet, line.number);
        rule.next = parse_state(line.tokens[5], m.state_count, line.number);
      } else {
        throw ParseError(line.number, verb.column, "expected 'move' or 'write'");
      }
      if (m.branches.contains(q)) {
        throw ParseError(line.number, line.tokens[1].column,
                         "state " + std::to_string(q) + " is both deterministic and nondeterministic");
      }
      if (!m.rules.emplace(std::pair{q, s}, rule).second) {
        throw ParseError(line.number, line.tokens[2].column,
                         "duplicate rule for state " + std::to_string(q) + " on '" +
                             m.alphabet[s] + "'");
      }
    } else if (head.text == "nondet") {
      if (line.tokens.size() < 2) throw ParseError(line.number, head.column, "incomplete 'nondet' rule");
      const StateId q = parse_state(line.tokens[1], m.state_count, line.number);
      if (line.tokens.size() < 4) {
        throw ParseError(line.number, line.tokens[1].column,
                         "nondeterministic state needs at least two successors");
      }
      std::vector<StateId> succ;
      for (std::size_t i = 2; i < line.tokens.size(); ++i) {
        succ.push_back(parse_state(line.tokens[i], m.state_count, line.number));
      }
      auto first_det = m.rules.lower_bound({q, 0});
      if (first_det != m.rules.end() && first_det->first.first == q) {
        throw ParseError(line.number, line.tokens[1].column,
                         "state " + std::to_string(q) + " is both deterministic and nondeterministic");
      }
      if (!m.branches.emplace(q, std::move(succ)).second) {
        throw ParseError(line.number, line.tokens[1].column,
                         "duplicate branch list for state " + std::to_string(q));
      }
    } else {
      throw ParseError(line.number, head.column, "unknown directive '" + head.text + "'");
    }
  }
  return m;
}

std::string format_machine(const Machine& m) {
  std::ostringstream out;
  out << "machine " << m.name << "\n";
  out << "states " << m.state_count << "\n";
  out << "alphabet";
  for (const auto& s : m.alphabet) out << ' ' << s;
  out << "\n";
  for (const auto& [key, rule] : m.rules) {
    out << "det " << key.first << ' ' << m.alphabet.at(key.second);
    if (rule.move) {
      out << " move " << (*rule.move == Direction::kLeft ? 'L' : 'R');
    } else if (rule.write) {
      out << " write " << m.alphabet.at(*rule.write);
    }
    out << ' ' << rule.next << "\n";
  }
  for (const auto& [q, succ] : m.branches) {
    out << "nondet " << q;
    for (StateId s : succ) out << ' ' << s;
    out << "\n";
  }
  return out.str();
}

std::vector<Violation> validate_normal_form(const Machine& m) {
  std::vector<Violation> out;
  if (m.state_count < 2) {
    out.push_back({"machine needs at least the initial and accepting states", {}, {}});
  }
  if (m.alphabet.empty() || m.alphabet[kBlank] != "0") {
    out.push_back({"alphabet must contain the blank 0 at index 0", {}, {}});
  }
  for (const auto& [key, rule] : m.rules) {
    const auto [q, s] = key;
    const std::string where = "state " + std::to_string(q) + " on symbol " +
                              (s < m.alphabet.size() ? "'" + m.alphabet[s] + "'"
                                                     : "#" + std::to_string(s));
    if (q >= m.state_count) out.push_back({where + ": state out of range", q, s});
    if (s >= m.alphabet.size()) out.push_back({where + ": symbol out of range", q, s});
    if (rule.next >= m.state_count) out.push_back({where + ": next state out of range", q, s});
    if (rule.move && rule.write) {
      out.push_back({where + ": rule both moves and writes", q, s});
    } else if (!rule.move && !rule.write) {
      out.push_back({where + ": rule neither moves nor writes", q, s});
    }
    if (rule.write && *rule.write >= m.alphabet.size()) {
      out.push_back({where + ": written symbol out of range", q, s});
    }
    if (m.branches.contains(q)) {
      out.push_back({"state " + std::to_string(q) +
                         " has both deterministic rules and nondeterministic branches",
                     q, s});
    }
  }
  for (const auto& [q, succ] : m.branches) {
    if (q >= m.state_count) out.push_back({"state " + std::to_string(q) + ": out of range", q, {}});
    if (succ.size() < 2) {
      out.push_back({"state " + std::to_string(q) + ": branch list needs at least two successors",
                     q, {}});
    }
    for (StateId s : succ) {
      if (s >= m.state_count) {
        out.push_back({"state " + std::to_string(q) + ": successor " + std::to_string(s) +
                           " out of range",
                       q, {}});
      }
    }
  }
  return out;
}

std::vector<Symbol> parse_input(const Machine& m, std::string_view text) {
  std::vector<Symbol> w;
  auto add = [&](std::string_view tok) {
    auto id = m.symbol_id(tok);
    if (!id) throw std::invalid_argument("input symbol '" + std::string(tok) + "' not in alphabet");
    w.push_back(*id);
  };
  bool spaced = std::any_of(text.begin(), text.end(),
                            [](unsigned char c) { return std::isspace(c); });
  if (!spaced) {
    for (std::size_t i = 0; i < text.size(); ++i) add(text.substr(i, 1));
    return w;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) add(text.substr(start, i - start));
  }
  return w;
}

std::string format_input(const Machine& m, const std::vector<Symbol>& w) {
  bool single = std::all_of(w.begin(), w.end(),
                            [&](Symbol s) { return m.alphabet.at(s).size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single && i > 0) out += ' ';
    out += m.alphabet.at(w[i]);
  }
  return out;
}

}  // namespace tmlab
