// Normal-form single-tape nondeterministic Turing machines.
//
// States are numbered 0, 1, ...; state 0 is initial and state 1 is the only
// accepting state. A deterministic state either moves or writes on each
// scanned symbol; a nondeterministic state only chooses its successor. The
// machine accepts by trying to move left from cell 1 while in state 1.

#ifndef TMLAB_MACHINE_HPP_
#define TMLAB_MACHINE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tmlab {

using Symbol = std::uint16_t;
using StateId = std::uint32_t;

// The blank "0" always has index 0 in a machine's alphabet.
inline constexpr Symbol kBlank = 0;
inline constexpr StateId kInitialState = 0;
inline constexpr StateId kAcceptState = 1;

enum class Direction : int { kLeft = -1, kRight = +1 };

inline int sign(Direction d) { return static_cast<int>(d); }
inline Direction opposite(Direction d) {
  return d == Direction::kLeft ? Direction::kRight : Direction::kLeft;
}

// A deterministic rule. Well-formed rules carry exactly one of `move` and
// `write`; the struct can hold both so that malformed machines are
// representable and reportable by validate_normal_form().
struct DetRule {
  StateId next = 0;
  std::optional<Direction> move;
  std::optional<Symbol> write;

  static DetRule Move(Direction d, StateId next) { return {next, d, std::nullopt}; }
  static DetRule Write(Symbol s, StateId next) { return {next, std::nullopt, s}; }

  friend bool operator==(const DetRule&, const DetRule&) = default;
};

struct Machine {
  std::string name;
  StateId state_count = 0;
  std::vector<std::string> alphabet;  // alphabet[kBlank] == "0"
  std::map<std::pair<StateId, Symbol>, DetRule> rules;
  std::map<StateId, std::vector<StateId>> branches;

  const DetRule* rule(StateId q, Symbol s) const {
    auto it = rules.find({q, s});
    return it == rules.end() ? nullptr : &it->second;
  }
  const std::vector<StateId>* branch_list(StateId q) const {
    auto it = branches.find(q);
    return it == branches.end() ? nullptr : &it->second;
  }
  bool is_nondeterministic(StateId q) const { return branches.contains(q); }
  std::optional<Symbol> symbol_id(std::string_view token) const;
  const std::string& symbol_name(Symbol s) const { return alphabet.at(s); }

  friend bool operator==(const Machine&, const Machine&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Parses the line-oriented machine format:
//
//   machine <name>
//   states <count>
//   alphabet <sym> <sym> ...        (must include 0)
//   det <q> <s> move L|R <q'>
//   det <q> <s> write <s'> <q'>
//   nondet <q> <q1> <q2> [...]
//
// `#` starts a comment. Throws ParseError on any syntax or invariant error.
Machine parse_machine(std::string_view text);

// Inverse of parse_machine (up to comments and whitespace).
std::string format_machine(const Machine& m);

struct Violation {
  std::string message;
  std::optional<StateId> state;
  std::optional<Symbol> symbol;
};

// Empty iff every normal-form invariant holds.
std::vector<Violation> validate_normal_form(const Machine& m);

// Splits an input string into symbols of `m`. Whitespace-separated tokens are
// used when the text contains whitespace; otherwise each character is one
// symbol. Throws std::invalid_argument for symbols outside the alphabet.
std::vector<Symbol> parse_input(const Machine& m, std::string_view text);
std::string format_input(const Machine& m, const std::vector<Symbol>& w);

}  // namespace tmlab

#endif  // TMLAB_MACHINE_HPP_
