#include "tmlab/normalize.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "text_format.hpp"
#include "tmlab/simulate.hpp"

namespace tmlab {

GeneralMachine parse_general_machine(std::string_view text) {
  using namespace detail;
  Header h = parse_header(tokenize(text));
  GeneralMachine g;
  g.name = h.name;
  g.state_count = h.state_count;
  g.alphabet = h.alphabet;
  for (const Line& line : h.body) {
    const Token& head = line.tokens.front();
    if (head.text != "trans") {
      throw ParseError(line.number, head.column, "unknown directive '" + head.text + "'");
    }
    expect_arity(line, 6, "trans <q> <s> <s'> L|R|S <q'>");
    const StateId q = parse_state(line.tokens[1], g.state_count, line.number);
    const Symbol s = parse_symbol(line.tokens[2], g.alphabet, line.number);
    GeneralTransition t;
    t.write = parse_symbol(line.tokens[3], g.alphabet, line.number);
    const Token& dir = line.tokens[4];
    if (dir.text == "L") {
      t.move = HeadMove::kLeft;
    } else if (dir.text == "R") {
      t.move = HeadMove::kRight;
    } else if (dir.text == "S") {
      t.move = HeadMove::kStay;
    } else {
      throw ParseError(line.number, dir.column, "direction must be L, R or S");
    }
    t.next = parse_state(line.tokens[5], g.state_count, line.number);
    auto& options = g.transitions[{q, s}];
    if (std::find(options.begin(), options.end(), t) != options.end()) {
      throw ParseError(line.number, head.column, "duplicate transition");
    }
    options.push_back(t);
  }
  return g;
}

namespace {

class Builder {
 public:
  Builder(const GeneralMachine& g, StateId cap) : cap_(cap) {
    m_.name = g.name;
    m_.alphabet = g.alphabet;
    m_.state_count = g.state_count;
    check_cap();
  }

  StateId fresh() {
    ++m_.state_count;
    check_cap();
    return m_.state_count - 1;
  }

  // State that moves in `dir` on any symbol and continues in `next`.
  StateId mover(StateId next, Direction dir) {
    auto key = std::pair{next, sign(dir)};
    if (auto it = movers_.find(key); it != movers_.end()) return it->second;
    StateId t = fresh();
    for (Symbol s = 0; s < m_.alphabet.size(); ++s) m_.rules[{t, s}] = DetRule::Move(dir, next);
    movers_.emplace(key, t);
    return t;
  }

  // Rule for `state` on scanned `s` performing one general transition.
  // Returns the number of normal steps it takes.
  int emit(StateId state, Symbol s, const GeneralTransition& t) {
    const bool writes = t.write != s;
    const bool moves = t.move != HeadMove::kStay;
    const auto dir = t.move == HeadMove::kLeft ? Direction::kLeft : Direction::kRight;
    if (writes && moves) {
      m_.rules[{state, s}] = DetRule::Write(t.write, mover(t.next, dir));
      return 2;
    }
    if (moves) {
      m_.rules[{state, s}] = DetRule::Move(dir, t.next);
    } else {
      m_.rules[{state, s}] = DetRule::Write(t.write, t.next);
    }
    return 1;
  }

  Machine& machine() { return m_; }

 private:
  void check_cap() const {
    if (m_.state_count > cap_) {
      throw std::length_error("normalization needs more than " + std::to_string(cap_) +
                              " states");
    }
  }

  Machine m_;
  StateId cap_;
  std::map<std::pair<StateId, int>, StateId> movers_;
};

// A state whose alternatives are the same pure state changes on every symbol
// is already a normal-form choice state.
std::optional<std::vector<StateId>> pure_choice(const GeneralMachine& g, StateId q) {
  std::optional<std::vector<StateId>> succ;
  for (Symbol s = 0; s < g.alphabet.size(); ++s) {
    auto it = g.transitions.find({q, s});
    if (it == g.transitions.end() || it->second.size() < 2) return std::nullopt;
    std::vector<StateId> here;
    for (const auto& t : it->second) {
      if (t.write != s || t.move != HeadMove::kStay) return std::nullopt;
      here.push_back(t.next);
    }
    if (succ && *succ != here) return std::nullopt;
    succ = std::move(here);
  }
  return succ;
}

}  // namespace

NormalizeResult normalize(const GeneralMachine& g, StateId state_cap) {
  if (std::find(g.alphabet.begin(), g.alphabet.end(), "0") == g.alphabet.end()) {
    throw std::invalid_argument("alphabet lacks the blank symbol 0");
  }
  if (g.alphabet.front() != "0") {
    throw std::invalid_argument("blank symbol 0 must come first in the alphabet");
  }
  if (g.state_count < 2) throw std::invalid_argument("machine needs at least two states");

  Builder b(g, state_cap);
  NormalizeResult result;
  for (Symbol s = 0; s < g.alphabet.size(); ++s) {
    b.machine().rules[{kAcceptState, s}] = DetRule::Move(Direction::kLeft, kAcceptState);
  }
  for (StateId q = 0; q < g.state_count; ++q) {
    if (q == kAcceptState) continue;
    if (auto succ = pure_choice(g, q)) {
      b.machine().branches[q] = std::move(*succ);
      continue;
    }
    for (Symbol s = 0; s < g.alphabet.size(); ++s) {
      auto it = g.transitions.find({q, s});
      if (it == g.transitions.end()) continue;
      const auto& options = it->second;
      if (options.size() == 1) {
        result.step_blowup = std::max(result.step_blowup, b.emit(q, s, options.front()));
        continue;
      }
      // Dispatch on the scanned symbol, then choose, then act.
      const StateId choose = b.fresh();
      b.machine().rules[{q, s}] = DetRule::Write(s, choose);
      std::vector<StateId> actors;
      for (const auto& t : options) {
        const StateId actor = b.fresh();
        actors.push_back(actor);
        result.step_blowup = std::max(result.step_blowup, 2 + b.emit(actor, s, t));
      }
      b.machine().branches[choose] = std::move(actors);
    }
  }
  result.machine = std::move(b.machine());
  return result;
}

bool run_general(const GeneralMachine& g, std::span<const Symbol> input, long max_time,
                 long node_cap) {
  std::vector<Configuration> frontier{initial_configuration(input)};
  std::unordered_set<std::string> seen{frontier.front().key()};
  long explored = 0;
  for (long depth = 0; depth < max_time && !frontier.empty(); ++depth) {
    std::vector<Configuration> next_frontier;
    for (const Configuration& c : frontier) {
      if (++explored > node_cap) {
        throw ResourceCapExceeded("general search exceeded " + std::to_string(node_cap) +
                                  " explored configurations");
      }
      auto it = g.transitions.find({c.state, c.read(c.head)});
      if (it == g.transitions.end()) continue;
      for (const auto& t : it->second) {
        if (t.move == HeadMove::kLeft && c.head == 1) continue;
        if (t.next == kAcceptState) return true;
        Configuration n = c;
        n.write(c.head, t.write);
        n.head += static_cast<int>(t.move);
        n.state = t.next;
        if (seen.insert(n.key()).second) next_frontier.push_back(std::move(n));
      }
    }
    frontier = std::move(next_frontier);
  }
  return false;
}

}  // namespace tmlab
