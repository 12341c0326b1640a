// Shared helpers for the test binaries: corpus loading, word enumeration and
// a few hand-built machines.

#ifndef TMLAB_TESTS_SUPPORT_HPP_
#define TMLAB_TESTS_SUPPORT_HPP_

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tmlab/machine.hpp"
#include "tmlab/normalize.hpp"

namespace testing {

using namespace tmlab;

inline const std::vector<std::string> kCorpus = {"always_accept", "sweep_right", "palindrome",
                                                 "anbn", "contains_a"};
inline const std::vector<std::string> kGeneralCorpus = {"ends_with_b", "guess_aa",
                                                        "anbn_marking", "swap_first"};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_path(const std::string& name) {
  return std::string(TMLAB_CORPUS_DIR) + "/" + name + ".tm";
}

inline std::string general_path(const std::string& name) {
  return std::string(TMLAB_CORPUS_DIR) + "/general/" + name + ".tm";
}

inline Machine load_corpus(const std::string& name) { return parse_machine(slurp(corpus_path(name))); }

inline GeneralMachine load_general(const std::string& name) {
  return parse_general_machine(slurp(general_path(name)));
}

// Every word over `letters` of length 0..max_len, shortest first.
inline std::vector<std::string> words_upto(const std::string& letters, int max_len) {
  std::vector<std::string> out{""};
  std::vector<std::string> layer{""};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer) {
      for (char c : letters) next.push_back(w + c);
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline long scale_for(const std::string& w) { return std::max<long>(2, static_cast<long>(w.size())); }

// A deterministic walk over a blank tape: one state per move, ending in the
// accepting sweep state 1.
inline Machine walk_machine(const std::string& name, const std::string& moves) {
  Machine m;
  m.name = name;
  m.alphabet = {"0"};
  m.state_count = static_cast<StateId>(moves.size() + 1);
  StateId q = kInitialState;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const StateId next = i + 1 == moves.size() ? kAcceptState : static_cast<StateId>(i + 2);
    m.rules[{q, kBlank}] =
        DetRule::Move(moves[i] == 'R' ? Direction::kRight : Direction::kLeft, next);
    q = next;
  }
  m.rules[{kAcceptState, kBlank}] = DetRule::Move(Direction::kLeft, kAcceptState);
  return m;
}

// With n = 2 and P = 1 the walk out to cell 6, two turns there and the walk
// home crosses milestones nine times: k = 10 over r = 4 blocks.
inline Machine four_block_walk() { return walk_machine("four_block_walk", "RRRRRLRLLLLL"); }

// Out to cell 3 and back in n^2 = 4 moves: k(P) = 4 = n + 2 for both P.
inline Machine tight_walk_machine() { return walk_machine("tight_walk", "RRLL"); }

// A random normal-form machine over {0, a, b} in which every state is
// either branching or has a rule for most symbols.
inline Machine random_machine(std::mt19937& rng, StateId states, double nondet_share = 0.25) {
  Machine m;
  m.name = "random";
  m.alphabet = {"0", "a", "b"};
  m.state_count = states;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<StateId> any_state(0, states - 1);
  std::uniform_int_distribution<int> sym(0, 2);
  for (StateId q = 0; q < states; ++q) {
    if (q != kAcceptState && unit(rng) < nondet_share) {
      const int width = 2 + (unit(rng) < 0.3 ? 1 : 0);
      std::vector<StateId> succ;
      for (int i = 0; i < width; ++i) succ.push_back(any_state(rng));
      m.branches[q] = succ;
      continue;
    }
    for (Symbol s = 0; s < 3; ++s) {
      if (unit(rng) < 0.15) continue;
      const StateId next = any_state(rng);
      if (unit(rng) < 0.6) {
        m.rules[{q, s}] = DetRule::Move(unit(rng) < 0.5 ? Direction::kLeft : Direction::kRight, next);
      } else {
        m.rules[{q, s}] = DetRule::Write(static_cast<Symbol>(sym(rng)), next);
      }
    }
  }
  return m;
}

}  // namespace testing

#endif  // TMLAB_TESTS_SUPPORT_HPP_
