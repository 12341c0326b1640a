// Conventional single-tape NTMs and their conversion to normal form.

#ifndef TMLAB_NORMALIZE_HPP_
#define TMLAB_NORMALIZE_HPP_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tmlab/machine.hpp"

namespace tmlab {

enum class HeadMove : int { kLeft = -1, kStay = 0, kRight = +1 };

struct GeneralTransition {
  StateId next = 0;
  Symbol write = kBlank;
  HeadMove move = HeadMove::kStay;

  friend bool operator==(const GeneralTransition&, const GeneralTransition&) = default;
};

// A conventional machine: each step writes, moves (or stays) and changes
// state, possibly with several alternatives per (state, symbol). State 0 is
// initial; the machine accepts on entering state 1. Moving left from cell 1
// halts without accepting.
struct GeneralMachine {
  std::string name;
  StateId state_count = 0;
  std::vector<std::string> alphabet;  // alphabet[kBlank] == "0"
  std::map<std::pair<StateId, Symbol>, std::vector<GeneralTransition>> transitions;
};

// Same header lines as the normal format, with rule lines
//   trans <q> <s> <s'> L|R|S <q'>
// Repeating (q, s) adds nondeterministic alternatives.
GeneralMachine parse_general_machine(std::string_view text);

struct NormalizeResult {
  Machine machine;
  // Maximum normal-form steps used to simulate one general step.
  int step_blowup = 1;

  // A time bound under which the normal machine accepts every input the
  // general machine accepts within `general_time` steps: the per-step blowup
  // plus the final sweep back to cell 1.
  long scaled_time_bound(long general_time) const {
    return step_blowup * general_time + general_time;
  }
};

inline constexpr StateId kDefaultStateCap = 1u << 16;

// Throws std::invalid_argument if the alphabet lacks "0" and
// std::length_error if more than `state_cap` states would be needed.
NormalizeResult normalize(const GeneralMachine& g, StateId state_cap = kDefaultStateCap);

// Exhaustive bounded search for an accepting computation of `g`.
bool run_general(const GeneralMachine& g, std::span<const Symbol> input, long max_time,
                 long node_cap = 10'000'000);

}  // namespace tmlab

#endif  // TMLAB_NORMALIZE_HPP_
