// Direct simulation of normal-form machines: single steps, traced runs and an
// exhaustive bounded search over nondeterministic choices.

#ifndef TMLAB_SIMULATE_HPP_
#define TMLAB_SIMULATE_HPP_

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tmlab/machine.hpp"

namespace tmlab {

class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Configuration {
  StateId state = kInitialState;
  long head = 1;              // cells are numbered from 1
  std::vector<Symbol> tape;   // tape[h - 1] holds cell h; blank past the end

  Symbol read(long cell) const {
    return cell >= 1 && static_cast<std::size_t>(cell) <= tape.size() ? tape[cell - 1] : kBlank;
  }
  void write(long cell, Symbol s);
  // Key identifying the configuration up to trailing blanks.
  std::string key() const;

  friend bool operator==(const Configuration& a, const Configuration& b);
};

Configuration initial_configuration(std::span<const Symbol> input);

enum class HaltReason { kAcceptingExit, kLeftEdge, kNoRule };

struct Halt {
  HaltReason reason;
  StateId state;  // state in which the machine stopped
};

using StepResult = std::variant<Configuration, Halt>;

// Applies exactly one rule. `choice` must be given iff c.state is
// nondeterministic, and then indexes its branch list.
StepResult step(const Machine& m, const Configuration& c,
                std::optional<int> choice = std::nullopt);

enum class ActionKind { kBranch, kMove, kWrite };

// One executed step, recorded sparsely: the configuration before the step is
// (state, head) plus the tape as left by earlier writes.
struct TraceStep {
  StateId state = 0;
  long head = 1;
  Symbol scanned = kBlank;
  ActionKind kind = ActionKind::kMove;
  int choice = -1;                       // branch index for kBranch
  Direction dir = Direction::kRight;     // for kMove
  Symbol written = kBlank;               // for kWrite
  StateId next = 0;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

enum class Outcome { kAccepted, kHaltedRejecting, kTimeBoundExceeded };

struct ResourceUsage {
  long time = 0;   // steps executed; a final attempt to leave the tape is free
  long space = 0;  // distinct cells visited

  friend bool operator==(const ResourceUsage&, const ResourceUsage&) = default;
};

struct Trace {
  std::vector<Symbol> input;
  std::vector<TraceStep> steps;
  Outcome outcome = Outcome::kTimeBoundExceeded;
  std::optional<HaltReason> halt;
  Configuration final_config;

  ResourceUsage usage() const;
  std::vector<int> choices() const;
  // True if the last step is an attempt to move left from cell 1.
  bool ends_at_left_edge() const;
};

// Runs `m` on `input`, asking `chooser(state, branch_count)` at every
// nondeterministic state, for at most `max_time` steps.
using Chooser = std::function<int(StateId, int)>;
Trace run_trace(const Machine& m, std::span<const Symbol> input, const Chooser& chooser,
                long max_time);

// Replays a recorded choice sequence. Throws std::invalid_argument if the
// sequence runs out or has unused entries when the run ends.
Trace replay(const Machine& m, std::span<const Symbol> input, std::span<const int> choices,
             long max_time);

struct DirectResult {
  bool accepted = false;
  std::optional<Trace> witness;
  std::optional<ResourceUsage> usage;
  long explored = 0;
};

inline constexpr long kDefaultNodeCap = 10'000'000;

// Exhaustive search over all computations of at most `max_time` steps. The
// witness is a minimum-time accepting trace; ties go to the lexicographically
// smallest choice sequence. Throws ResourceCapExceeded past `node_cap`
// expanded configurations.
DirectResult run_direct(const Machine& m, std::span<const Symbol> input, long max_time,
                        long node_cap = kDefaultNodeCap);

}  // namespace tmlab

#endif  // TMLAB_SIMULATE_HPP_
