// Simulation of one phase: the machine runs on a single block laid out
// between sentinels <X> until it steps onto a sentinel or halts.

#ifndef TMLAB_PHASE_SIM_HPP_
#define TMLAB_PHASE_SIM_HPP_

#include <optional>
#include <vector>

#include "tmlab/crossing.hpp"
#include "tmlab/machine.hpp"

namespace tmlab {

// Sentinel symbols; never members of a machine alphabet.
inline constexpr Symbol kLeftSentinel = 0xFFFE;
inline constexpr Symbol kRightSentinel = 0xFFFF;

struct BlockContent {
  std::vector<Symbol> symbols;

  std::size_t size() const { return symbols.size(); }
  friend bool operator==(const BlockContent&, const BlockContent&) = default;
  friend auto operator<=>(const BlockContent&, const BlockContent&) = default;
};

enum class RejectReason {
  kHaltedInside,     // the machine stopped before reaching a sentinel
  kWrongState,       // exit state differs from the out-descriptor's
  kWrongExitLeft,    // stepped onto < but the out-descriptor goes right
  kWrongExitRight,   // stepped onto > but the out-descriptor goes left
  kStepCapExceeded,  // some branch was still running at the step cap
};

const char* to_string(RejectReason r);

enum class ExitSide { kLeft, kRight, kNone };

// One way a phase can end.
struct PhaseExit {
  ExitSide side = ExitSide::kNone;
  bool capped = false;        // still running at the cap (side is kNone)
  StateId state = 0;          // state carried across the sentinel, or halting state
  BlockContent content;       // X*
  long steps = 0;
  std::vector<int> choices;   // lexicographically smallest among minimum-step runs
};

// Every distinct (X*, exit side, state) the machine can reach from entry
// descriptor `in` on block contents `x`, each with a minimum-step choice
// sequence, ordered by choice sequence. A single capped entry is appended if
// some run is still inside the block after `step_cap` steps. Throws
// MalformedStory if `in` does not enter `block`.
std::vector<PhaseExit> enumerate_phase_exits(const Machine& m, long block, const Descriptor& in,
                                             const BlockContent& x, long step_cap);

struct PhaseOutcome {
  bool accepted = false;
  std::optional<BlockContent> result;  // X*, present iff accepted
  long steps = 0;
  std::optional<RejectReason> reject_reason;
  std::vector<int> choices;
  BlockContent content;  // block contents when the phase ended
  ExitSide side = ExitSide::kNone;
  StateId exit_state = 0;
};

// Judges one exit against the out-descriptor of the phase.
PhaseOutcome classify_exit(const PhaseExit& exit, long block, const Descriptor& out);

// The `phase` machine: all outcomes of simulating the machine on block
// contents `x` from `in`, judged against `out`. Throws MalformedStory unless
// out.phase == in.phase + 1, `in` enters its block and `out` crosses one of
// that block's two milestones.
std::vector<PhaseOutcome> simulate_phase(const Machine& m, const Descriptor& in,
                                         const Descriptor& out, const BlockContent& x,
                                         long step_cap);

// Checks the descriptor pair and returns the block it concerns.
long phase_block(const Descriptor& in, const Descriptor& out);

}  // namespace tmlab

#endif  // TMLAB_PHASE_SIM_HPP_
