// The `check` machine: threads a block's contents through every visit in its
// block story, accepting iff each visit can reach its out-descriptor.

#ifndef TMLAB_BLOCK_CHECK_HPP_
#define TMLAB_BLOCK_CHECK_HPP_

#include <optional>
#include <span>
#include <vector>

#include "tmlab/crossing.hpp"
#include "tmlab/machine.hpp"
#include "tmlab/phase_sim.hpp"

namespace tmlab {

// X(j,0): the cells of block j under `partition` as they hold `w` before
// the machine starts, blank elsewhere.
BlockContent initial_block_content(long block, const Partition& partition,
                                   std::span<const Symbol> w);

enum class CheckFailure { kNone, kIncoherent, kBudgetExhausted };

struct BlockCheckResult {
  bool accepted = false;
  std::optional<std::vector<BlockContent>> content_chain;  // X(j,0), X(j,1), ...
  long steps_consumed = 0;
  std::vector<long> phase_steps;               // per visit
  std::vector<std::vector<int>> phase_choices;  // per visit
  CheckFailure failure = CheckFailure::kNone;
};

// Accepted results, one per reachable final content (keeping the cheapest
// chain), in the order the visits' outcomes produce them. When nothing
// survives, a single rejected result says whether the budget ran out.
// Throws MalformedStory if the story is not a sequence of complete
// (in, out) visits to its block.
std::vector<BlockCheckResult> check_block(const Machine& m, const BlockStory& story,
                                          const BlockContent& x0, long budget);

}  // namespace tmlab

#endif  // TMLAB_BLOCK_CHECK_HPP_
