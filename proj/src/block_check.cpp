#include "tmlab/block_check.hpp"

#include <map>

namespace tmlab {

BlockContent initial_block_content(long block, const Partition& partition,
                                   std::span<const Symbol> w) {
  if (block < 1) throw std::invalid_argument("block index must be >= 1");
  BlockContent x;
  x.symbols.assign(partition.length(block), kBlank);
  const long first = partition.first_cell(block);
  for (long i = 0; i < partition.length(block); ++i) {
    const long cell = first + i;
    if (cell <= static_cast<long>(w.size())) x.symbols[i] = w[cell - 1];
  }
  return x;
}

std::vector<BlockCheckResult> check_block(const Machine& m, const BlockStory& story,
                                          const BlockContent& x0, long budget) {
  if (budget < 0) throw std::invalid_argument("budget must be non-negative");
  if (!story.fully_exited()) {
    throw MalformedStory("block B_" + std::to_string(story.block) +
                         " story ends inside the block");
  }
  for (std::size_t i = 0; i < story.entries.size(); i += 2) {
    if (phase_block(story.entries[i], story.entries[i + 1]) != story.block) {
      throw MalformedStory("visit starting " + to_string(story.entries[i]) +
                           " does not concern block B_" + std::to_string(story.block));
    }
  }

  // Frontier of partial chains, one per current content.
  std::vector<BlockCheckResult> frontier(1);
  frontier[0].content_chain = std::vector<BlockContent>{x0};
  bool ran_out = false;

  for (std::size_t i = 0; i < story.entries.size() && !frontier.empty(); i += 2) {
    const Descriptor& in = story.entries[i];
    const Descriptor& out = story.entries[i + 1];
    std::vector<BlockCheckResult> next;
    std::map<BlockContent, std::size_t> index;
    for (const auto& partial : frontier) {
      const long left = budget - partial.steps_consumed;
      if (left < 1) {
        ran_out = true;
        continue;
      }
      for (const auto& o : simulate_phase(m, in, out, partial.content_chain->back(), left)) {
        if (!o.accepted) {
          if (o.reject_reason == RejectReason::kStepCapExceeded) ran_out = true;
          continue;
        }
        BlockCheckResult extended = partial;
        extended.content_chain->push_back(*o.result);
        extended.steps_consumed += o.steps;
        extended.phase_steps.push_back(o.steps);
        extended.phase_choices.push_back(o.choices);
        auto [it, fresh] = index.emplace(*o.result, next.size());
        if (fresh) {
          next.push_back(std::move(extended));
        } else if (extended.steps_consumed < next[it->second].steps_consumed) {
          next[it->second] = std::move(extended);
        }
      }
    }
    frontier = std::move(next);
  }

  if (frontier.empty()) {
    BlockCheckResult rejected;
    rejected.failure = ran_out ? CheckFailure::kBudgetExhausted : CheckFailure::kIncoherent;
    return {rejected};
  }
  for (auto& r : frontier) r.accepted = true;
  return frontier;
}

}  // namespace tmlab
