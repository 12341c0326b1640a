#include "tmlab/mstar.hpp"

#include <algorithm>
#include <bit>

namespace tmlab {

namespace {

const Descriptor kOpener{1, 0, kInitialState, Direction::kRight};

Descriptor closer(long k) { return {k, 0, kAcceptState, Direction::kLeft}; }

void require_scale(std::span<const Symbol> w, long n) {
  if (n < 1 || n < static_cast<long>(w.size())) {
    throw std::invalid_argument("scale n must satisfy n >= max(|w|, 1)");
  }
}

}  // namespace

long descriptor_cells(const Machine& m) {
  const auto states = static_cast<unsigned long>(std::max<StateId>(m.state_count, 2));
  const long state_bits = static_cast<long>(std::bit_width(states - 1));
  return 1 + std::max(1L, state_bits);
}

long story_cells(const Machine& m, const StoryGuess& g) {
  if (g.phases <= 2) return 1;
  return descriptor_cells(m) * (g.phases - 2);
}

std::vector<std::string> guess_violations(const Machine& m, const StoryGuess& g) {
  std::vector<std::string> v;
  if (g.n < 1) v.push_back("scale n must be >= 1");
  if (g.first_len < 1 || g.first_len > g.n) v.push_back("P must lie in 1..n");
  if (g.blocks < 1 || g.blocks > g.n) v.push_back("r must lie in 1..n");
  if (g.phases < 2 || g.phases > max_phases(g.n)) {
    v.push_back("k must lie in 2.." + std::to_string(max_phases(g.n)));
  }
  if (!v.empty()) return v;

  const History& h = g.story;
  if (h.partition != Partition{g.first_len, g.n, g.blocks}) {
    v.push_back("story partition does not match (P, n, r)");
  }
  if (static_cast<long>(h.milestones.size()) != g.blocks + 2) {
    v.push_back("story must hold S_0 .. S_{r+1}");
    return v;
  }
  for (auto& msg : history_violations(h)) v.push_back(std::move(msg));

  const std::vector<Descriptor> expected_s0{kOpener, closer(g.phases)};
  if (h.at(0).entries != expected_s0) {
    v.push_back("S_0 must be [" + to_string(kOpener) + ", " + to_string(closer(g.phases)) + "]");
  }
  if (h.phase_count() != g.phases) v.push_back("story phase count differs from k");

  long total = 0;
  long deepest = 1;
  for (const auto& mh : h.milestones) {
    for (const auto& d : mh.entries) {
      ++total;
      if (d.state >= m.state_count) v.push_back("descriptor " + to_string(d) + " names an unknown state");
      if (d.phase < 1 || d.phase > g.phases) v.push_back("descriptor " + to_string(d) + " has phase beyond k");
      // A crossing of mu_r would enter B_{r+1}, which no check covers.
      if (d.milestone >= g.blocks) {
        v.push_back("descriptor " + to_string(d) + " crosses a milestone beyond B_r");
      }
      deepest = std::max(deepest, d.entered_block());
    }
  }
  if (total > 2 * g.phases) v.push_back("story holds more than 2k descriptors");
  if (deepest != g.blocks) v.push_back("story visits " + std::to_string(deepest) + " blocks, not r");
  return v;
}

ChainReport implication_chain(const StoryGuess& g, const std::vector<bool>& block_verdicts) {
  if (static_cast<long>(block_verdicts.size()) != g.blocks) {
    throw std::invalid_argument("expected " + std::to_string(g.blocks) + " block verdicts, got " +
                                std::to_string(block_verdicts.size()));
  }
  const long r = g.blocks;
  std::vector<std::vector<Descriptor>> plus(r + 2), minus(r + 2);
  for (long j = 0; j < r + 2 && j < static_cast<long>(g.story.milestones.size()); ++j) {
    auto [p, q] = split_history(g.story.at(j));
    plus[j] = std::move(p.entries);
    minus[j] = std::move(q.entries);
  }

  ChainReport report;
  bool all_hold = true;
  for (long j = 0; j <= r; ++j) {
    Implication imp;
    imp.block = j + 1;
    imp.antecedent = merge_by_phase(plus[j], minus[j + 1]);
    imp.succedent = merge_by_phase(minus[j], plus[j + 1]);
    // B_{r+1} has no check; its implication is vacuous only when S_r and
    // S_{r+1} are empty.
    imp.holds = j < r ? block_verdicts[j] : imp.antecedent.empty() && imp.succedent.empty();
    all_hold = all_hold && imp.holds;
    report.implications.push_back(std::move(imp));
  }
  report.reduced_antecedent = plus[0];
  report.reduced_succedent = minus[0];

  auto occurrences = [&](const Descriptor& d, bool antecedent) {
    long count = 0;
    for (const auto& imp : report.implications) {
      const auto& side = antecedent ? imp.antecedent : imp.succedent;
      count += std::count(side.begin(), side.end(), d);
    }
    return count;
  };
  bool eliminable = plus[r + 1].empty() && minus[r + 1].empty();
  for (long j = 0; j <= r && eliminable; ++j) {
    for (const auto* group : {&plus[j], &minus[j]}) {
      for (const auto& d : *group) {
        long want_ante = 1, want_succ = 1;
        if (j == 0) {
          want_ante = group == &plus[0] ? 1 : 0;
          want_succ = group == &plus[0] ? 0 : 1;
        }
        if (occurrences(d, true) != want_ante || occurrences(d, false) != want_succ) {
          eliminable = false;
        }
      }
    }
  }
  report.eliminable = eliminable;
  report.sound = eliminable && all_hold;
  return report;
}

MStarResult verify_story(const Machine& m, std::span<const Symbol> w, const StoryGuess& g,
                         std::optional<long> budget) {
  require_scale(w, g.n);
  const long total_budget = budget.value_or(g.n * g.n);
  if (total_budget < 0) throw std::invalid_argument("budget must be non-negative");

  MStarResult result;
  result.n = g.n;
  result.descriptor_cells = descriptor_cells(m);
  result.rejection = guess_violations(m, g);
  if (!result.rejection.empty()) return result;

  const long r = g.blocks;
  long remaining = total_budget;
  std::vector<std::vector<int>> choices_by_phase(g.phases + 1);
  for (long j = 1; j <= r; ++j) {
    bool ok = false;
    try {
      const BlockStory bs = block_story(g.story, j);
      const auto outcomes =
          check_block(m, bs, initial_block_content(j, g.story.partition, w), remaining);
      auto best = std::min_element(outcomes.begin(), outcomes.end(), [](const auto& a, const auto& b) {
        return a.steps_consumed < b.steps_consumed;
      });
      if (best->accepted) {
        ok = true;
        remaining -= best->steps_consumed;
        result.simulated_moves += best->steps_consumed;
        for (std::size_t i = 0; i < best->phase_choices.size(); ++i) {
          choices_by_phase[bs.entries[2 * i].phase] = best->phase_choices[i];
        }
      } else {
        if (best->failure == CheckFailure::kBudgetExhausted) result.budget_exhausted = true;
        result.rejection.push_back("check rejects block B_" + std::to_string(j) +
                                   (best->failure == CheckFailure::kBudgetExhausted
                                        ? " (budget exhausted)"
                                        : ""));
      }
    } catch (const MalformedStory& e) {
      result.rejection.push_back("block B_" + std::to_string(j) + ": " + e.what());
    }
    result.block_verdicts.push_back(ok);
  }

  result.chain = implication_chain(g, result.block_verdicts);
  if (!result.chain->sound) {
    if (result.rejection.empty()) result.rejection.push_back("implication chain does not reduce");
    result.simulated_moves = 0;
    return result;
  }

  result.accepted = true;
  result.winning = g;
  for (const auto& c : choices_by_phase) {
    result.witness_choices.insert(result.witness_choices.end(), c.begin(), c.end());
  }
  const long cells = story_cells(m, g);
  const long window = r == 1 ? g.first_len : g.n;
  result.sim_space = window + cells;
  // Writing the story, every simulated move, and one step per call of
  // check and of phase.
  result.sim_time = cells + result.simulated_moves + r + (g.phases - 1);
  return result;
}

namespace {

class StorySearch {
 public:
  StorySearch(const Machine& m, std::span<const Symbol> w, long n, long first_len, long phases,
              long& explored, long cap)
      : m_(m),
        w_(w),
        n_(n),
        k_(phases),
        partition_(Partition::make(first_len, n, n)),
        contents_(n + 2),
        explored_(explored),
        cap_(cap) {}

  std::optional<MStarResult> run() {
    if (extend(kOpener, 0)) return found_;
    return std::nullopt;
  }

  bool saw_cap() const { return saw_cap_; }

 private:
  bool extend(const Descriptor& in, long steps_used) {
    const long remaining = n_ * n_ - steps_used;
    if (remaining < 1) {
      saw_cap_ = true;
      return false;
    }
    const long block = in.entered_block();
    if (contents_[block].symbols.empty()) {
      contents_[block] = initial_block_content(block, partition_, w_);
    }
    const BlockContent x = contents_[block];
    const auto exits = enumerate_phase_exits(m_, block, in, x, remaining);
    if (!exits.empty() && exits.back().capped) saw_cap_ = true;

    for (const Descriptor& next : candidates(in.phase, block)) {
      if (++explored_ > cap_) {
        throw ResourceCapExceeded("story enumeration exceeded " + std::to_string(cap_) +
                                  " candidates");
      }
      for (const auto& e : exits) {
        const PhaseOutcome o = classify_exit(e, block, next);
        if (!o.accepted) continue;
        BlockContent saved = std::move(contents_[block]);
        contents_[block] = *o.result;
        path_.push_back(next);
        const bool done = next.phase == k_ ? finish() : extend(next, steps_used + o.steps);
        if (done) return true;
        path_.pop_back();
        contents_[block] = std::move(saved);
      }
    }
    return false;
  }

  // Descriptors that can start phase p+1 after a phase in `block`, in
  // canonical order: milestone, then state. A crossing is only worth trying
  // if the walk can still get back to B_1 and exit by phase k.
  std::vector<Descriptor> candidates(long p, long block) const {
    std::vector<Descriptor> out;
    if (p + 1 == k_) {
      if (block == 1) out.push_back(closer(k_));
      return out;
    }
    auto add = [&](long milestone, Direction dir) {
      const Descriptor probe{p + 1, milestone, 0, dir};
      if (p + probe.entered_block() + 1 > k_) return;
      for (StateId q = 0; q < m_.state_count; ++q) out.push_back({p + 1, milestone, q, dir});
    };
    if (block >= 2) add(block - 1, Direction::kLeft);
    if (block + 1 <= n_) add(block, Direction::kRight);
    return out;
  }

  bool finish() {
    std::vector<Descriptor> all{kOpener};
    all.insert(all.end(), path_.begin(), path_.end());
    long r = 1;
    for (const auto& d : all) r = std::max(r, d.entered_block());
    StoryGuess g;
    g.n = n_;
    g.first_len = partition_.first_len;
    g.blocks = r;
    g.phases = k_;
    g.story = history_from_descriptors(Partition::make(g.first_len, n_, r), all, true);
    MStarResult res = verify_story(m_, w_, g);
    if (!res.accepted) return false;
    found_ = std::move(res);
    return true;
  }

  const Machine& m_;
  std::span<const Symbol> w_;
  long n_;
  long k_;
  Partition partition_;
  std::vector<BlockContent> contents_;  // empty until first visited
  std::vector<Descriptor> path_;
  long& explored_;
  long cap_;
  bool saw_cap_ = false;
  std::optional<MStarResult> found_;
};

}  // namespace

MStarResult simulate_mstar(const Machine& m, std::span<const Symbol> w, long n,
                           const MStarOptions& options) {
  require_scale(w, n);
  long explored = 0;
  bool saw_cap = false;
  for (long first_len = 1; first_len <= n; ++first_len) {
    for (long k = 2; k <= max_phases(n); ++k) {
      StorySearch search(m, w, n, first_len, k, explored, options.candidate_cap);
      auto found = search.run();
      saw_cap = saw_cap || search.saw_cap();
      if (found) {
        found->explored = explored;
        return *found;
      }
    }
  }
  MStarResult result;
  result.n = n;
  result.descriptor_cells = descriptor_cells(m);
  result.explored = explored;
  result.budget_exhausted = saw_cap;
  return result;
}

StoryGuess guess_from_history(const History& h, long n) {
  StoryGuess g;
  g.n = n;
  g.first_len = h.partition.first_len;
  g.blocks = h.partition.blocks;
  g.phases = h.phase_count();
  g.story = h;
  g.story.guessed = true;
  return g;
}

}  // namespace tmlab
