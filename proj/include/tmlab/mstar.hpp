// M*: guess a block partition and an accepting story, then verify every
// block with `check`. Nondeterministic guessing is realized as a canonical
// enumeration with backtracking; the reported time is the cost of the
// accepting branch, not of the search.

#ifndef TMLAB_MSTAR_HPP_
#define TMLAB_MSTAR_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tmlab/block_check.hpp"
#include "tmlab/crossing.hpp"
#include "tmlab/machine.hpp"

namespace tmlab {

struct StoryGuess {
  long n = 1;          // scale: n >= |w|, time budget n^2
  long first_len = 1;  // P
  long blocks = 1;     // r, blocks the story visits
  long phases = 2;     // k
  History story;       // S_0 .. S_{r+1}, guessed

  friend bool operator==(const StoryGuess&, const StoryGuess&) = default;
};

// Largest phase count the enumeration considers for scale n. Summed over
// the n partitions, the phase counts of a computation with m <= n^2 moves
// come to 2n + m (each boundary is a milestone of exactly one partition; the
// opening phase and the exit through mu_0 occur in all of them), so some
// partition has at most n + 2 phases. Walking out to cell 3 and back in four
// moves with n = 2 attains it.
inline long max_phases(long n) { return n + 2; }

// Invariant violations of a guess (empty when well formed).
std::vector<std::string> guess_violations(const Machine& m, const StoryGuess& g);

// c: tape cells per stored descriptor, a direction cell plus the state in
// binary. S_0 is fixed and the phase and milestone of the others follow from
// the walk, so only interior descriptors are stored.
long descriptor_cells(const Machine& m);

// |S|: c cells per interior descriptor, less the direction of the last one
// (it always enters B_1 leftwards), plus an end marker. At most c(k - 2).
long story_cells(const Machine& m, const StoryGuess& g);

struct Implication {
  long block = 1;  // B_{j+1} for the j-th implication
  std::vector<Descriptor> antecedent;  // S_j^+ (+) S_{j+1}^-
  std::vector<Descriptor> succedent;   // S_j^- (+) S_{j+1}^+
  bool holds = false;
};

struct ChainReport {
  std::vector<Implication> implications;  // r + 1 of them
  std::vector<Descriptor> reduced_antecedent;  // S_0^+
  std::vector<Descriptor> reduced_succedent;   // S_0^-
  bool eliminable = false;  // every S_j^+-, 1 <= j <= r, once on each side
  bool sound = false;       // eliminable and every implication holds
};

// Throws std::invalid_argument unless verdicts has one entry per block.
ChainReport implication_chain(const StoryGuess& g, const std::vector<bool>& block_verdicts);

struct MStarResult {
  bool accepted = false;
  std::optional<StoryGuess> winning;
  long n = 0;
  long sim_time = 0;           // guess cost + phase steps + one per call
  long sim_space = 0;          // block window + story cells
  long descriptor_cells = 0;   // c
  long simulated_moves = 0;    // sum of phase steps on the accepting branch
  long explored = 0;           // candidate descriptors tried by the search
  bool budget_exhausted = false;
  std::vector<bool> block_verdicts;
  std::optional<ChainReport> chain;
  std::vector<std::string> rejection;  // why a supplied guess failed
  std::vector<int> witness_choices;    // choices of the accepting branch, phase order

  // a = sim_time / n^2.
  double time_constant() const {
    return n > 0 ? static_cast<double>(sim_time) / static_cast<double>(n * n) : 0.0;
  }
};

// M* steps 3-4 for one guess: check every block story against its initial
// contents under a cumulative budget (n^2 by default). Throws
// std::invalid_argument if n < |w|.
MStarResult verify_story(const Machine& m, std::span<const Symbol> w, const StoryGuess& g,
                         std::optional<long> budget = std::nullopt);

struct MStarOptions {
  long candidate_cap = 10'000'000;  // ResourceCapExceeded beyond this
};

// Enumerates guesses with P ascending, then k ascending, then stories in
// lexicographic order of their (milestone, state, direction) sequence, and
// returns the first one verify_story() accepts. Throws std::invalid_argument
// unless n >= max(|w|, 1), and ResourceCapExceeded past the candidate cap.
MStarResult simulate_mstar(const Machine& m, std::span<const Symbol> w, long n,
                           const MStarOptions& options = {});

// Builds a guess from an observed history (used to seed verify-story runs).
StoryGuess guess_from_history(const History& h, long n);

}  // namespace tmlab

#endif  // TMLAB_MSTAR_HPP_
