// Block partitions of the tape and the crossing histories of a computation.
//
// Partition pi_P: block B_1 holds cells 1..P and block B_j (j >= 2) holds
// the n cells P+(j-2)n+1 .. P+(j-1)n. Milestone mu_j (j >= 1) is the
// boundary between B_j and B_{j+1}; mu_0 is the left end of the tape.
//
// A computation visits blocks in phases. Phase 1 starts at time 0 in B_1;
// every crossing of a milestone starts a new phase and is recorded as a
// descriptor (phase, milestone, state, direction). The state of a descriptor
// is the state the machine is in after the crossing move, except for an
// attempt to move left from cell 1, which records the attempting state.

#ifndef TMLAB_CROSSING_HPP_
#define TMLAB_CROSSING_HPP_

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tmlab/machine.hpp"
#include "tmlab/simulate.hpp"

namespace tmlab {

// Structural problems with histories, stories and descriptor pairs.
class MalformedStory : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RegionExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Partition {
  long first_len = 1;  // P
  long block_len = 1;  // n
  long blocks = 1;     // r, number of materialized blocks

  // Validates 1 <= P <= n and r >= 1.
  static Partition make(long first_len, long block_len, long blocks);

  long block_of(long cell) const;
  long first_cell(long block) const;
  long last_cell(long block) const;
  long length(long block) const { return block == 1 ? first_len : block_len; }
  // Index i of the boundary beta_i (between cells i and i+1) at milestone j.
  long boundary_of(long milestone) const { return milestone == 0 ? 0 : last_cell(milestone); }

  friend bool operator==(const Partition&, const Partition&) = default;
};

struct Descriptor {
  long phase = 1;
  long milestone = 0;
  StateId state = 0;
  Direction dir = Direction::kRight;

  // Block entered by this crossing (0 for the exit through mu_0).
  long entered_block() const { return dir == Direction::kRight ? milestone + 1 : milestone; }
  // Block left by this crossing (0 for the opening descriptor).
  long left_block() const { return dir == Direction::kRight ? milestone : milestone + 1; }

  friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

std::string to_string(const Descriptor& d);

// Composition of descriptor sequences by phase number.
std::vector<Descriptor> merge_by_phase(const std::vector<Descriptor>& a,
                                       const std::vector<Descriptor>& b);

struct MilestoneHistory {
  long milestone = 0;
  std::vector<Descriptor> entries;  // phase-ordered

  friend bool operator==(const MilestoneHistory&, const MilestoneHistory&) = default;
};

// H_0 .. H_{r+1}. A story is the same object produced by guessing instead of
// by observing a computation.
struct History {
  Partition partition;
  std::vector<MilestoneHistory> milestones;
  bool guessed = false;

  // k, the largest phase number present (1 for an empty history).
  long phase_count() const;
  const MilestoneHistory& at(long milestone) const { return milestones.at(milestone); }

  friend bool operator==(const History&, const History&) = default;
};

// Builds a history from descriptors in any order, with r blocks.
History history_from_descriptors(const Partition& partition, std::vector<Descriptor> all,
                                 bool guessed);

// All descriptors of a history in phase order.
std::vector<Descriptor> descriptors_by_phase(const History& h);

// Invariant violations of a history (empty when well formed): milestone
// indices, strictly increasing phases, alternation from +1 on milestones
// j >= 1, H_0's opener, each phase 2..k used exactly once, and H_{r+1}
// empty.
std::vector<std::string> history_violations(const History& h);

// (H^+, H^-).
std::pair<MilestoneHistory, MilestoneHistory> split_history(const MilestoneHistory& h);

// In/out descriptors of one block, interleaved by phase: in, out, in, out...
// An odd count means the computation stopped inside the block.
struct BlockStory {
  long block = 1;
  std::vector<Descriptor> entries;

  std::size_t visits() const { return (entries.size() + 1) / 2; }
  bool fully_exited() const { return entries.size() % 2 == 0; }

  friend bool operator==(const BlockStory&, const BlockStory&) = default;
};

// INH_j = H_{j-1}^+ (+) H_j^-, OUTH_j = H_{j-1}^- (+) H_j^+, merged by phase.
// Throws MalformedStory naming the offending phase if they do not alternate
// as consecutive (in, out) pairs.
BlockStory block_story(const History& h, long block);

// Phases of a trace under `partition`, with the block contents around each.
struct PhaseRecord {
  long block = 1;
  Descriptor start;
  std::optional<Descriptor> end;  // absent if the run stopped inside the block
  std::vector<Symbol> before;     // block contents when the phase starts
  std::vector<Symbol> after;      // block contents when it ends
  long steps = 0;                 // steps taken, including the crossing move
                                  // (leaving the tape at cell 1 is free)
  std::vector<int> choices;       // nondeterministic choices made
};

// Throws RegionExceeded if the trace leaves the materialized blocks.
std::vector<PhaseRecord> extract_phases(const Trace& trace, const Partition& partition);

// Descriptors of every crossing of `trace`; throws RegionExceeded as above.
History extract_history(const Trace& trace, const Partition& partition);

// Same, with r grown to the last block the trace visits.
History extract_history(const Trace& trace, long first_len, long block_len);

// Number of blocks (under pi_P with block length n) the trace visits.
long blocks_visited(const Trace& trace, long first_len, long block_len);

// k(P): 1 + milestone crossings under pi_P, counting a final attempt to move
// left from cell 1 as a crossing of mu_0.
long phase_count(const Trace& trace, long block_len, long first_len);

struct LemmaReport {
  long block_len = 0;
  std::vector<long> k_by_first_len;  // entry P-1 holds k(P)
  long sum = 0;                      // sum over P of k(P)
  long crossings_total = 0;          // sum over P of milestone crossings
  long boundary_moves = 0;           // moves across some beta_i, i >= 1
  long best_first_len = 1;           // argmin k(P), smallest P on ties
  bool holds = false;                // some P has k(P) <= n
  bool sum_bound_holds = false;      // sum <= crossings_total + n
  // crossings_total == boundary_moves + n: every boundary is a milestone of
  // exactly one partition and the exit through mu_0 is one in all of them.
  bool partition_identity_holds = false;
};

// Throws std::invalid_argument unless the trace takes at most n^2 steps.
LemmaReport check_phase_lemma(const Trace& trace, long block_len);

}  // namespace tmlab

#endif  // TMLAB_CROSSING_HPP_
