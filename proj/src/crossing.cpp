#include "tmlab/crossing.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tmlab {

Partition Partition::make(long first_len, long block_len, long blocks) {
  if (block_len < 1) throw std::invalid_argument("block length must be >= 1");
  if (first_len < 1 || first_len > block_len) {
    throw std::invalid_argument("first block length must lie in 1..n");
  }
  if (blocks < 1) throw std::invalid_argument("a partition needs at least one block");
  return {first_len, block_len, blocks};
}

long Partition::block_of(long cell) const {
  if (cell < 1) throw std::out_of_range("cell index must be >= 1");
  if (cell <= first_len) return 1;
  return 2 + (cell - first_len - 1) / block_len;
}

long Partition::first_cell(long block) const {
  return block == 1 ? 1 : first_len + (block - 2) * block_len + 1;
}

long Partition::last_cell(long block) const {
  return block == 1 ? first_len : first_len + (block - 1) * block_len;
}

std::string to_string(const Descriptor& d) {
  return "(" + std::to_string(d.phase) + "," + std::to_string(d.milestone) + "," +
         std::to_string(d.state) + "," + (d.dir == Direction::kRight ? "+1" : "-1") + ")";
}

std::vector<Descriptor> merge_by_phase(const std::vector<Descriptor>& a,
                                       const std::vector<Descriptor>& b) {
  std::vector<Descriptor> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
             [](const Descriptor& x, const Descriptor& y) { return x.phase < y.phase; });
  return out;
}

long History::phase_count() const {
  long k = 1;
  for (const auto& h : milestones) {
    for (const auto& d : h.entries) k = std::max(k, d.phase);
  }
  return k;
}

History history_from_descriptors(const Partition& partition, std::vector<Descriptor> all,
                                 bool guessed) {
  History h;
  h.partition = partition;
  h.guessed = guessed;
  h.milestones.resize(partition.blocks + 2);
  for (long j = 0; j < static_cast<long>(h.milestones.size()); ++j) h.milestones[j].milestone = j;
  std::sort(all.begin(), all.end(),
            [](const Descriptor& x, const Descriptor& y) { return x.phase < y.phase; });
  for (const auto& d : all) {
    if (d.milestone < 0 || d.milestone >= static_cast<long>(h.milestones.size())) {
      throw MalformedStory("descriptor " + to_string(d) + " names a milestone outside 0.." +
                           std::to_string(partition.blocks + 1));
    }
    h.milestones[d.milestone].entries.push_back(d);
  }
  return h;
}

std::vector<Descriptor> descriptors_by_phase(const History& h) {
  std::vector<Descriptor> all;
  for (const auto& m : h.milestones) all.insert(all.end(), m.entries.begin(), m.entries.end());
  std::stable_sort(all.begin(), all.end(),
                   [](const Descriptor& x, const Descriptor& y) { return x.phase < y.phase; });
  return all;
}

std::vector<std::string> history_violations(const History& h) {
  std::vector<std::string> out;
  const long r = h.partition.blocks;
  if (static_cast<long>(h.milestones.size()) != r + 2) {
    out.push_back("expected " + std::to_string(r + 2) + " milestone histories, found " +
                  std::to_string(h.milestones.size()));
    return out;
  }
  const long k = h.phase_count();
  std::map<long, int> phase_uses;
  for (long j = 0; j < static_cast<long>(h.milestones.size()); ++j) {
    const auto& mh = h.milestones[j];
    const std::string where = "H_" + std::to_string(j);
    if (mh.milestone != j) out.push_back(where + ": labelled as milestone " + std::to_string(mh.milestone));
    for (std::size_t i = 0; i < mh.entries.size(); ++i) {
      const Descriptor& d = mh.entries[i];
      ++phase_uses[d.phase];
      if (d.milestone != j) out.push_back(where + ": holds " + to_string(d));
      if (d.phase < 1) out.push_back(where + ": non-positive phase in " + to_string(d));
      if (i > 0 && d.phase <= mh.entries[i - 1].phase) {
        out.push_back(where + ": phases not increasing at " + to_string(d));
      }
      if (j >= 1) {
        const Direction expected = i % 2 == 0 ? Direction::kRight : Direction::kLeft;
        if (d.dir != expected) out.push_back(where + ": direction does not alternate at " + to_string(d));
      }
    }
  }
  const auto& h0 = h.milestones[0].entries;
  if (h0.empty() || h0.front() != Descriptor{1, 0, kInitialState, Direction::kRight}) {
    out.push_back("H_0 must open with (1,0,0,+1)");
  }
  if (h0.size() > 2) out.push_back("H_0 has more than two descriptors");
  if (h0.size() == 2 && (h0[1].dir != Direction::kLeft || h0[1].phase != k)) {
    out.push_back("H_0 must close with a left exit in the last phase, found " + to_string(h0[1]));
  }
  for (long p = 1; p <= k; ++p) {
    int uses = phase_uses.contains(p) ? phase_uses[p] : 0;
    if (uses != 1) {
      out.push_back("phase " + std::to_string(p) + " labels " + std::to_string(uses) +
                    " descriptors");
    }
  }
  if (!h.milestones.back().entries.empty()) {
    out.push_back("H_" + std::to_string(r + 1) + " must be empty");
  }
  auto walk = descriptors_by_phase(h);
  for (std::size_t i = 1; i < walk.size(); ++i) {
    if (walk[i].left_block() != walk[i - 1].entered_block()) {
      out.push_back("descriptor " + to_string(walk[i]) + " does not leave block B_" +
                    std::to_string(walk[i - 1].entered_block()));
    }
  }
  return out;
}

std::pair<MilestoneHistory, MilestoneHistory> split_history(const MilestoneHistory& h) {
  MilestoneHistory plus{h.milestone, {}};
  MilestoneHistory minus{h.milestone, {}};
  for (const auto& d : h.entries) {
    (d.dir == Direction::kRight ? plus : minus).entries.push_back(d);
  }
  return {plus, minus};
}

BlockStory block_story(const History& h, long block) {
  if (block < 1 || block >= static_cast<long>(h.milestones.size())) {
    throw std::invalid_argument("block index out of range");
  }
  auto [left_plus, left_minus] = split_history(h.milestones.at(block - 1));
  auto [right_plus, right_minus] = split_history(h.milestones.at(block));
  const auto in = merge_by_phase(left_plus.entries, right_minus.entries);
  const auto out = merge_by_phase(left_minus.entries, right_plus.entries);

  BlockStory story{block, merge_by_phase(in, out)};
  for (std::size_t i = 0; i < story.entries.size(); ++i) {
    const Descriptor& d = story.entries[i];
    const bool is_in = d.entered_block() == block;
    if (is_in != (i % 2 == 0)) {
      throw MalformedStory("block B_" + std::to_string(block) + ": phase " +
                           std::to_string(d.phase) + " breaks the in/out alternation");
    }
    if (!is_in && d.phase != story.entries[i - 1].phase + 1) {
      throw MalformedStory("block B_" + std::to_string(block) + ": phase " +
                           std::to_string(d.phase) + " does not follow phase " +
                           std::to_string(story.entries[i - 1].phase));
    }
  }
  return story;
}

namespace {

std::vector<Symbol> block_contents(const Configuration& c, const Partition& p, long block) {
  std::vector<Symbol> out;
  out.reserve(p.length(block));
  for (long cell = p.first_cell(block); cell <= p.last_cell(block); ++cell) {
    out.push_back(c.read(cell));
  }
  return out;
}

// Calls on_step(step, head_after) for every step, with the tape updated.
template <typename F>
void walk_trace(const Trace& trace, F&& on_step) {
  Configuration c = initial_configuration(trace.input);
  for (const auto& s : trace.steps) {
    long after = s.head;
    if (s.kind == ActionKind::kMove) after = s.head + sign(s.dir);
    on_step(s, after, c);
    if (s.kind == ActionKind::kWrite) c.write(s.head, s.written);
    if (after >= 1) c.head = after;
    c.state = s.next;
  }
}

}  // namespace

std::vector<PhaseRecord> extract_phases(const Trace& trace, const Partition& partition) {
  std::vector<PhaseRecord> phases;
  Configuration tape = initial_configuration(trace.input);
  auto check_region = [&](long cell) {
    if (partition.block_of(cell) > partition.blocks) {
      throw RegionExceeded("trace reaches cell " + std::to_string(cell) + " beyond block B_" +
                           std::to_string(partition.blocks));
    }
  };
  check_region(1);
  PhaseRecord current;
  current.block = 1;
  current.start = {1, 0, kInitialState, Direction::kRight};
  current.before = block_contents(tape, partition, 1);
  bool open = true;

  for (const auto& s : trace.steps) {
    if (!open) throw std::invalid_argument("trace continues after leaving the tape");
    const long phase = current.start.phase + 1;
    if (s.kind == ActionKind::kMove && s.dir == Direction::kLeft && s.head == 1) {
      current.end = Descriptor{phase, 0, s.state, Direction::kLeft};
      current.after = block_contents(tape, partition, current.block);
      phases.push_back(std::move(current));
      open = false;
      continue;
    }
    ++current.steps;
    if (s.kind == ActionKind::kBranch) current.choices.push_back(s.choice);
    if (s.kind == ActionKind::kWrite) tape.write(s.head, s.written);
    if (s.kind != ActionKind::kMove) continue;

    const long to = s.head + sign(s.dir);
    check_region(to);
    const long from_block = partition.block_of(s.head);
    const long to_block = partition.block_of(to);
    if (from_block == to_block) continue;
    const Descriptor d{phase, std::min(from_block, to_block), s.next, s.dir};
    current.end = d;
    current.after = block_contents(tape, partition, current.block);
    phases.push_back(std::move(current));
    current = PhaseRecord{};
    current.block = to_block;
    current.start = d;
    current.before = block_contents(tape, partition, to_block);
  }
  if (open) {
    current.after = block_contents(tape, partition, current.block);
    phases.push_back(std::move(current));
  }
  return phases;
}

History extract_history(const Trace& trace, const Partition& partition) {
  std::vector<Descriptor> all;
  for (const auto& rec : extract_phases(trace, partition)) {
    all.push_back(rec.start);
    if (rec.end && rec.end->milestone == 0) all.push_back(*rec.end);
  }
  return history_from_descriptors(partition, std::move(all), false);
}

long blocks_visited(const Trace& trace, long first_len, long block_len) {
  const Partition p = Partition::make(first_len, block_len, 1);
  long last = p.block_of(trace.final_config.head);
  for (const auto& s : trace.steps) last = std::max(last, p.block_of(s.head));
  return last;
}

History extract_history(const Trace& trace, long first_len, long block_len) {
  return extract_history(
      trace, Partition::make(first_len, block_len, blocks_visited(trace, first_len, block_len)));
}

long phase_count(const Trace& trace, long block_len, long first_len) {
  const Partition p = Partition::make(first_len, block_len, 1);
  long k = 1;
  walk_trace(trace, [&](const TraceStep& s, long after, const Configuration&) {
    if (s.kind != ActionKind::kMove) return;
    if (after < 1 || p.block_of(after) != p.block_of(s.head)) ++k;
  });
  return k;
}

LemmaReport check_phase_lemma(const Trace& trace, long block_len) {
  if (block_len < 1) throw std::invalid_argument("block length must be >= 1");
  if (trace.usage().time > block_len * block_len) {
    throw std::invalid_argument("trace takes " + std::to_string(trace.usage().time) +
                                " steps, more than n^2 = " +
                                std::to_string(block_len * block_len));
  }
  LemmaReport r;
  r.block_len = block_len;
  long best = 0;
  for (long P = 1; P <= block_len; ++P) {
    const long k = phase_count(trace, block_len, P);
    r.k_by_first_len.push_back(k);
    r.sum += k;
    r.crossings_total += k - 1;
    if (best == 0 || k < best) {
      best = k;
      r.best_first_len = P;
    }
  }
  for (const auto& s : trace.steps) {
    if (s.kind == ActionKind::kMove && !(s.dir == Direction::kLeft && s.head == 1)) {
      ++r.boundary_moves;
    }
  }
  const long exits = trace.ends_at_left_edge() ? block_len : 0;
  r.holds = best <= block_len;
  r.sum_bound_holds = r.sum <= r.crossings_total + block_len;
  r.partition_identity_holds = r.crossings_total == r.boundary_moves + exits;
  return r;
}

}  // namespace tmlab
