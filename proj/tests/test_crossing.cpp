#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tmlab/crossing.hpp"

using namespace tmlab;

namespace {

Descriptor D(long p, long j, StateId i, int dir) {
  return {p, j, i, dir > 0 ? Direction::kRight : Direction::kLeft};
}

Trace accepted_run(const Machine& m, const std::string& w) {
  const Trace t = run_trace(m, parse_input(m, w), nullptr, 10'000);
  REQUIRE(t.outcome == Outcome::kAccepted);
  return t;
}

}  // namespace

TEST_CASE("partition cells") {
  const Partition p = Partition::make(2, 3, 4);
  CHECK(p.block_of(1) == 1);
  CHECK(p.block_of(2) == 1);
  CHECK(p.block_of(3) == 2);
  CHECK(p.block_of(5) == 2);
  CHECK(p.block_of(6) == 3);
  CHECK(p.first_cell(3) == 6);
  CHECK(p.last_cell(3) == 8);
  CHECK(p.length(1) == 2);
  CHECK(p.length(4) == 3);
  CHECK(p.boundary_of(0) == 0);
  CHECK(p.boundary_of(2) == 5);
  for (long cell = 1; cell <= 30; ++cell) {
    const long b = p.block_of(cell);
    CHECK(p.first_cell(b) <= cell);
    CHECK(cell <= p.last_cell(b));
  }
  CHECK_THROWS_AS(Partition::make(0, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(Partition::make(4, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(Partition::make(1, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(p.block_of(0), std::out_of_range);
}

TEST_CASE("the four-block walk has ten phases") {
  const Machine m = testing::four_block_walk();
  const Trace t = accepted_run(m, "");
  CHECK(phase_count(t, 2, 1) == 10);
  CHECK(blocks_visited(t, 1, 2) == 4);

  const History h = extract_history(t, 1, 2);
  CHECK(h.partition == Partition{1, 2, 4});
  CHECK(h.phase_count() == 10);
  CHECK(history_violations(h).empty());
  REQUIRE(h.milestones.size() == 6);
  CHECK(h.at(0).entries == std::vector{D(1, 0, 0, +1), D(10, 0, 1, -1)});
  CHECK(h.at(1).entries.size() == 2);
  CHECK(h.at(1).entries[0] == D(2, 1, 2, +1));
  CHECK(h.at(1).entries[1].phase == 9);
  CHECK(h.at(2).entries.size() == 2);
  CHECK(h.at(3).entries.size() == 4);
  CHECK(h.at(3).entries[0].dir == Direction::kRight);
  CHECK(h.at(3).entries[3].dir == Direction::kLeft);
  CHECK(h.at(4).entries.empty());
  CHECK(h.at(5).entries.empty());

  const BlockStory b4 = block_story(h, 4);
  CHECK(b4.visits() == 2);
  CHECK(b4.fully_exited());
  const BlockStory b1 = block_story(h, 1);
  CHECK(b1.entries.front() == D(1, 0, 0, +1));
  CHECK(b1.entries.back() == D(10, 0, 1, -1));
}

TEST_CASE("runs confined to the first block have two phases") {
  const Machine m = testing::load_corpus("always_accept");
  const Trace t = accepted_run(m, "ab");
  for (long P = 1; P <= 3; ++P) CHECK(phase_count(t, 3, P) == 2);
  const LemmaReport lemma = check_phase_lemma(t, 3);
  CHECK(lemma.k_by_first_len == std::vector<long>{2, 2, 2});
  CHECK(lemma.holds);
  CHECK(lemma.sum_bound_holds);
  CHECK(lemma.partition_identity_holds);
}

TEST_CASE("phase records cover the trace") {
  const Machine m = testing::load_corpus("palindrome");
  const Trace t = accepted_run(m, "abba");
  for (long n = 4; n <= 5; ++n) {
    for (long P = 1; P <= n; ++P) {
      const Partition part = Partition::make(P, n, blocks_visited(t, P, n));
      const auto phases = extract_phases(t, part);
      long steps = 0;
      std::vector<int> choices;
      for (std::size_t i = 0; i < phases.size(); ++i) {
        steps += phases[i].steps;
        choices.insert(choices.end(), phases[i].choices.begin(), phases[i].choices.end());
        REQUIRE(phases[i].end.has_value());
        if (i + 1 < phases.size()) CHECK(phases[i + 1].start == *phases[i].end);
      }
      CHECK(steps == t.usage().time);
      CHECK(choices == t.choices());
      CHECK(static_cast<long>(phases.size()) + 1 == phase_count(t, n, P));
      CHECK(phases.back().end->milestone == 0);
    }
  }
  CHECK_THROWS_AS(extract_phases(t, Partition::make(1, 1, 2)), RegionExceeded);
}

TEST_CASE("history invariants catch broken stories") {
  const Partition p{1, 2, 2};
  auto violations = [&](std::vector<Descriptor> ds) {
    return history_violations(history_from_descriptors(p, std::move(ds), true));
  };
  CHECK(violations({D(1, 0, 0, +1), D(2, 1, 3, +1), D(3, 1, 4, -1), D(4, 0, 1, -1)}).empty());
  CHECK_FALSE(violations({D(1, 0, 0, +1), D(2, 1, 3, -1), D(3, 1, 4, +1), D(4, 0, 1, -1)}).empty());
  CHECK_FALSE(violations({D(1, 0, 0, +1), D(2, 1, 3, +1), D(2, 1, 4, -1), D(4, 0, 1, -1)}).empty());
  CHECK_FALSE(violations({D(1, 0, 2, +1), D(2, 0, 1, -1)}).empty());
  CHECK_FALSE(violations({D(1, 0, 0, +1), D(2, 3, 1, +1)}).empty());
  CHECK_FALSE(violations({D(1, 0, 0, +1), D(3, 0, 1, -1)}).empty());
  CHECK_THROWS_AS(history_from_descriptors(p, {D(1, 9, 0, +1)}, true), MalformedStory);
}

TEST_CASE("block stories") {
  const Partition p{1, 2, 2};
  const History good = history_from_descriptors(
      p, {D(1, 0, 0, +1), D(2, 1, 3, +1), D(3, 1, 4, -1), D(4, 0, 1, -1)}, true);
  const BlockStory b2 = block_story(good, 2);
  CHECK(b2.entries == std::vector{D(2, 1, 3, +1), D(3, 1, 4, -1)});
  CHECK(block_story(good, 3).entries.empty());
  CHECK_THROWS_AS(block_story(good, 0), std::invalid_argument);
  CHECK_THROWS_AS(block_story(good, 4), std::invalid_argument);

  const History skipped = history_from_descriptors(
      p, {D(1, 0, 0, +1), D(2, 1, 3, +1), D(4, 1, 4, -1), D(5, 0, 1, -1)}, true);
  CHECK_THROWS_AS(block_story(skipped, 2), MalformedStory);

  const auto [plus, minus] = split_history(good.at(1));
  CHECK(plus.entries == std::vector{D(2, 1, 3, +1)});
  CHECK(minus.entries == std::vector{D(3, 1, 4, -1)});
  CHECK(merge_by_phase(minus.entries, plus.entries) == good.at(1).entries);
}

TEST_CASE("phase lemma report on the tight walk") {
  const Trace t = accepted_run(testing::tight_walk_machine(), "");
  CHECK(t.usage().time == 4);
  const LemmaReport lemma = check_phase_lemma(t, 2);
  CHECK(lemma.k_by_first_len == std::vector<long>{4, 4});
  CHECK(lemma.sum == 8);
  CHECK(lemma.boundary_moves == 4);
  CHECK(lemma.crossings_total == 6);
  CHECK(lemma.partition_identity_holds);
  CHECK_FALSE(lemma.holds);
  CHECK_THROWS_AS(check_phase_lemma(accepted_run(testing::four_block_walk(), ""), 2),
                  std::invalid_argument);
}

TEST_CASE("random runs yield well-formed histories") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coin(0, 1);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const Machine m = testing::random_machine(rng, 3 + i % 3);
    const Trace t = run_trace(m, parse_input(m, "ab"),
                              [&](StateId, int width) { return coin(rng) % width; }, 30);
    for (long n = 1; n <= 3; ++n) {
      for (long P = 1; P <= n; ++P) {
        const History h = extract_history(t, P, n);
        CHECK(history_violations(h).empty());
        CHECK(h.phase_count() == phase_count(t, n, P));
        ++checked;
      }
    }
  }
  CHECK(checked > 0);
}
