#include <doctest.h>

#include <functional>
#include <random>

#include "support.hpp"
#include "tmlab/simulate.hpp"

using namespace tmlab;

namespace {

std::vector<Symbol> word(const Machine& m, const std::string& w) { return parse_input(m, w); }

// Fewest steps to acceptance by trying every choice sequence, or -1.
long brute_min_time(const Machine& m, const Configuration& c, long budget) {
  std::vector<StepResult> results;
  if (const auto* succ = m.branch_list(c.state)) {
    for (int i = 0; i < static_cast<int>(succ->size()); ++i) results.push_back(step(m, c, i));
  } else {
    results.push_back(step(m, c));
  }
  long best = -1;
  for (auto& r : results) {
    if (const auto* h = std::get_if<Halt>(&r)) {
      if (h->reason == HaltReason::kAcceptingExit) return 0;
      continue;
    }
    if (budget == 0) continue;
    const long sub = brute_min_time(m, std::get<Configuration>(r), budget - 1);
    if (sub >= 0 && (best < 0 || sub + 1 < best)) best = sub + 1;
  }
  return best;
}

}  // namespace

TEST_CASE("single steps") {
  const Machine m = testing::load_corpus("sweep_right");
  const Symbol a = *m.symbol_id("a");
  Configuration c = initial_configuration(word(m, "ab"));

  auto r = step(m, c);
  REQUIRE(std::holds_alternative<Configuration>(r));
  CHECK(std::get<Configuration>(r).head == 2);

  c.state = 2;
  r = step(m, c);
  REQUIRE(std::holds_alternative<Configuration>(r));
  CHECK(std::get<Configuration>(r).state == 1);
  CHECK(std::get<Configuration>(r).read(1) == a);

  c.state = 1;
  r = step(m, c);
  REQUIRE(std::holds_alternative<Halt>(r));
  CHECK(std::get<Halt>(r).reason == HaltReason::kAcceptingExit);

  c.state = 0;
  c.head = 3;
  r = step(m, c);
  REQUIRE(std::holds_alternative<Configuration>(r));
  c = std::get<Configuration>(r);
  CHECK(c.state == 2);
  c.head = 2;  // scanning b in state 2: no rule
  r = step(m, c);
  REQUIRE(std::holds_alternative<Halt>(r));
  CHECK(std::get<Halt>(r).reason == HaltReason::kNoRule);

  const Machine g = testing::load_corpus("contains_a");
  const Configuration g0 = initial_configuration(word(g, "a"));
  CHECK_THROWS_AS(step(g, g0), std::invalid_argument);
  CHECK_THROWS_AS(step(g, g0, 2), std::invalid_argument);
  CHECK(std::get<Configuration>(step(g, g0, 1)).state == 3);
  CHECK_THROWS_AS(step(m, initial_configuration({}), 0), std::invalid_argument);
}

TEST_CASE("left edge in a non-accepting state rejects") {
  const Machine m = testing::load_corpus("sweep_right");
  const Trace t = run_trace(m, {}, nullptr, 10);
  CHECK(t.outcome == Outcome::kHaltedRejecting);
  CHECK(t.halt == HaltReason::kLeftEdge);
  CHECK(t.usage().time == 0);
}

TEST_CASE("resource usage of a traced run") {
  const Machine m = testing::load_corpus("sweep_right");
  const Trace t = run_trace(m, word(m, "ba"), nullptr, 100);
  CHECK(t.outcome == Outcome::kAccepted);
  // Two moves right, one back, a write, one move home; the exit is free.
  CHECK(t.usage().time == 5);
  CHECK(t.usage().space == 3);
  CHECK(t.steps.size() == 6);
  CHECK(t.ends_at_left_edge());

  const Trace bounded = run_trace(m, word(m, "ba"), nullptr, 4);
  CHECK(bounded.outcome == Outcome::kTimeBoundExceeded);
  CHECK(run_trace(m, word(m, "ba"), nullptr, 5).outcome == Outcome::kAccepted);
}

TEST_CASE("direct search examples") {
  const Machine always = testing::load_corpus("always_accept");
  CHECK(run_direct(always, {}, 2).accepted);
  CHECK(run_direct(always, {}, 1).accepted);
  CHECK_FALSE(run_direct(always, {}, 0).accepted);

  const Machine pal = testing::load_corpus("palindrome");
  const auto yes = run_direct(pal, word(pal, "aba"), 9);
  CHECK(yes.accepted);
  CHECK(yes.usage->time == 6);
  CHECK_FALSE(run_direct(pal, word(pal, "ab"), 4).accepted);
  CHECK_FALSE(run_direct(pal, word(pal, "ab"), 1000).accepted);
  CHECK(run_direct(pal, word(pal, "abba"), 1000).accepted);
  CHECK(run_direct(pal, word(pal, "abaaba"), 1000).accepted);
  CHECK_FALSE(run_direct(pal, word(pal, "abaabb"), 1000).accepted);

  const Machine anbn = testing::load_corpus("anbn");
  CHECK(run_direct(anbn, word(anbn, "aabb"), 1000).accepted);
  CHECK_FALSE(run_direct(anbn, word(anbn, "abab"), 1000).accepted);
  CHECK_FALSE(run_direct(anbn, word(anbn, "aab"), 1000).accepted);
}

TEST_CASE("witness is minimal and replays") {
  const Machine g = testing::load_corpus("contains_a");
  for (const auto& w : testing::words_upto("ab", 5)) {
    const auto input = word(g, w);
    const auto d = run_direct(g, input, 40);
    const long brute = brute_min_time(g, initial_configuration(input), 40);
    CHECK(d.accepted == (brute >= 0));
    CHECK(d.accepted == (w.find('a') != std::string::npos));
    if (!d.accepted) continue;
    CHECK(d.usage->time == brute);
    const Trace again = replay(g, input, d.witness->choices(), d.usage->time);
    CHECK(again.outcome == Outcome::kAccepted);
    CHECK(again.steps == d.witness->steps);
  }
}

TEST_CASE("direct search agrees with brute force on random machines") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Machine m = testing::random_machine(rng, 2 + i % 4);
    for (const std::string w : {"", "a", "ab", "bba"}) {
      const auto input = word(m, w);
      const auto d = run_direct(m, input, 9);
      const long brute = brute_min_time(m, initial_configuration(input), 9);
      CHECK(d.accepted == (brute >= 0));
      if (d.accepted) CHECK(d.usage->time == brute);
    }
  }
}

TEST_CASE("replay rejects bad choice sequences") {
  const Machine g = testing::load_corpus("contains_a");
  const auto input = word(g, "ba");
  CHECK_THROWS_AS(replay(g, input, std::vector<int>{1}, 100), std::invalid_argument);
  CHECK_THROWS_AS(replay(g, input, std::vector<int>{1, 0, 0}, 100), std::invalid_argument);
  CHECK(replay(g, input, std::vector<int>{1, 0}, 100).outcome == Outcome::kAccepted);
}

TEST_CASE("node cap is distinct from rejection") {
  const Machine g = testing::load_corpus("contains_a");
  const auto input = word(g, "bbbbbb");
  CHECK_THROWS_AS(run_direct(g, input, 100, 5), ResourceCapExceeded);
  CHECK_FALSE(run_direct(g, input, 100).accepted);
  CHECK_THROWS_AS(run_direct(g, input, -1), std::invalid_argument);
}
