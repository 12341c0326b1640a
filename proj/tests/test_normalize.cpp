#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tmlab/normalize.hpp"
#include "tmlab/simulate.hpp"

using namespace tmlab;

TEST_CASE("parse general machines") {
  const GeneralMachine g = testing::load_general("guess_aa");
  CHECK(g.name == "guess_aa");
  CHECK(g.state_count == 3);
  const Symbol a = 1;
  REQUIRE(g.transitions.contains({0, a}));
  CHECK(g.transitions.at({0, a}).size() == 2);
  CHECK_THROWS_AS(parse_general_machine("machine x\nstates 2\nalphabet 0\ntrans 0 0 0 U 1\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_general_machine("machine x\nstates 2\nalphabet 0\ntrans 0 0 0 S 1\ntrans 0 0 0 S 1\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_general_machine("machine x\nstates 2\nalphabet 0\ndet 0 0 move L 1\n"),
                  ParseError);
}

TEST_CASE("normalized corpus machines are in normal form") {
  for (const auto& name : testing::kGeneralCorpus) {
    const auto nr = normalize(testing::load_general(name));
    CAPTURE(name);
    CHECK(validate_normal_form(nr.machine).empty());
    CHECK(nr.step_blowup >= 1);
    CHECK(nr.step_blowup <= 4);
    CHECK(parse_machine(format_machine(nr.machine)) == nr.machine);
  }
}

TEST_CASE("normalization preserves acceptance on the general corpus") {
  for (const auto& name : testing::kGeneralCorpus) {
    const GeneralMachine g = testing::load_general(name);
    const auto nr = normalize(g);
    for (const auto& w : testing::words_upto("ab", 5)) {
      CAPTURE(name);
      CAPTURE(w);
      const auto input = parse_input(nr.machine, w);
      CHECK(run_general(g, input, 60) == run_direct(nr.machine, input, nr.scaled_time_bound(60)).accepted);
    }
  }
}

TEST_CASE("general corpus languages") {
  auto accepts = [](const std::string& name, const std::string& w) {
    const auto g = testing::load_general(name);
    Machine probe;
    probe.alphabet = g.alphabet;
    return run_general(g, parse_input(probe, w), 100);
  };
  CHECK(accepts("ends_with_b", "aab"));
  CHECK_FALSE(accepts("ends_with_b", "aba"));
  CHECK(accepts("guess_aa", "baab"));
  CHECK_FALSE(accepts("guess_aa", "abab"));
  CHECK(accepts("anbn_marking", ""));
  CHECK(accepts("anbn_marking", "aaabbb"));
  CHECK_FALSE(accepts("anbn_marking", "aabbb"));
  CHECK(accepts("swap_first", "abbb"));
  CHECK_FALSE(accepts("swap_first", "aa"));
  CHECK_FALSE(accepts("swap_first", "b"));
}

TEST_CASE("pure choice states map to branch lists") {
  const GeneralMachine g = parse_general_machine(R"(machine pick
states 4
alphabet 0 a
trans 0 0 0 S 2
trans 0 0 0 S 3
trans 0 a a S 2
trans 0 a a S 3
trans 3 a a S 1
)");
  const auto nr = normalize(g);
  CHECK(nr.machine.state_count == 4);
  REQUIRE(nr.machine.is_nondeterministic(0));
  CHECK(*nr.machine.branch_list(0) == std::vector<StateId>{2, 3});
  CHECK(run_direct(nr.machine, std::vector<Symbol>{1}, 10).accepted);
  CHECK_FALSE(run_direct(nr.machine, std::vector<Symbol>{}, 10).accepted);
}

TEST_CASE("random general machines normalize faithfully") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<int> move(-1, 1);
  for (int round = 0; round < 150; ++round) {
    GeneralMachine g;
    g.name = "random";
    g.alphabet = {"0", "a", "b"};
    g.state_count = 4;
    std::uniform_int_distribution<StateId> state(0, g.state_count - 1);
    for (StateId q = 0; q < g.state_count; ++q) {
      if (q == kAcceptState) continue;
      for (Symbol s = 0; s < 3; ++s) {
        const int options = pick(rng);
        for (int i = 0; i < options; ++i) {
          GeneralTransition t{state(rng), static_cast<Symbol>(pick(rng)),
                              static_cast<HeadMove>(move(rng))};
          auto& list = g.transitions[{q, s}];
          if (std::find(list.begin(), list.end(), t) == list.end()) list.push_back(t);
        }
      }
    }
    const auto nr = normalize(g);
    REQUIRE(validate_normal_form(nr.machine).empty());
    for (const auto& w : testing::words_upto("ab", 3)) {
      const auto input = parse_input(nr.machine, w);
      // Within T general steps the normal machine needs at most the scaled
      // bound; the converse holds once the general bound is generous.
      if (run_general(g, input, 6)) {
        CHECK(run_direct(nr.machine, input, nr.scaled_time_bound(6)).accepted);
      }
      if (run_direct(nr.machine, input, 12).accepted) CHECK(run_general(g, input, 12));
    }
  }
}

TEST_CASE("normalization errors") {
  GeneralMachine g;
  g.name = "noblank";
  g.state_count = 2;
  g.alphabet = {"a"};
  CHECK_THROWS_AS(normalize(g), std::invalid_argument);
  const GeneralMachine big = testing::load_general("anbn_marking");
  CHECK_THROWS_AS(normalize(big, 7), std::length_error);
}
