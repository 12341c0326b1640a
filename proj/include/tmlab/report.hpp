// JSON reports and story files (schema 1).

#ifndef TMLAB_REPORT_HPP_
#define TMLAB_REPORT_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmlab/crossing.hpp"
#include "tmlab/mstar.hpp"

namespace tmlab {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct RunReport {
  int schema = kSchemaVersion;
  std::string tool_version = kToolVersion;
  std::string machine;
  std::string input;
  std::optional<long> n;
  std::string mode;     // direct | crossings | mstar | verify-story | normalize
  std::string verdict;  // accept | reject | resource-cap | ok
  std::map<std::string, long> resources;
  std::map<std::string, double> constants;  // a, c, step blow-up
  std::optional<std::vector<long>> k_table;  // entry P-1 holds k(P)
  std::optional<long> best_first_len;
  std::optional<bool> lemma_holds;
  std::optional<bool> sum_bound_holds;
  std::optional<StoryGuess> story;
  std::vector<std::string> notes;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

std::string report_to_json(const RunReport& r, int indent = 2);
// Throws MalformedStory on malformed input.
RunReport report_from_json(std::string_view text);

// {schema, n, P, r, k, milestones: [[[phase, milestone, state, dir], ...], ...]}
std::string story_to_json(const StoryGuess& g, int indent = 2);
// Throws MalformedStory on malformed input. Structure is checked; the story
// invariants are left to guess_violations().
StoryGuess story_from_json(std::string_view text);

}  // namespace tmlab

#endif  // TMLAB_REPORT_HPP_
