#include "tmlab/report.hpp"

#include <json.hpp>

namespace tmlab {

using nlohmann::json;

namespace {

json story_json(const StoryGuess& g) {
  json milestones = json::array();
  for (const auto& mh : g.story.milestones) {
    json entries = json::array();
    for (const auto& d : mh.entries) {
      entries.push_back({d.phase, d.milestone, d.state, sign(d.dir)});
    }
    milestones.push_back(std::move(entries));
  }
  return {{"schema", kSchemaVersion}, {"n", g.n},          {"P", g.first_len},
          {"r", g.blocks},            {"k", g.phases},     {"milestones", milestones}};
}

StoryGuess story_from(const json& j) {
  if (!j.is_object()) throw MalformedStory("story must be a JSON object");
  if (j.value("schema", 0) != kSchemaVersion) throw MalformedStory("unsupported story schema");
  StoryGuess g;
  g.n = j.at("n").get<long>();
  g.first_len = j.at("P").get<long>();
  g.blocks = j.at("r").get<long>();
  g.phases = j.at("k").get<long>();
  if (g.n < 1 || g.first_len < 1 || g.first_len > g.n || g.blocks < 1) {
    throw MalformedStory("story needs 1 <= P <= n and r >= 1");
  }
  const json& ms = j.at("milestones");
  if (!ms.is_array() || static_cast<long>(ms.size()) != g.blocks + 2) {
    throw MalformedStory("story must list r + 2 milestone histories");
  }
  g.story.partition = Partition{g.first_len, g.n, g.blocks};
  g.story.guessed = true;
  for (std::size_t m = 0; m < ms.size(); ++m) {
    MilestoneHistory mh;
    mh.milestone = static_cast<long>(m);
    for (const json& e : ms[m]) {
      if (!e.is_array() || e.size() != 4) throw MalformedStory("descriptor must be [p, j, i, d]");
      const int dir = e[3].get<int>();
      if (dir != 1 && dir != -1) throw MalformedStory("descriptor direction must be +1 or -1");
      const long state = e[2].get<long>();
      if (state < 0) throw MalformedStory("descriptor state must be non-negative");
      mh.entries.push_back({e[0].get<long>(), e[1].get<long>(), static_cast<StateId>(state),
                            dir > 0 ? Direction::kRight : Direction::kLeft});
    }
    g.story.milestones.push_back(std::move(mh));
  }
  return g;
}

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key)) v = j.at(key).get<T>();
}

}  // namespace

std::string story_to_json(const StoryGuess& g, int indent) { return story_json(g).dump(indent); }

StoryGuess story_from_json(std::string_view text) {
  try {
    return story_from(json::parse(text));
  } catch (const json::exception& e) {
    throw MalformedStory(std::string("malformed story: ") + e.what());
  }
}

std::string report_to_json(const RunReport& r, int indent) {
  json j = {{"schema", r.schema},   {"tool_version", r.tool_version},
            {"machine", r.machine}, {"input", r.input},
            {"mode", r.mode},       {"verdict", r.verdict},
            {"resources", r.resources}, {"constants", r.constants},
            {"notes", r.notes}};
  put_optional(j, "n", r.n);
  put_optional(j, "k_table", r.k_table);
  put_optional(j, "best_P", r.best_first_len);
  put_optional(j, "lemma_holds", r.lemma_holds);
  put_optional(j, "sum_bound_holds", r.sum_bound_holds);
  if (r.story) j["story"] = story_json(*r.story);
  return j.dump(indent);
}

RunReport report_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    RunReport r;
    r.schema = j.at("schema").get<int>();
    if (r.schema != kSchemaVersion) throw MalformedStory("unsupported report schema");
    r.tool_version = j.at("tool_version").get<std::string>();
    r.machine = j.at("machine").get<std::string>();
    r.input = j.at("input").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.verdict = j.at("verdict").get<std::string>();
    r.resources = j.at("resources").get<std::map<std::string, long>>();
    r.constants = j.at("constants").get<std::map<std::string, double>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    get_optional(j, "n", r.n);
    get_optional(j, "k_table", r.k_table);
    get_optional(j, "best_P", r.best_first_len);
    get_optional(j, "lemma_holds", r.lemma_holds);
    get_optional(j, "sum_bound_holds", r.sum_bound_holds);
    if (j.contains("story")) r.story = story_from(j.at("story"));
    return r;
  } catch (const json::exception& e) {
    throw MalformedStory(std::string("malformed report: ") + e.what());
  }
}

}  // namespace tmlab
