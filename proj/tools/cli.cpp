#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "tmlab/crossing.hpp"
#include "tmlab/machine.hpp"
#include "tmlab/mstar.hpp"
#include "tmlab/normalize.hpp"
#include "tmlab/report.hpp"
#include "tmlab/simulate.hpp"

namespace tmlab::cli {

namespace {

struct Failure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kIoError, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{kIoError, "cannot write " + path};
}

Machine load_machine(const std::string& path) {
  const std::string text = read_file(path);
  Machine m;
  try {
    m = parse_machine(text);
  } catch (const ParseError& e) {
    throw Failure{kBadData, path + ": " + e.what()};
  }
  const auto violations = validate_normal_form(m);
  if (!violations.empty()) {
    throw Failure{kBadData, path + ": not in normal form: " + violations.front().message};
  }
  return m;
}

std::vector<Symbol> load_input(const Machine& m, const std::string& text) {
  try {
    return parse_input(m, text);
  } catch (const std::invalid_argument& e) {
    throw Failure{kUsage, std::string("--input: ") + e.what()};
  }
}

long default_scale(const std::vector<Symbol>& w, std::optional<long> n) {
  const long least = std::max<long>(1, static_cast<long>(w.size()));
  if (!n) return least;
  if (*n < least) throw Failure{kUsage, "-n must be at least max(|w|, 1)"};
  return *n;
}

void emit(std::ostream& out, const RunReport& r, bool json) {
  if (json) {
    out << report_to_json(r) << '\n';
    return;
  }
  out << r.verdict;
  for (const auto& [key, value] : r.resources) out << ' ' << key << '=' << value;
  for (const auto& [key, value] : r.constants) out << ' ' << key << '=' << value;
  out << '\n';
  if (r.k_table) {
    for (std::size_t p = 0; p < r.k_table->size(); ++p) {
      out << "  P=" << p + 1 << " k=" << (*r.k_table)[p] << '\n';
    }
    out << "  best_P=" << *r.best_first_len << " holds=" << (*r.lemma_holds ? "true" : "false")
        << " sum_bound=" << (*r.sum_bound_holds ? "true" : "false") << '\n';
  }
  for (const auto& note : r.notes) out << "  " << note << '\n';
}

RunReport base_report(const Machine& m, const std::vector<Symbol>& w, const char* mode) {
  RunReport r;
  r.machine = m.name;
  r.input = format_input(m, w);
  r.mode = mode;
  return r;
}

struct Flags {
  std::string file;
  std::string input;
  std::optional<long> max_steps;
  std::optional<long> n;
  std::string story_in;
  std::string story_out;
  std::string output;
  bool json = false;
};

int cmd_validate(const Flags& f, std::ostream& out) {
  const std::string text = read_file(f.file);
  Machine m;
  try {
    m = parse_machine(text);
  } catch (const ParseError& e) {
    out << f.file << ": " << e.what() << '\n';
    return kRejected;
  }
  const auto violations = validate_normal_form(m);
  for (const auto& v : violations) out << f.file << ": " << v.message << '\n';
  if (!violations.empty()) return kRejected;
  out << "ok " << m.name << " states=" << m.state_count << '\n';
  return kOk;
}

int cmd_run(const Flags& f, std::ostream& out) {
  const Machine m = load_machine(f.file);
  const auto w = load_input(m, f.input);
  const long max_time = f.max_steps.value_or(1000);
  if (max_time < 0) throw Failure{kUsage, "--max-steps must be non-negative"};
  RunReport r = base_report(m, w, "direct");
  r.resources["max_steps"] = max_time;
  int code;
  try {
    const DirectResult d = run_direct(m, w, max_time);
    r.resources["explored"] = d.explored;
    if (d.accepted) {
      r.verdict = "accept";
      r.resources["time"] = d.usage->time;
      r.resources["space"] = d.usage->space;
      code = kOk;
    } else {
      r.verdict = "reject";
      code = kRejected;
    }
  } catch (const ResourceCapExceeded& e) {
    r.verdict = "resource-cap";
    r.notes.push_back(e.what());
    code = kResourceCap;
  }
  emit(out, r, f.json);
  return code;
}

int cmd_crossings(const Flags& f, std::ostream& out) {
  const Machine m = load_machine(f.file);
  const auto w = load_input(m, f.input);
  const long n = default_scale(w, f.n);
  RunReport r = base_report(m, w, "crossings");
  r.n = n;
  DirectResult d;
  try {
    d = run_direct(m, w, n * n);
  } catch (const ResourceCapExceeded& e) {
    r.verdict = "resource-cap";
    r.notes.push_back(e.what());
    emit(out, r, f.json);
    return kResourceCap;
  }
  if (!d.accepted) {
    r.verdict = "reject";
    r.k_table = std::vector<long>{};
    r.notes.push_back("no accepting computation within n^2 steps");
    if (f.json) {
      out << report_to_json(r) << '\n';
    } else {
      out << "reject: no accepting computation within n^2 steps\n";
    }
    return kRejected;
  }
  const LemmaReport lemma = check_phase_lemma(*d.witness, n);
  r.verdict = "accept";
  r.resources["time"] = d.usage->time;
  r.resources["space"] = d.usage->space;
  r.resources["crossings"] = lemma.crossings_total;
  r.resources["k_sum"] = lemma.sum;
  r.k_table = lemma.k_by_first_len;
  r.best_first_len = lemma.best_first_len;
  r.lemma_holds = lemma.holds;
  r.sum_bound_holds = lemma.sum_bound_holds;
  if (!f.story_out.empty()) {
    const History h = extract_history(*d.witness, lemma.best_first_len, n);
    write_file(f.story_out, story_to_json(guess_from_history(h, n)) + "\n");
  }
  emit(out, r, f.json);
  return kOk;
}

void fill_mstar(RunReport& r, const MStarResult& res) {
  r.resources["explored"] = res.explored;
  r.constants["c"] = static_cast<double>(res.descriptor_cells);
  if (res.accepted) {
    r.resources["sim_time"] = res.sim_time;
    r.resources["sim_space"] = res.sim_space;
    r.resources["simulated_moves"] = res.simulated_moves;
    r.constants["a"] = res.time_constant();
    r.story = res.winning;
  }
  if (res.budget_exhausted) r.notes.push_back("step budget n^2 exhausted on some branch");
  for (const auto& why : res.rejection) r.notes.push_back(why);
}

int cmd_mstar(const Flags& f, std::ostream& out) {
  const Machine m = load_machine(f.file);
  const auto w = load_input(m, f.input);
  RunReport r = base_report(m, w, f.story_in.empty() ? "mstar" : "verify-story");
  MStarResult res;
  try {
    if (!f.story_in.empty()) {
      StoryGuess g;
      try {
        g = story_from_json(read_file(f.story_in));
      } catch (const MalformedStory& e) {
        throw Failure{kBadData, f.story_in + ": " + e.what()};
      }
      if (f.n && *f.n != g.n) throw Failure{kUsage, "-n disagrees with the story's n"};
      if (g.n < static_cast<long>(w.size())) throw Failure{kBadData, "story scale n is below |w|"};
      r.n = g.n;
      res = verify_story(m, w, g);
    } else {
      r.n = default_scale(w, f.n);
      res = simulate_mstar(m, w, *r.n);
    }
  } catch (const ResourceCapExceeded& e) {
    r.verdict = "resource-cap";
    r.notes.push_back(e.what());
    emit(out, r, f.json);
    return kResourceCap;
  }
  r.verdict = res.accepted ? "accept" : "reject";
  fill_mstar(r, res);
  if (res.accepted && !f.story_out.empty()) {
    write_file(f.story_out, story_to_json(*res.winning) + "\n");
  }
  emit(out, r, f.json);
  return res.accepted ? kOk : kRejected;
}

int cmd_normalize(const Flags& f, std::ostream& out) {
  const std::string text = read_file(f.file);
  GeneralMachine g;
  try {
    g = parse_general_machine(text);
  } catch (const ParseError& e) {
    throw Failure{kBadData, f.file + ": " + e.what()};
  }
  NormalizeResult nr;
  try {
    nr = normalize(g);
  } catch (const std::invalid_argument& e) {
    throw Failure{kBadData, f.file + ": " + e.what()};
  } catch (const std::length_error& e) {
    throw Failure{kResourceCap, f.file + ": " + e.what()};
  }
  const std::string formatted = format_machine(nr.machine);
  if (!f.output.empty()) write_file(f.output, formatted);
  if (f.json) {
    RunReport r;
    r.machine = g.name;
    r.mode = "normalize";
    r.verdict = "ok";
    r.resources["states"] = nr.machine.state_count;
    r.constants["step_blowup"] = nr.step_blowup;
    out << report_to_json(r) << '\n';
  } else if (f.output.empty()) {
    out << formatted;
  } else {
    out << "ok states=" << nr.machine.state_count << " step_blowup=" << nr.step_blowup << '\n';
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normal-form NTM toolkit", "tmlab"};
  app.require_subcommand(1);
  Flags f;

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", f.file, "machine file")->required();
  };
  auto* validate = app.add_subcommand("validate", "parse and check normal form");
  add_file(validate);

  auto* run = app.add_subcommand("run", "exhaustive bounded search");
  add_file(run);
  run->add_option("--input,-i", f.input, "input word");
  run->add_option("--max-steps,-T", f.max_steps, "time bound (default 1000)");
  run->add_flag("--json", f.json);

  auto* crossings = app.add_subcommand("crossings", "k(P) table of an accepting trace");
  add_file(crossings);
  crossings->add_option("--input,-i", f.input, "input word");
  crossings->add_option("-n", f.n, "scale (default max(|w|, 1))");
  crossings->add_option("--story-out", f.story_out, "write the history at the best P");
  crossings->add_flag("--json", f.json);

  auto* mstar = app.add_subcommand("mstar", "guess-and-verify simulation");
  add_file(mstar);
  mstar->add_option("--input,-i", f.input, "input word");
  mstar->add_option("-n", f.n, "scale (default max(|w|, 1))");
  mstar->add_option("--story", f.story_in, "verify this story only");
  mstar->add_option("--story-out", f.story_out, "write the winning story");
  mstar->add_flag("--json", f.json);

  auto* norm = app.add_subcommand("normalize", "convert a general machine to normal form");
  add_file(norm);
  norm->add_option("-o,--output", f.output, "write the normal-form machine here");
  norm->add_flag("--json", f.json);

  std::vector<std::string> argv_storage{"tmlab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(f, out);
    if (run->parsed()) return cmd_run(f, out);
    if (crossings->parsed()) return cmd_crossings(f, out);
    if (mstar->parsed()) return cmd_mstar(f, out);
    return cmd_normalize(f, out);
  } catch (const Failure& e) {
    err << "tmlab: " << e.message << '\n';
    return e.code;
  }
}

}  // namespace tmlab::cli
