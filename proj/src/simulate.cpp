#include "tmlab/simulate.hpp"

#include <algorithm>
#include <unordered_set>

namespace tmlab {

void Configuration::write(long cell, Symbol s) {
  if (cell < 1) throw std::out_of_range("write before cell 1");
  if (static_cast<std::size_t>(cell) > tape.size()) {
    if (s == kBlank) return;
    tape.resize(cell, kBlank);
  }
  tape[cell - 1] = s;
}

std::string Configuration::key() const {
  std::size_t used = tape.size();
  while (used > 0 && tape[used - 1] == kBlank) --used;
  std::string k;
  k.reserve(sizeof(state) + sizeof(head) + used * sizeof(Symbol));
  k.append(reinterpret_cast<const char*>(&state), sizeof(state));
  k.append(reinterpret_cast<const char*>(&head), sizeof(head));
  k.append(reinterpret_cast<const char*>(tape.data()), used * sizeof(Symbol));
  return k;
}

bool operator==(const Configuration& a, const Configuration& b) {
  return a.state == b.state && a.head == b.head && a.key() == b.key();
}

Configuration initial_configuration(std::span<const Symbol> input) {
  Configuration c;
  c.tape.assign(input.begin(), input.end());
  return c;
}

namespace {

// Computes the step taken from `c` (if any) and the resulting configuration.
struct Applied {
  std::optional<TraceStep> record;  // absent only for kNoRule halts
  StepResult result;
};

Applied apply(const Machine& m, const Configuration& c, std::optional<int> choice) {
  TraceStep rec;
  rec.state = c.state;
  rec.head = c.head;
  rec.scanned = c.read(c.head);
  if (const auto* succ = m.branch_list(c.state)) {
    if (!choice) {
      throw std::invalid_argument("state " + std::to_string(c.state) +
                                  " is nondeterministic and needs a choice");
    }
    if (*choice < 0 || static_cast<std::size_t>(*choice) >= succ->size()) {
      throw std::invalid_argument("choice " + std::to_string(*choice) +
                                  " out of range for state " + std::to_string(c.state));
    }
    rec.kind = ActionKind::kBranch;
    rec.choice = *choice;
    rec.next = (*succ)[*choice];
    Configuration next = c;
    next.state = rec.next;
    return {rec, std::move(next)};
  }
  if (choice) {
    throw std::invalid_argument("state " + std::to_string(c.state) +
                                " is deterministic and takes no choice");
  }
  const DetRule* rule = m.rule(c.state, rec.scanned);
  if (rule == nullptr) return {std::nullopt, Halt{HaltReason::kNoRule, c.state}};
  if (rule->move.has_value() == rule->write.has_value()) {
    throw std::invalid_argument("rule for state " + std::to_string(c.state) +
                                " is not in normal form");
  }
  rec.next = rule->next;
  if (rule->move) {
    rec.kind = ActionKind::kMove;
    rec.dir = *rule->move;
    if (rec.dir == Direction::kLeft && c.head == 1) {
      auto reason = c.state == kAcceptState ? HaltReason::kAcceptingExit : HaltReason::kLeftEdge;
      return {rec, Halt{reason, c.state}};
    }
    Configuration next = c;
    next.head += sign(rec.dir);
    next.state = rule->next;
    return {rec, std::move(next)};
  }
  rec.kind = ActionKind::kWrite;
  rec.written = *rule->write;
  Configuration next = c;
  next.write(c.head, rec.written);
  next.state = rule->next;
  return {rec, std::move(next)};
}

bool at_left_edge(const DetRule& rule, const Configuration& c) {
  return rule.move == Direction::kLeft && c.head == 1;
}

Trace run_with(const Machine& m, std::span<const Symbol> input, long max_time,
               const std::function<std::optional<int>(const Configuration&)>& choose) {
  Trace t;
  t.input.assign(input.begin(), input.end());
  Configuration c = initial_configuration(input);
  while (true) {
    if (static_cast<long>(t.steps.size()) >= max_time) {
      // Halting costs no time: a missing rule or an attempt to leave the
      // tape still ends the run at the bound.
      const DetRule* rule =
          m.is_nondeterministic(c.state) ? nullptr : m.rule(c.state, c.read(c.head));
      if (!m.is_nondeterministic(c.state) && rule == nullptr) {
        t.outcome = Outcome::kHaltedRejecting;
        t.halt = HaltReason::kNoRule;
        break;
      }
      if (rule == nullptr || !at_left_edge(*rule, c)) {
        t.outcome = Outcome::kTimeBoundExceeded;
        break;
      }
    }
    Applied a = apply(m, c, choose(c));
    if (a.record) t.steps.push_back(*a.record);
    if (auto* h = std::get_if<Halt>(&a.result)) {
      t.halt = h->reason;
      t.outcome = h->reason == HaltReason::kAcceptingExit ? Outcome::kAccepted
                                                          : Outcome::kHaltedRejecting;
      break;
    }
    c = std::move(std::get<Configuration>(a.result));
  }
  t.final_config = std::move(c);
  return t;
}

}  // namespace

StepResult step(const Machine& m, const Configuration& c, std::optional<int> choice) {
  return apply(m, c, choice).result;
}

ResourceUsage Trace::usage() const {
  long max_head = final_config.head;
  for (const auto& s : steps) max_head = std::max(max_head, s.head);
  const long time = static_cast<long>(steps.size()) - (ends_at_left_edge() ? 1 : 0);
  return {time, max_head};
}

std::vector<int> Trace::choices() const {
  std::vector<int> out;
  for (const auto& s : steps) {
    if (s.kind == ActionKind::kBranch) out.push_back(s.choice);
  }
  return out;
}

bool Trace::ends_at_left_edge() const {
  return halt && (*halt == HaltReason::kAcceptingExit || *halt == HaltReason::kLeftEdge);
}

Trace run_trace(const Machine& m, std::span<const Symbol> input, const Chooser& chooser,
                long max_time) {
  return run_with(m, input, max_time, [&](const Configuration& c) -> std::optional<int> {
    if (const auto* succ = m.branch_list(c.state)) {
      return chooser(c.state, static_cast<int>(succ->size()));
    }
    return std::nullopt;
  });
}

Trace replay(const Machine& m, std::span<const Symbol> input, std::span<const int> choices,
             long max_time) {
  std::size_t used = 0;
  Trace t = run_with(m, input, max_time, [&](const Configuration& c) -> std::optional<int> {
    if (!m.is_nondeterministic(c.state)) return std::nullopt;
    if (used >= choices.size()) throw std::invalid_argument("choice sequence exhausted");
    return choices[used++];
  });
  if (used != choices.size()) throw std::invalid_argument("choice sequence not fully consumed");
  return t;
}

DirectResult run_direct(const Machine& m, std::span<const Symbol> input, long max_time,
                        long node_cap) {
  if (max_time < 0) throw std::invalid_argument("max_time must be non-negative");
  struct Link {
    long parent;
    int choice;
  };
  std::vector<Link> links{{-1, -1}};
  std::vector<std::pair<Configuration, long>> frontier;
  frontier.emplace_back(initial_configuration(input), 0);
  std::unordered_set<std::string> seen{frontier.front().first.key()};

  DirectResult result;
  auto choices_of = [&](long node) {
    std::vector<int> out;
    for (long at = node; at > 0; at = links[at].parent) {
      if (links[at].choice >= 0) out.push_back(links[at].choice);
    }
    std::reverse(out.begin(), out.end());
    return out;
  };

  // Configurations at depth max_time are only examined for an accepting exit.
  for (long depth = 0; !frontier.empty(); ++depth) {
    const bool last_layer = depth == max_time;
    std::vector<std::pair<Configuration, long>> next_frontier;
    for (auto& entry : frontier) {
      const Configuration& config = entry.first;
      const long node = entry.second;
      if (++result.explored > node_cap) {
        throw ResourceCapExceeded("direct search exceeded " + std::to_string(node_cap) +
                                  " explored configurations");
      }
      auto push = [&](Configuration&& c, int choice) {
        if (!seen.insert(c.key()).second) return;
        links.push_back({node, choice});
        next_frontier.emplace_back(std::move(c), static_cast<long>(links.size()) - 1);
      };
      if (const auto* succ = m.branch_list(config.state)) {
        if (last_layer) continue;
        for (int i = 0; i < static_cast<int>(succ->size()); ++i) {
          push(std::get<Configuration>(step(m, config, i)), i);
        }
        continue;
      }
      StepResult r = step(m, config);
      if (auto* h = std::get_if<Halt>(&r)) {
        if (h->reason != HaltReason::kAcceptingExit) continue;
        result.accepted = true;
        result.witness = replay(m, input, choices_of(node), depth);
        result.usage = result.witness->usage();
        return result;
      }
      if (!last_layer) push(std::move(std::get<Configuration>(r)), -1);
    }
    if (last_layer) break;
    frontier = std::move(next_frontier);
  }
  return result;
}

}  // namespace tmlab
