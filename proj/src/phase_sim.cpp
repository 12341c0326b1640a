#include "tmlab/phase_sim.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <unordered_set>

namespace tmlab {

const char* to_string(RejectReason r) {
  switch (r) {
    case RejectReason::kHaltedInside: return "halted-inside";
    case RejectReason::kWrongState: return "wrong-state";
    case RejectReason::kWrongExitLeft: return "wrong-exit-left";
    case RejectReason::kWrongExitRight: return "wrong-exit-right";
    case RejectReason::kStepCapExceeded: return "step-cap-exceeded";
  }
  return "unknown";
}

long phase_block(const Descriptor& in, const Descriptor& out) {
  if (out.phase != in.phase + 1) {
    throw MalformedStory("phase pair " + to_string(in) + ", " + to_string(out) +
                         " is not consecutive");
  }
  const long block = in.entered_block();
  if (block < 1) throw MalformedStory("descriptor " + to_string(in) + " enters no block");
  if (in.milestone == 0 && (in.phase != 1 || in.state != kInitialState)) {
    throw MalformedStory("only (1,0,0,+1) enters from the left end of the tape");
  }
  if (out.milestone != block - 1 && out.milestone != block) {
    throw MalformedStory("descriptor " + to_string(out) + " does not leave block B_" +
                         std::to_string(block));
  }
  return block;
}

namespace {

struct Node {
  StateId state;
  long pos;                    // index into `tape`; sentinels at 0 and size-1
  std::vector<Symbol> tape;
  std::vector<int> choices;
};

std::string node_key(const Node& n) {
  std::string k;
  k.append(reinterpret_cast<const char*>(&n.state), sizeof(n.state));
  k.append(reinterpret_cast<const char*>(&n.pos), sizeof(n.pos));
  k.append(reinterpret_cast<const char*>(n.tape.data()), n.tape.size() * sizeof(Symbol));
  return k;
}

BlockContent inner(const std::vector<Symbol>& tape) {
  return {std::vector<Symbol>(tape.begin() + 1, tape.end() - 1)};
}

}  // namespace

std::vector<PhaseExit> enumerate_phase_exits(const Machine& m, long block, const Descriptor& in,
                                             const BlockContent& x, long step_cap) {
  if (in.entered_block() != block) {
    throw MalformedStory("descriptor " + to_string(in) + " does not enter block B_" +
                         std::to_string(block));
  }
  if (x.symbols.empty()) throw std::invalid_argument("block contents must not be empty");
  for (Symbol s : x.symbols) {
    if (s >= m.alphabet.size()) throw std::invalid_argument("block contents outside the alphabet");
  }

  Node start;
  start.state = in.state;
  start.tape.reserve(x.size() + 2);
  start.tape.push_back(kLeftSentinel);
  start.tape.insert(start.tape.end(), x.symbols.begin(), x.symbols.end());
  start.tape.push_back(kRightSentinel);
  start.pos = in.dir == Direction::kRight ? 1 : static_cast<long>(x.size());

  std::vector<PhaseExit> exits;
  std::set<std::tuple<ExitSide, StateId, BlockContent>> exit_seen;
  auto record = [&](ExitSide side, StateId state, const Node& n, long steps) {
    BlockContent content = inner(n.tape);
    if (!exit_seen.emplace(side, state, content).second) return;
    exits.push_back({side, false, state, std::move(content), steps, n.choices});
  };

  std::unordered_set<std::string> seen{node_key(start)};
  std::vector<Node> frontier{std::move(start)};
  for (long depth = 0; depth < step_cap && !frontier.empty(); ++depth) {
    std::vector<Node> next;
    auto push = [&](Node&& n) {
      if (seen.insert(node_key(n)).second) next.push_back(std::move(n));
    };
    for (const Node& n : frontier) {
      if (const auto* succ = m.branch_list(n.state)) {
        for (int i = 0; i < static_cast<int>(succ->size()); ++i) {
          Node child = n;
          child.state = (*succ)[i];
          child.choices.push_back(i);
          push(std::move(child));
        }
        continue;
      }
      const DetRule* rule = m.rule(n.state, n.tape[n.pos]);
      if (rule == nullptr) {
        record(ExitSide::kNone, n.state, n, depth);
        continue;
      }
      if (rule->move.has_value() == rule->write.has_value()) {
        throw std::invalid_argument("machine is not in normal form");
      }
      if (rule->write) {
        Node child = n;
        child.tape[n.pos] = *rule->write;
        child.state = rule->next;
        push(std::move(child));
        continue;
      }
      const long to = n.pos + sign(*rule->move);
      if (n.tape[to] == kLeftSentinel) {
        // On B_1 the left sentinel stands for the left end of the tape: the
        // exit carries the state that attempted the move and costs no time.
        if (block == 1) {
          record(ExitSide::kLeft, n.state, n, depth);
        } else {
          record(ExitSide::kLeft, rule->next, n, depth + 1);
        }
      } else if (n.tape[to] == kRightSentinel) {
        record(ExitSide::kRight, rule->next, n, depth + 1);
      } else {
        Node child = n;
        child.pos = to;
        child.state = rule->next;
        push(std::move(child));
      }
    }
    frontier = std::move(next);
  }

  bool capped = false;
  for (const Node& n : frontier) {
    const DetRule* rule =
        m.is_nondeterministic(n.state) ? nullptr : m.rule(n.state, n.tape[n.pos]);
    if (!m.is_nondeterministic(n.state) && rule == nullptr) {
      record(ExitSide::kNone, n.state, n, step_cap);
    } else if (block == 1 && rule != nullptr && rule->move == Direction::kLeft &&
               n.tape[n.pos - 1] == kLeftSentinel) {
      record(ExitSide::kLeft, n.state, n, step_cap);
    } else {
      capped = true;
    }
  }
  std::stable_sort(exits.begin(), exits.end(),
                   [](const PhaseExit& a, const PhaseExit& b) { return a.choices < b.choices; });
  if (capped) {
    PhaseExit cap;
    cap.capped = true;
    cap.steps = step_cap;
    exits.push_back(std::move(cap));
  }
  return exits;
}

PhaseOutcome classify_exit(const PhaseExit& exit, long block, const Descriptor& out) {
  PhaseOutcome o;
  o.steps = exit.steps;
  o.choices = exit.choices;
  o.content = exit.content;
  o.side = exit.side;
  o.exit_state = exit.state;
  if (exit.capped) {
    o.reject_reason = RejectReason::kStepCapExceeded;
  } else if (exit.side == ExitSide::kNone) {
    o.reject_reason = RejectReason::kHaltedInside;
  } else if (exit.side == ExitSide::kLeft &&
             (out.dir != Direction::kLeft || out.milestone != block - 1)) {
    o.reject_reason = RejectReason::kWrongExitLeft;
  } else if (exit.side == ExitSide::kRight &&
             (out.dir != Direction::kRight || out.milestone != block)) {
    o.reject_reason = RejectReason::kWrongExitRight;
  } else if (exit.state != out.state) {
    o.reject_reason = RejectReason::kWrongState;
  } else {
    o.accepted = true;
    o.result = exit.content;
  }
  return o;
}

std::vector<PhaseOutcome> simulate_phase(const Machine& m, const Descriptor& in,
                                         const Descriptor& out, const BlockContent& x,
                                         long step_cap) {
  if (step_cap < 1) throw std::invalid_argument("step cap must be >= 1");
  const long block = phase_block(in, out);
  std::vector<PhaseOutcome> outcomes;
  for (const auto& e : enumerate_phase_exits(m, block, in, x, step_cap)) {
    outcomes.push_back(classify_exit(e, block, out));
  }
  return outcomes;
}

}  // namespace tmlab
