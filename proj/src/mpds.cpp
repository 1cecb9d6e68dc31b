#include "senescent/mpds.hpp"

#include <algorithm>
#include <unordered_set>

#include "senescent/errors.hpp"

namespace senescent {

Mpds::Mpds(unsigned stacks, unsigned scope) : stacks_(stacks), scope_(scope) {
  if (stacks == 0) throw Error(ErrorKind::InvalidSystem, "a pushdown system needs at least one stack");
}

namespace {

std::uint32_t intern(std::vector<std::string>& names, std::string_view name) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<std::uint32_t>(i);
  }
  names.emplace_back(name);
  return static_cast<std::uint32_t>(names.size() - 1);
}

}  // namespace

std::uint32_t Mpds::add_control(std::string_view name) { return intern(controls_, name); }

std::uint32_t Mpds::add_symbol(std::string_view name) {
  if (name == "bot") throw Error(ErrorKind::InvalidSystem, "the bottom marker cannot be pushed or popped");
  return intern(symbols_, name);
}

std::optional<std::uint32_t> Mpds::find_control(std::string_view name) const {
  for (std::size_t i = 0; i < controls_.size(); ++i) {
    if (controls_[i] == name) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

std::uint32_t Mpds::control(std::string_view name) const {
  if (auto c = find_control(name)) return *c;
  throw Error(ErrorKind::InvalidSystem, "unknown control '" + std::string(name) + "'");
}

std::size_t Mpds::add_rule(const MpdsRule& rule) {
  if (rule.stack < 1 || rule.stack > stacks_) {
    throw Error(ErrorKind::InvalidSystem, "rule on stack " + std::to_string(rule.stack) + " of " +
                                              std::to_string(stacks_));
  }
  if (rule.from >= controls_.size() || rule.to >= controls_.size()) {
    throw Error(ErrorKind::InvalidSystem, "rule refers to an undeclared control");
  }
  if (rule.kind != MpdsRule::Kind::Int && rule.symbol >= symbols_.size()) {
    throw Error(ErrorKind::InvalidSystem, "rule refers to an undeclared stack symbol");
  }
  MpdsRule r = rule;
  if (r.kind == MpdsRule::Kind::Int) r.symbol = 0;
  if (std::find(rules_.begin(), rules_.end(), r) != rules_.end()) {
    return static_cast<std::size_t>(std::find(rules_.begin(), rules_.end(), r) - rules_.begin());
  }
  rules_.push_back(r);
  return rules_.size() - 1;
}

std::size_t Mpds::push(unsigned stack, std::string_view from, std::string_view to, std::string_view symbol) {
  return add_rule({MpdsRule::Kind::Push, stack, add_control(from), add_control(to), add_symbol(symbol)});
}

std::size_t Mpds::internal(unsigned stack, std::string_view from, std::string_view to) {
  return add_rule({MpdsRule::Kind::Int, stack, add_control(from), add_control(to), 0});
}

std::size_t Mpds::pop(unsigned stack, std::string_view from, std::string_view symbol, std::string_view to) {
  return add_rule({MpdsRule::Kind::Pop, stack, add_control(from), add_control(to), add_symbol(symbol)});
}

MpdsConfiguration mpds_initial(const Mpds& system, std::uint32_t control) {
  MpdsConfiguration c;
  c.control = control;
  c.stacks.assign(system.stacks(), {});
  return c;
}

namespace {

bool in_scope(const Mpds& system, const StackCell& cell, unsigned round) {
  return cell.round != 0 && cell.round + system.scope() >= round;
}

enum class StepStatus { Ok, WrongPhase, WrongControl, TopMismatch, ScopeViolation };

StepStatus try_step(const Mpds& system, const MpdsConfiguration& config, unsigned stack, const MpdsRule& rule,
                    MpdsConfiguration& out) {
  if (stack != config.phase || rule.stack != stack) return StepStatus::WrongPhase;
  if (rule.from != config.control) return StepStatus::WrongControl;
  const auto& cells = config.stacks[stack - 1];
  if (rule.kind == MpdsRule::Kind::Pop) {
    if (cells.empty() || cells.back().symbol != rule.symbol) return StepStatus::TopMismatch;
    if (!in_scope(system, cells.back(), config.round)) return StepStatus::ScopeViolation;
  }
  out = config;
  out.control = rule.to;
  auto& target = out.stacks[stack - 1];
  if (rule.kind == MpdsRule::Kind::Push) target.push_back({rule.symbol, config.round});
  if (rule.kind == MpdsRule::Kind::Pop) target.pop_back();
  return StepStatus::Ok;
}

}  // namespace

MpdsConfiguration mpds_step(const Mpds& system, const MpdsConfiguration& config, unsigned stack,
                            std::size_t rule) {
  if (rule >= system.rules().size()) throw Error(ErrorKind::RuleNotApplicable, "no such rule");
  if (stack < 1 || stack > system.stacks()) throw Error(ErrorKind::WrongPhase, "no such stack");
  MpdsConfiguration out;
  switch (try_step(system, config, stack, system.rules()[rule], out)) {
    case StepStatus::Ok:
      return out;
    case StepStatus::WrongPhase:
      throw Error(ErrorKind::WrongPhase, "stack " + std::to_string(stack) + " cannot move in phase " +
                                             std::to_string(config.phase));
    case StepStatus::WrongControl:
      throw Error(ErrorKind::WrongControl, "rule does not start in control '" +
                                               system.controls()[config.control] + "'");
    case StepStatus::TopMismatch:
      throw Error(ErrorKind::TopMismatch, "top of stack " + std::to_string(stack) + " does not match");
    case StepStatus::ScopeViolation:
      throw Error(ErrorKind::ScopeViolation, "symbol pushed too many rounds ago");
  }
  return out;
}

MpdsConfiguration mpds_next_phase(const Mpds& system, const MpdsConfiguration& config) {
  MpdsConfiguration out = config;
  if (config.phase == system.stacks()) {
    out.phase = 1;
    ++out.round;
  } else {
    ++out.phase;
  }
  return out;
}

namespace {

struct Node {
  MpdsConfiguration config;
  bool fresh = false;
  std::size_t parent = 0;
  MpdsMove move;
};

std::string state_key(const Mpds& system, const MpdsConfiguration& c, bool fresh) {
  std::vector<std::uint32_t> words{c.control, c.round, c.phase, fresh ? 1u : 0u};
  for (const auto& s : c.stacks) {
    words.push_back(static_cast<std::uint32_t>(s.size()));
    for (const auto& cell : s) {
      words.push_back(cell.symbol);
      // Cells out of scope can never be popped again; their exact round is
      // irrelevant.
      words.push_back(in_scope(system, cell, c.round) ? cell.round : 0);
    }
  }
  return std::string(reinterpret_cast<const char*>(words.data()), words.size() * sizeof(std::uint32_t));
}

}  // namespace

MpdsVerdict mpds_reach_control(const Mpds& system, std::uint32_t initial, std::uint32_t target,
                               const MpdsBounds& bounds) {
  MpdsVerdict verdict;
  std::vector<Node> nodes;
  std::vector<std::vector<std::size_t>> buckets(bounds.budget + 1);
  std::unordered_set<std::string> settled;

  nodes.push_back({mpds_initial(system, initial), true, 0, {}});
  buckets[0].push_back(0);

  auto is_goal = [&](const Node& n) {
    return n.config.control == target && (!bounds.round_start_goal || n.fresh);
  };
  auto witness_of = [&](std::size_t idx) {
    std::vector<MpdsMove> moves;
    while (idx != 0) {
      moves.push_back(nodes[idx].move);
      idx = nodes[idx].parent;
    }
    std::reverse(moves.begin(), moves.end());
    return moves;
  };

  for (std::size_t cost = 0; cost <= bounds.budget; ++cost) {
    // Buckets grow while being scanned only for zero-cost switches.
    for (std::size_t k = 0; k < buckets[cost].size(); ++k) {
      const std::size_t idx = buckets[cost][k];
      if (!settled.insert(state_key(system, nodes[idx].config, nodes[idx].fresh)).second) continue;
      verdict.states = settled.size();
      if (is_goal(nodes[idx])) {
        verdict.reachable = true;
        verdict.witness = witness_of(idx);
        return verdict;
      }
      if (settled.size() >= bounds.max_states) {
        verdict.exhausted = "states";
        return verdict;
      }
      const MpdsConfiguration config = nodes[idx].config;
      // Rounds past the cap exist only to test a round-start goal.
      if (config.round > bounds.rounds) continue;

      auto enqueue = [&](MpdsConfiguration next, bool fresh, MpdsMove move, std::size_t step_cost) {
        const std::size_t c = cost + step_cost;
        if (c > bounds.budget) {
          if (verdict.exhausted.empty()) verdict.exhausted = "budget";
          return;
        }
        nodes.push_back({std::move(next), fresh, idx, move});
        buckets[c].push_back(nodes.size() - 1);
      };

      for (std::size_t r = 0; r < system.rules().size(); ++r) {
        MpdsConfiguration next;
        if (try_step(system, config, config.phase, system.rules()[r], next) == StepStatus::Ok) {
          enqueue(std::move(next), false, {false, r}, 1);
        }
      }
      const bool new_round = config.phase == system.stacks();
      if (new_round && config.round == bounds.rounds && !bounds.round_start_goal) {
        if (verdict.exhausted.empty()) verdict.exhausted = "rounds";
        continue;
      }
      enqueue(mpds_next_phase(system, config), new_round, {true, 0}, bounds.switch_cost);
    }
  }
  verdict.saturated = verdict.exhausted.empty();
  return verdict;
}

std::vector<MpdsConfiguration> mpds_replay(const Mpds& system, std::uint32_t initial,
                                           const std::vector<MpdsMove>& moves) {
  std::vector<MpdsConfiguration> out{mpds_initial(system, initial)};
  for (const auto& m : moves) {
    const auto& cur = out.back();
    out.push_back(m.is_switch ? mpds_next_phase(system, cur) : mpds_step(system, cur, cur.phase, m.rule));
  }
  return out;
}

}  // namespace senescent
