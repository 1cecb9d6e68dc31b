#include "senescent/senescent.hpp"

#include <algorithm>
#include <thread>
#include <unordered_set>

#include "senescent/errors.hpp"

namespace senescent {

namespace {

AgedConfiguration apply_at(const SenescentSystem& system, const AgedConfiguration& config,
                           std::size_t rule_index, std::size_t index, const Tree& rhs) {
  const Rule& rule = system.base.rule(rule_index);
  const bool tick = rule.changes_control();
  const Age fossil = system.fossil();
  const std::size_t old_size = config.tree.node(index).size;

  AgedConfiguration next;
  next.control = rule.target;
  next.tree = config.tree.replace(index, rhs);
  next.ages.reserve(next.tree.size());
  auto carry = [&](Age a) { return tick ? static_cast<Age>(std::min<int>(a + 1, fossil)) : a; };
  for (std::size_t i = 0; i < index; ++i) next.ages.push_back(carry(config.ages[i]));
  next.ages.insert(next.ages.end(), rhs.size(), Age{0});
  for (std::size_t i = index + old_size; i < config.ages.size(); ++i) next.ages.push_back(carry(config.ages[i]));
  return next;
}

/// blocked[i]: the subtree at i holds a fossil, so no rule can match at i or
/// at any ancestor of i again.
std::vector<char> blocked_nodes(const AgedConfiguration& config, unsigned lifespan) {
  const std::size_t n = config.tree.size();
  std::vector<char> blocked(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    if (config.ages[i] > lifespan) {
      blocked[i] = 1;
      continue;
    }
    std::size_t child = i + 1;
    for (std::uint32_t k = 0; k < config.tree.node(i).arity; ++k) {
      if (blocked[child]) {
        blocked[i] = 1;
        break;
      }
      child += config.tree.node(child).size;
    }
  }
  return blocked;
}

struct StateKey {
  std::vector<std::uint64_t> words;
  std::size_t hash = 0;

  friend bool operator==(const StateKey& a, const StateKey& b) {
    return a.hash == b.hash && a.words == b.words;
  }
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept { return k.hash; }
};

constexpr std::uint64_t kFrozenLabel = 0xffffffffULL;

StateKey make_key(const AgedConfiguration& config, unsigned lifespan, bool canonical) {
  StateKey key;
  const std::size_t n = config.tree.size();
  key.words.reserve(n + 1);
  key.words.push_back(config.control);
  std::vector<char> blocked;
  if (canonical) blocked = blocked_nodes(config, lifespan);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = config.tree.node(i);
    std::uint64_t label = node.label.id();
    std::uint64_t age = config.ages[i];
    if (canonical && blocked[i]) {
      label = kFrozenLabel;
      age = 0xff;
    }
    key.words.push_back((label << 32) | (static_cast<std::uint64_t>(node.arity) << 8) | age);
  }
  std::size_t h = 1469598103934665603ULL;
  for (auto w : key.words) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  key.hash = h;
  return key;
}

struct Expansion {
  std::size_t rule;
  std::size_t index;
  const Tree* rhs;
  AgedConfiguration next;
};

void expand(const SenescentSystem& system, const std::vector<std::vector<Tree>>& candidates,
            const AgedConfiguration& config, std::vector<Expansion>& out) {
  const auto blocked = blocked_nodes(config, system.lifespan);
  for (std::size_t r : system.base.rules_from(config.control)) {
    if (candidates[r].empty()) continue;
    const Rule& rule = system.base.rule(r);
    for (std::size_t idx : match_indices(rule, config.tree)) {
      if (blocked[idx]) continue;
      for (const Tree& rhs : candidates[r]) {
        out.push_back(Expansion{r, idx, &rhs, apply_at(system, config, r, idx, rhs)});
      }
    }
  }
}

struct SearchNode {
  std::size_t parent;
  std::size_t rule;
  std::size_t index;
  const Tree* rhs;
};

constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

template <typename Goal>
Verdict explore(const SenescentSystem& system, const Configuration& initial, const SearchBounds& bounds,
                bool canonical, Goal goal) {
  Verdict verdict;
  const std::size_t rhs_bound = bounds.rhs_size ? bounds.rhs_size : system.base.max_singleton_size();
  verdict.rhs_bound = rhs_bound;
  const auto candidates = rhs_candidates(system.base, rhs_bound);

  std::vector<SearchNode> nodes;
  std::unordered_set<StateKey, StateKeyHash> visited;

  auto witness_of = [&](std::size_t node) {
    std::vector<std::size_t> chain;
    for (std::size_t n = node; nodes[n].parent != kNoParent; n = nodes[n].parent) chain.push_back(n);
    std::reverse(chain.begin(), chain.end());
    // Positions are recovered by re-running the chain from the initial tree.
    std::vector<WitnessStep> out;
    AgedConfiguration cur = fresh_configuration(initial);
    for (std::size_t n : chain) {
      out.push_back(WitnessStep{nodes[n].rule, cur.tree.position_of(nodes[n].index), *nodes[n].rhs});
      cur = apply_at(system, cur, nodes[n].rule, nodes[n].index, *nodes[n].rhs);
    }
    return out;
  };

  AgedConfiguration start = fresh_configuration(initial);
  nodes.push_back(SearchNode{kNoParent, 0, 0, nullptr});
  visited.insert(make_key(start, system.lifespan, canonical));
  verdict.states = 1;
  if (goal(start)) {
    verdict.outcome = Verdict::Outcome::Reachable;
    return verdict;
  }

  std::vector<std::pair<std::size_t, AgedConfiguration>> frontier;
  frontier.emplace_back(0, std::move(start));
  const unsigned jobs = std::max(1u, bounds.jobs);
  constexpr std::size_t kBatch = 2048;

  for (std::size_t depth = 1; depth <= bounds.depth; ++depth) {
    std::vector<std::pair<std::size_t, AgedConfiguration>> next_frontier;
    for (std::size_t begin = 0; begin < frontier.size(); begin += kBatch) {
      const std::size_t end = std::min(frontier.size(), begin + kBatch);
      std::vector<std::vector<Expansion>> produced(end - begin);
      std::vector<std::vector<StateKey>> keys(end - begin);
      auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
          expand(system, candidates, frontier[begin + i].second, produced[i]);
          keys[i].reserve(produced[i].size());
          for (const auto& e : produced[i]) keys[i].push_back(make_key(e.next, system.lifespan, canonical));
        }
      };
      const std::size_t count = end - begin;
      if (jobs == 1 || count < 2) {
        work(0, count);
      } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (count + jobs - 1) / jobs;
        for (std::size_t lo = 0; lo < count; lo += chunk) pool.emplace_back(work, lo, std::min(count, lo + chunk));
        for (auto& t : pool) t.join();
      }
      // Sequential merge keeps the visiting order identical for any job count.
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t parent = frontier[begin + i].first;
        for (std::size_t k = 0; k < produced[i].size(); ++k) {
          auto& e = produced[i][k];
          if (!visited.insert(std::move(keys[i][k])).second) continue;
          nodes.push_back(SearchNode{parent, e.rule, e.index, e.rhs});
          ++verdict.states;
          if (goal(e.next)) {
            verdict.outcome = Verdict::Outcome::Reachable;
            verdict.depth_reached = depth;
            verdict.witness = witness_of(nodes.size() - 1);
            return verdict;
          }
          if (verdict.states >= bounds.max_states) {
            verdict.depth_reached = depth;
            verdict.exhausted = "states";
            return verdict;
          }
          next_frontier.emplace_back(nodes.size() - 1, std::move(e.next));
        }
      }
    }
    frontier = std::move(next_frontier);
    verdict.depth_reached = depth;
    if (frontier.empty()) {
      verdict.saturated = true;
      break;
    }
  }
  if (!verdict.saturated) {
    verdict.exhausted = "depth";
  } else {
    verdict.exhaustive = std::all_of(system.base.rules().begin(), system.base.rules().end(), [&](const Rule& r) {
      return r.rhs_tree() && r.rhs_tree()->size() <= rhs_bound;
    });
  }
  return verdict;
}

}  // namespace

AgedConfiguration fresh_configuration(const Configuration& config) {
  return AgedConfiguration{config.control, config.tree, std::vector<Age>(config.tree.size(), 0)};
}

AgedConfiguration step(const SenescentSystem& system, const AgedConfiguration& config, std::size_t rule_index,
                       const Position& position, const Tree& rhs) {
  if (rule_index >= system.base.rules().size()) {
    throw Error(ErrorKind::RuleNotApplicable, "no rule " + std::to_string(rule_index));
  }
  const Rule& rule = system.base.rule(rule_index);
  if (rule.source != config.control) {
    throw Error(ErrorKind::RuleNotApplicable, "rule " + std::to_string(rule_index) + " does not start in control '" +
                                                  system.base.control_name(config.control) + "'");
  }
  auto idx = config.tree.index_of(position);
  if (!idx) throw Error(ErrorKind::RuleNotApplicable, "position " + position_to_string(position) + " not in tree");
  const Tree lhs = config.tree.subtree(*idx);
  const auto matches = match_indices(rule, lhs);
  if (matches.empty() || matches.front() != 0) {
    throw Error(ErrorKind::RuleNotApplicable, "LHS does not accept " + lhs.to_string());
  }
  const bool rhs_ok = rule.rhs_tree() ? *rule.rhs_tree() == rhs : [&] {
    auto sets = nta_run_sets(rule.rhs, rhs);
    return std::any_of(rule.rhs.finals().begin(), rule.rhs.finals().end(), [&](StateId f) { return sets[0][f] != 0; });
  }();
  if (!rhs_ok) throw Error(ErrorKind::RuleNotApplicable, "RHS does not accept " + rhs.to_string());
  for (std::size_t i = *idx; i < *idx + lhs.size(); ++i) {
    if (config.ages[i] > system.lifespan) {
      throw Error(ErrorKind::FossilisedNode, "node " + position_to_string(config.tree.position_of(i)) + " has age above " +
                                                 std::to_string(system.lifespan));
    }
  }
  return apply_at(system, config, rule_index, *idx, rhs);
}

std::vector<AgedTransition> senescent_successors(const SenescentSystem& system, const AgedConfiguration& config,
                                                 std::size_t rhs_bound) {
  const auto candidates = rhs_candidates(system.base, rhs_bound);
  std::vector<Expansion> produced;
  expand(system, candidates, config, produced);
  std::vector<AgedTransition> out;
  out.reserve(produced.size());
  for (auto& e : produced) {
    out.push_back(AgedTransition{e.rule, config.tree.position_of(e.index), *e.rhs, system.base.rule(e.rule).output,
                                 std::move(e.next)});
  }
  return out;
}

Verdict reach_control(const SenescentSystem& system, const Configuration& initial, ControlId target,
                      const SearchBounds& bounds) {
  return explore(system, initial, bounds, true, [&](const AgedConfiguration& c) { return c.control == target; });
}

Verdict reach_regular(const SenescentSystem& system, const Configuration& initial, ControlId target,
                      const NTA& target_trees, const SearchBounds& bounds) {
  return explore(system, initial, bounds, false, [&](const AgedConfiguration& c) {
    if (c.control != target) return false;
    auto sets = nta_run_sets(target_trees, c.tree);
    return std::any_of(target_trees.finals().begin(), target_trees.finals().end(),
                       [&](StateId f) { return sets[0][f] != 0; });
  });
}

std::vector<AgedConfiguration> replay(const SenescentSystem& system, const Configuration& initial,
                                      std::span<const WitnessStep> witness) {
  std::vector<AgedConfiguration> out{fresh_configuration(initial)};
  for (const auto& s : witness) out.push_back(step(system, out.back(), s.rule, s.position, s.rhs));
  return out;
}

std::string format_witness(std::span<const WitnessStep> witness) {
  std::string out;
  for (const auto& s : witness) {
    out += "apply " + std::to_string(s.rule) + " at " + position_to_string(s.position) + " insert " +
           s.rhs.to_string() + "\n";
  }
  return out;
}

}  // namespace senescent
