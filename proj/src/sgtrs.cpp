#include "senescent/sgtrs.hpp"

#include <algorithm>
#include <functional>

#include "senescent/errors.hpp"

namespace senescent {

Sgtrs::Sgtrs(std::vector<std::string> controls, RankedAlphabet alphabet) : alphabet_(std::move(alphabet)) {
  for (auto& c : controls) add_control(std::move(c));
}

ControlId Sgtrs::add_control(std::string name) {
  if (auto id = find_control(name)) return *id;
  controls_.push_back(std::move(name));
  by_source_.emplace_back();
  return static_cast<ControlId>(controls_.size() - 1);
}

std::optional<ControlId> Sgtrs::find_control(std::string_view name) const {
  for (std::size_t i = 0; i < controls_.size(); ++i) {
    if (controls_[i] == name) return static_cast<ControlId>(i);
  }
  return std::nullopt;
}

ControlId Sgtrs::control(std::string_view name) const {
  if (auto id = find_control(name)) return *id;
  throw Error(ErrorKind::InvalidSystem, "unknown control '" + std::string(name) + "'");
}

namespace {

void check_automaton(const NTA& a, const RankedAlphabet& alphabet, const char* side) {
  for (const auto& [label, rank] : a.alphabet().symbols()) {
    if (!alphabet.contains(label) || alphabet.rank(label) != rank) {
      throw Error(ErrorKind::AlphabetMismatch,
                  std::string(side) + " uses '" + label.name() + "' outside the system alphabet");
    }
  }
  if (nta_empty(a)) throw Error(ErrorKind::InvalidSystem, std::string(side) + " accepts no tree");
}

}  // namespace

std::size_t Sgtrs::add_rule(Rule rule) {
  if (rule.source >= controls_.size() || rule.target >= controls_.size()) {
    throw Error(ErrorKind::InvalidSystem, "rule refers to an undeclared control");
  }
  check_automaton(rule.lhs, alphabet_, "rule LHS");
  check_automaton(rule.rhs, alphabet_, "rule RHS");
  by_source_[rule.source].push_back(rules_.size());
  rules_.push_back(std::move(rule));
  return rules_.size() - 1;
}

std::size_t Sgtrs::add_single(std::string_view source, const Tree& lhs, std::string_view target,
                              const Tree& rhs, std::optional<std::string> output) {
  Rule r;
  r.source = control(source);
  r.target = control(target);
  r.lhs = singleton_nta(lhs, &alphabet_);
  r.rhs = singleton_nta(rhs, &alphabet_);
  r.output = std::move(output);
  return add_rule(std::move(r));
}

const std::vector<std::size_t>& Sgtrs::rules_from(ControlId control) const {
  return by_source_.at(control);
}

std::size_t Sgtrs::max_singleton_size() const {
  std::size_t best = 1;
  for (const auto& r : rules_) {
    if (r.lhs_tree()) best = std::max(best, r.lhs_tree()->size());
    if (r.rhs_tree()) best = std::max(best, r.rhs_tree()->size());
  }
  return best;
}

bool Sgtrs::all_singleton() const {
  return std::all_of(rules_.begin(), rules_.end(),
                     [](const Rule& r) { return r.lhs_tree() && r.rhs_tree(); });
}

std::vector<std::vector<Tree>> rhs_candidates(const Sgtrs& system, std::size_t rhs_bound) {
  std::vector<std::vector<Tree>> out;
  out.reserve(system.rules().size());
  for (const auto& r : system.rules()) {
    if (r.rhs_tree()) {
      if (r.rhs_tree()->size() <= rhs_bound) {
        out.push_back({*r.rhs_tree()});
      } else {
        out.emplace_back();
      }
    } else {
      out.push_back(nta_enumerate(r.rhs, rhs_bound));
    }
  }
  return out;
}

std::vector<std::size_t> match_indices(const Rule& rule, const Tree& tree) {
  std::vector<std::size_t> out;
  if (const auto& single = rule.lhs_tree()) {
    const auto& root = single->node(0);
    for (std::size_t i = 0; i < tree.size(); ++i) {
      const auto& n = tree.node(i);
      if (n.label != root.label || n.size != root.size || n.arity != root.arity) continue;
      if (std::equal(single->nodes().begin(), single->nodes().end(), tree.nodes().begin() + static_cast<std::ptrdiff_t>(i))) {
        out.push_back(i);
      }
    }
    return out;
  }
  auto sets = nta_run_sets(rule.lhs, tree);
  for (std::size_t i = 0; i < tree.size(); ++i) {
    for (StateId f : rule.lhs.finals()) {
      if (sets[i][f]) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

std::vector<Transition> successors(const Sgtrs& system, const Configuration& config, std::size_t rhs_bound) {
  std::vector<Transition> out;
  const auto candidates = rhs_candidates(system, rhs_bound);
  for (std::size_t r : system.rules_from(config.control)) {
    const Rule& rule = system.rule(r);
    if (candidates[r].empty()) continue;
    for (std::size_t idx : match_indices(rule, config.tree)) {
      Tree witness = config.tree.subtree(idx);
      Position pos = config.tree.position_of(idx);
      for (const Tree& rhs : candidates[r]) {
        Transition t;
        t.rule = r;
        t.index = idx;
        t.position = pos;
        t.lhs_witness = witness;
        t.rhs = rhs;
        t.output = rule.output;
        t.next = Configuration{rule.target, config.tree.replace(idx, rhs)};
        out.push_back(std::move(t));
      }
    }
  }
  return out;
}

std::set<std::pair<ControlId, ControlId>> underlying_control_graph(const Sgtrs& system) {
  std::set<std::pair<ControlId, ControlId>> out;
  for (const auto& r : system.rules()) out.emplace(r.source, r.target);
  return out;
}

bool is_weakly_extended(const Sgtrs& system) {
  // Tarjan's SCC; weakly extended iff every component is a singleton.
  const std::size_t n = system.controls().size();
  std::vector<std::vector<ControlId>> adj(n);
  for (auto [a, b] : underlying_control_graph(system)) adj[a].push_back(b);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<ControlId> stack;
  int counter = 0;
  bool ok = true;
  std::function<void(ControlId)> visit = [&](ControlId v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (ControlId w : adj[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t members = 0;
      ControlId w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        ++members;
      } while (w != v);
      if (members > 1) ok = false;
    }
  };
  for (ControlId v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }
  return ok;
}

}  // namespace senescent
