#include "senescent/automata.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "senescent/errors.hpp"

namespace senescent {

// ---------------------------------------------------------------------------
// NTA

StateId NTA::add_state(std::string name) {
  if (name.empty()) name = "s" + std::to_string(names_.size());
  names_.push_back(std::move(name));
  return static_cast<StateId>(names_.size() - 1);
}

StateId NTA::state(std::string_view name) {
  if (auto s = find_state(name)) return *s;
  return add_state(std::string(name));
}

std::optional<StateId> NTA::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<StateId>(i);
  }
  return std::nullopt;
}

void NTA::add_rule(std::vector<StateId> children, Label label, StateId target) {
  alphabet_.add(label, static_cast<unsigned>(children.size()));
  for (StateId c : children) {
    if (c >= names_.size()) throw Error(ErrorKind::InvalidSystem, "unknown automaton state");
  }
  if (target >= names_.size()) throw Error(ErrorKind::InvalidSystem, "unknown automaton state");
  Rule rule{std::move(children), label, target};
  if (std::find(rules_.begin(), rules_.end(), rule) != rules_.end()) return;
  by_label_[label.id()].push_back(rules_.size());
  rules_.push_back(std::move(rule));
  singleton_.reset();
}

void NTA::add_final(StateId state) {
  if (!is_final(state)) finals_.push_back(state);
  singleton_.reset();
}

bool NTA::is_final(StateId s) const {
  return std::find(finals_.begin(), finals_.end(), s) != finals_.end();
}

const std::vector<std::size_t>& NTA::rules_for(Label label) const {
  static const std::vector<std::size_t> none;
  auto it = by_label_.find(label.id());
  return it == by_label_.end() ? none : it->second;
}

std::vector<std::vector<char>> nta_run_sets(const NTA& automaton, const Tree& tree) {
  const std::size_t n = tree.size();
  std::vector<std::vector<char>> sets(n, std::vector<char>(automaton.state_count(), 0));
  std::vector<std::size_t> kids;
  // Children have larger pre-order indices, so a reverse sweep is bottom-up.
  for (std::size_t i = n; i-- > 0;) {
    const auto& node = tree.node(i);
    kids.clear();
    std::size_t child = i + 1;
    for (std::uint32_t k = 0; k < node.arity; ++k) {
      kids.push_back(child);
      child += tree.node(child).size;
    }
    for (std::size_t r : automaton.rules_for(node.label)) {
      const auto& rule = automaton.rules()[r];
      if (rule.children.size() != node.arity) continue;
      bool ok = true;
      for (std::size_t k = 0; k < kids.size() && ok; ++k) ok = sets[kids[k]][rule.children[k]];
      if (ok) sets[i][rule.target] = 1;
    }
  }
  return sets;
}

bool nta_accepts(const NTA& automaton, const Tree& tree) {
  if (!conforms(tree, automaton.alphabet())) {
    throw Error(ErrorKind::AlphabetMismatch, "tree " + tree.to_string() + " is not over the automaton alphabet");
  }
  if (automaton.singleton()) return *automaton.singleton() == tree;
  auto sets = nta_run_sets(automaton, tree);
  for (StateId f : automaton.finals()) {
    if (sets[0][f]) return true;
  }
  return false;
}

NTA singleton_nta(const Tree& tree, const RankedAlphabet* alphabet) {
  // Only the tree's own symbols are recorded; `alphabet` is checked, not copied.
  if (alphabet && !conforms(tree, *alphabet)) {
    throw Error(ErrorKind::AlphabetMismatch, "tree " + tree.to_string() + " is not over the given alphabet");
  }
  NTA out;
  const std::size_t n = tree.size();
  for (std::size_t i = 0; i < n; ++i) out.add_state("p" + position_to_string(tree.position_of(i)));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<StateId> kids;
    for (std::size_t c : tree.children(i)) kids.push_back(static_cast<StateId>(c));
    out.add_rule(std::move(kids), tree.label(i), static_cast<StateId>(i));
  }
  out.add_final(0);
  out.singleton_ = tree;
  return out;
}

namespace {

struct TreeLess {
  bool operator()(const Tree& a, const Tree& b) const { return a.to_string() < b.to_string(); }
};

}  // namespace

std::vector<Tree> nta_enumerate(const NTA& automaton, std::size_t max_nodes) {
  const std::size_t q = automaton.state_count();
  // table[size][state]: accepted trees with exactly `size` nodes.
  std::vector<std::vector<std::vector<Tree>>> table(max_nodes + 1, std::vector<std::vector<Tree>>(q));
  for (std::size_t size = 1; size <= max_nodes; ++size) {
    std::vector<std::unordered_set<Tree, TreeHash>> seen(q);
    for (const auto& rule : automaton.rules()) {
      const std::size_t k = rule.children.size();
      if (k == 0) {
        if (size == 1 && seen[rule.target].insert(Tree::leaf(rule.label)).second) {
          table[size][rule.target].push_back(Tree::leaf(rule.label));
        }
        continue;
      }
      if (size < k + 1) continue;
      std::vector<Tree> chosen;
      // Split the remaining size-1 nodes among the k children.
      auto rec = [&](auto&& self, std::size_t idx, std::size_t budget) -> void {
        if (idx == k) {
          if (budget != 0) return;
          Tree t = Tree::make(rule.label, chosen);
          if (seen[rule.target].insert(t).second) table[size][rule.target].push_back(std::move(t));
          return;
        }
        const std::size_t rest = k - idx - 1;
        for (std::size_t s = 1; s + rest <= budget; ++s) {
          for (const Tree& t : table[s][rule.children[idx]]) {
            chosen.push_back(t);
            self(self, idx + 1, budget - s);
            chosen.pop_back();
          }
        }
      };
      rec(rec, 0, size - 1);
    }
  }
  std::set<Tree, TreeLess> out;
  for (std::size_t size = 1; size <= max_nodes; ++size) {
    for (StateId f : automaton.finals()) out.insert(table[size][f].begin(), table[size][f].end());
  }
  return {out.begin(), out.end()};
}

bool nta_empty(const NTA& automaton) {
  std::vector<char> productive(automaton.state_count(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rule : automaton.rules()) {
      if (productive[rule.target]) continue;
      if (std::all_of(rule.children.begin(), rule.children.end(),
                      [&](StateId c) { return productive[c] != 0; })) {
        productive[rule.target] = 1;
        changed = true;
      }
    }
  }
  for (StateId f : automaton.finals()) {
    if (productive[f]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Regular automata

StateId RegularAutomaton::add_state(std::string name) {
  if (name.empty()) name = "r" + std::to_string(names_.size());
  names_.push_back(std::move(name));
  return static_cast<StateId>(names_.size() - 1);
}

StateId RegularAutomaton::state(std::string_view name) {
  if (auto s = find_state(name)) return *s;
  return add_state(std::string(name));
}

std::optional<StateId> RegularAutomaton::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<StateId>(i);
  }
  return std::nullopt;
}

void RegularAutomaton::add_final(StateId s) {
  if (!is_final(s)) finals_.push_back(s);
}

bool RegularAutomaton::is_final(StateId s) const {
  return std::find(finals_.begin(), finals_.end(), s) != finals_.end();
}

void RegularAutomaton::add_transition(StateId from, std::string symbol, StateId to) {
  transitions_.push_back(Transition{from, std::move(symbol), to});
}

std::vector<std::string> RegularAutomaton::symbols() const {
  std::set<std::string> out;
  for (const auto& t : transitions_) out.insert(t.symbol);
  return {out.begin(), out.end()};
}

namespace {

std::size_t symbol_index(std::span<const std::string> order, const std::string& symbol) {
  auto it = std::find(order.begin(), order.end(), symbol);
  if (it == order.end()) throw Error(ErrorKind::UnknownSymbol, "output symbol '" + symbol + "'");
  return static_cast<std::size_t>(it - order.begin());
}

}  // namespace

ParikhVector parikh_of_word(std::span<const std::string> word, std::span<const std::string> order) {
  ParikhVector out(order.size(), 0);
  for (const auto& sym : word) ++out[symbol_index(order, sym)];
  return out;
}

std::set<ParikhVector> parikh_of_automaton(const RegularAutomaton& automaton,
                                           std::span<const std::string> order,
                                           std::size_t max_length) {
  std::set<ParikhVector> out;
  if (automaton.state_count() == 0) return out;
  std::vector<std::vector<std::pair<std::size_t, StateId>>> edges(automaton.state_count());
  for (const auto& t : automaton.transitions()) {
    edges[t.from].emplace_back(symbol_index(order, t.symbol), t.to);
  }
  // All words of a given length reach (state, vector) pairs; dedupe per layer.
  std::set<std::pair<StateId, ParikhVector>> layer{{automaton.initial(), ParikhVector(order.size(), 0)}};
  std::set<std::pair<StateId, ParikhVector>> seen = layer;
  for (std::size_t len = 0;; ++len) {
    for (const auto& [s, v] : layer) {
      if (automaton.is_final(s)) out.insert(v);
    }
    if (len == max_length) break;
    std::set<std::pair<StateId, ParikhVector>> next;
    for (const auto& [s, v] : layer) {
      for (auto [sym, to] : edges[s]) {
        ParikhVector w = v;
        ++w[sym];
        std::pair<StateId, ParikhVector> key{to, std::move(w)};
        if (seen.insert(key).second) next.insert(std::move(key));
      }
    }
    if (next.empty()) break;
    layer = std::move(next);
  }
  return out;
}

RegularAutomaton automaton_from_vectors(const std::set<ParikhVector>& vectors,
                                        std::span<const std::string> order) {
  RegularAutomaton out;
  StateId init = out.add_state("init");
  out.set_initial(init);
  std::size_t chain = 0;
  for (const auto& v : vectors) {
    if (v.size() != order.size()) throw Error(ErrorKind::ArityMismatch, "vector length differs from ordering");
    std::uint64_t total = 0;
    for (auto c : v) total += c;
    if (total == 0) {
      out.add_final(init);
      continue;
    }
    StateId cur = init;
    std::uint64_t emitted = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::uint32_t k = 0; k < v[i]; ++k) {
        StateId next = out.add_state("v" + std::to_string(chain) + "_" + std::to_string(++emitted));
        out.add_transition(cur, order[i], next);
        cur = next;
      }
    }
    out.add_final(cur);
    ++chain;
  }
  return out;
}

}  // namespace senescent
