#include "support.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace senescent::testing {

RankedAlphabet small_alphabet() {
  RankedAlphabet a;
  a.add("a", 0);
  a.add("b", 0);
  a.add("f", 1);
  a.add("g", 2);
  return a;
}

Tree random_tree(Rng& rng, const RankedAlphabet& alphabet, std::size_t max_nodes) {
  std::vector<Label> leaves, inner;
  for (const auto& [label, rank] : alphabet.symbols()) (rank == 0 ? leaves : inner).push_back(label);
  std::function<Tree(std::size_t)> grow = [&](std::size_t budget) -> Tree {
    std::vector<Label> fitting;
    for (Label l : inner) {
      if (alphabet.rank(l) + 1 <= budget) fitting.push_back(l);
    }
    if (fitting.empty() || rng.chance(0.4)) return Tree::leaf(leaves[rng.below(leaves.size())]);
    const Label l = fitting[rng.below(fitting.size())];
    const unsigned rank = alphabet.rank(l);
    std::size_t left = budget - 1 - rank;  // nodes beyond one leaf per child
    std::vector<Tree> kids;
    for (unsigned i = 0; i < rank; ++i) {
      const std::size_t extra = left == 0 ? 0 : rng.below(left + 1);
      left -= extra;
      kids.push_back(grow(extra + 1));
    }
    return Tree::make(l, kids);
  };
  return grow(std::max<std::size_t>(1, max_nodes));
}

std::vector<Tree> all_trees(const RankedAlphabet& alphabet, std::size_t max_nodes) {
  // by_size[k] = trees with exactly k nodes.
  std::vector<std::vector<Tree>> by_size(max_nodes + 1);
  for (std::size_t k = 1; k <= max_nodes; ++k) {
    for (const auto& [label, rank] : alphabet.symbols()) {
      if (rank == 0) {
        if (k == 1) by_size[1].push_back(Tree::leaf(label));
        continue;
      }
      // Distribute k-1 nodes over `rank` children.
      std::vector<Tree> kids(rank);
      std::function<void(unsigned, std::size_t)> fill = [&](unsigned i, std::size_t left) {
        if (i == rank) {
          if (left == 0) by_size[k].push_back(Tree::make(label, kids));
          return;
        }
        for (std::size_t s = 1; s + (rank - i - 1) <= left; ++s) {
          for (const Tree& t : by_size[s]) {
            kids[i] = t;
            fill(i + 1, left - s);
          }
        }
      };
      fill(0, k - 1);
    }
  }
  std::vector<Tree> out;
  for (auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
  return out;
}

NTA random_nta(Rng& rng, const RankedAlphabet& alphabet, std::size_t states) {
  NTA a(alphabet);
  for (std::size_t s = 0; s < states; ++s) a.add_state("s" + std::to_string(s));
  for (const auto& [label, rank] : alphabet.symbols()) {
    const std::size_t rules = rng.below(3) + (rank == 0 ? 1 : 0);
    for (std::size_t r = 0; r < rules; ++r) {
      std::vector<StateId> kids;
      for (unsigned i = 0; i < rank; ++i) kids.push_back(static_cast<StateId>(rng.below(states)));
      a.add_rule(kids, label, static_cast<StateId>(rng.below(states)));
    }
  }
  for (std::size_t s = 0; s < states; ++s) {
    if (rng.chance(0.4)) a.add_final(static_cast<StateId>(s));
  }
  return a;
}

bool accepts_by_runs(const NTA& automaton, const Tree& tree) {
  const std::size_t n = tree.size();
  const std::size_t q = automaton.state_count();
  if (q == 0) return false;
  std::vector<StateId> assign(n, 0);
  auto consistent = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<StateId> kids;
      for (std::size_t c : tree.children(i)) kids.push_back(assign[c]);
      bool ok = false;
      for (const auto& r : automaton.rules()) {
        if (r.label == tree.label(i) && r.children == kids && r.target == assign[i]) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
    return automaton.is_final(assign[0]);
  };
  while (true) {
    if (consistent()) return true;
    std::size_t i = 0;
    while (i < n && ++assign[i] == q) assign[i++] = 0;
    if (i == n) return false;
  }
}

SenescentSystem random_system(Rng& rng, std::size_t controls, std::size_t rules, unsigned lifespan,
                              std::size_t lhs_nodes, std::size_t rhs_nodes) {
  const RankedAlphabet sigma = small_alphabet();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < controls; ++i) names.push_back("q" + std::to_string(i));
  SenescentSystem s{Sgtrs(names, sigma), lifespan};
  for (std::size_t r = 0; r < rules; ++r) {
    s.base.add_single(names[rng.below(controls)], random_tree(rng, sigma, lhs_nodes), names[rng.below(controls)],
                      random_tree(rng, sigma, rhs_nodes));
  }
  return s;
}

namespace {

// Tree plus the run step that last wrote each node.
struct Born {
  ControlId control;
  Tree tree;
  std::vector<std::size_t> birth;
};

// Control changes made at steps > birth, given the steps where control changed.
Age age_of(std::size_t birth, const std::vector<std::size_t>& changes, unsigned lifespan) {
  const auto later = static_cast<std::size_t>(changes.end() - std::upper_bound(changes.begin(), changes.end(), birth));
  return static_cast<Age>(std::min<std::size_t>(later, lifespan + 1));
}

}  // namespace

std::optional<std::vector<std::vector<Age>>> history_ages(const SenescentSystem& system,
                                                          const Configuration& initial,
                                                          const std::vector<WitnessStep>& witness) {
  Born cur{initial.control, initial.tree, std::vector<std::size_t>(initial.tree.size(), 0)};
  std::vector<std::size_t> changes;
  std::vector<std::vector<Age>> out;
  auto snapshot = [&]() {
    std::vector<Age> ages;
    for (std::size_t b : cur.birth) ages.push_back(age_of(b, changes, system.lifespan));
    out.push_back(std::move(ages));
  };
  snapshot();
  for (std::size_t k = 0; k < witness.size(); ++k) {
    const WitnessStep& s = witness[k];
    const std::size_t stepno = k + 1;
    if (s.rule >= system.base.rules().size()) return std::nullopt;
    const Rule& r = system.base.rule(s.rule);
    if (r.source != cur.control) return std::nullopt;
    auto idx = cur.tree.index_of(s.position);
    if (!idx) return std::nullopt;
    const Tree old = cur.tree.subtree(*idx);
    if (!accepts_by_runs(r.lhs, old) || !accepts_by_runs(r.rhs, s.rhs)) return std::nullopt;
    const std::size_t size = cur.tree.node(*idx).size;
    for (std::size_t i = *idx; i < *idx + size; ++i) {
      if (age_of(cur.birth[i], changes, system.lifespan) > system.lifespan) return std::nullopt;
    }
    cur.tree = cur.tree.replace(*idx, s.rhs);
    cur.birth.erase(cur.birth.begin() + static_cast<std::ptrdiff_t>(*idx),
                    cur.birth.begin() + static_cast<std::ptrdiff_t>(*idx + size));
    cur.birth.insert(cur.birth.begin() + static_cast<std::ptrdiff_t>(*idx), s.rhs.size(), stepno);
    if (r.target != cur.control) changes.push_back(stepno);
    cur.control = r.target;
    snapshot();
  }
  return out;
}

std::optional<unsigned> minimal_lifespan(const SenescentSystem& system, const Configuration& initial,
                                         const std::vector<WitnessStep>& witness, unsigned max_lifespan) {
  for (unsigned l = 0; l <= max_lifespan; ++l) {
    SenescentSystem s{system.base, l};
    if (history_ages(s, initial, witness)) return l;
  }
  return std::nullopt;
}

std::vector<BruteTransition> brute_successors(const Sgtrs& system, const Configuration& config,
                                              std::size_t rhs_bound) {
  const std::vector<Tree> candidates = all_trees(system.alphabet(), rhs_bound);
  std::vector<BruteTransition> out;
  for (std::size_t r = 0; r < system.rules().size(); ++r) {
    const Rule& rule = system.rule(r);
    if (rule.source != config.control) continue;
    std::vector<Tree> rhs;
    if (rule.rhs.singleton()) {
      if (rule.rhs.singleton()->size() <= rhs_bound) rhs.push_back(*rule.rhs.singleton());
    } else {
      for (const Tree& t : candidates) {
        if (accepts_by_runs(rule.rhs, t)) rhs.push_back(t);
      }
    }
    for (std::size_t i = 0; i < config.tree.size(); ++i) {
      const Tree sub = config.tree.subtree(i);
      const bool match = rule.lhs.singleton() ? *rule.lhs.singleton() == sub : accepts_by_runs(rule.lhs, sub);
      if (!match) continue;
      for (const Tree& t : rhs) {
        out.push_back({r, config.tree.position_of(i), t, Configuration{rule.target, config.tree.replace(i, t)}});
      }
    }
  }
  return out;
}

std::vector<Configuration> brute_reachable(const Sgtrs& system, const Configuration& initial, std::size_t depth,
                                           std::size_t rhs_bound) {
  std::set<std::pair<ControlId, std::string>> seen{{initial.control, initial.tree.to_string()}};
  std::vector<Configuration> out{initial};
  std::vector<Configuration> layer{initial};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<Configuration> next;
    for (const auto& c : layer) {
      for (auto& t : brute_successors(system, c, rhs_bound)) {
        if (seen.insert({t.next.control, t.next.tree.to_string()}).second) {
          out.push_back(t.next);
          next.push_back(t.next);
        }
      }
    }
    layer = std::move(next);
  }
  return out;
}

std::vector<AgedConfiguration> brute_aged_reachable(const SenescentSystem& system, const Configuration& initial,
                                                    std::size_t depth, std::size_t rhs_bound) {
  const Age fossil = system.fossil();
  auto key = [](const AgedConfiguration& a) {
    std::string k = std::to_string(a.control) + "|" + a.tree.to_string() + "|";
    for (Age x : a.ages) k += std::to_string(x) + ",";
    return k;
  };
  AgedConfiguration start{initial.control, initial.tree, std::vector<Age>(initial.tree.size(), 0)};
  std::set<std::string> seen{key(start)};
  std::vector<AgedConfiguration> out{start};
  std::vector<AgedConfiguration> layer{start};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<AgedConfiguration> next;
    for (const auto& c : layer) {
      for (auto& t : brute_successors(system.base, Configuration{c.control, c.tree}, rhs_bound)) {
        const std::size_t idx = *c.tree.index_of(t.position);
        const std::size_t size = c.tree.node(idx).size;
        bool alive = true;
        for (std::size_t i = idx; i < idx + size; ++i) alive = alive && c.ages[i] <= system.lifespan;
        if (!alive) continue;
        std::vector<Age> ages;
        const bool change = t.next.control != c.control;
        for (std::size_t i = 0; i < c.ages.size(); ++i) {
          if (i == idx) ages.insert(ages.end(), t.rhs.size(), 0);
          if (i >= idx && i < idx + size) continue;
          ages.push_back(change ? static_cast<Age>(std::min<int>(c.ages[i] + 1, fossil)) : c.ages[i]);
        }
        AgedConfiguration n{t.next.control, t.next.tree, std::move(ages)};
        if (seen.insert(key(n)).second) {
          out.push_back(n);
          next.push_back(std::move(n));
        }
      }
    }
    layer = std::move(next);
  }
  return out;
}

ResetNet random_net(Rng& rng, std::size_t controls, std::size_t counters, std::size_t max_ops) {
  ResetNet net;
  for (std::size_t i = 0; i < controls; ++i) net.add_control("p" + std::to_string(i));
  for (std::size_t i = 0; i < counters; ++i) net.add_counter("c" + std::to_string(i));
  const std::size_t rules = rng.between(1, 2 * controls + 1);
  for (std::size_t r = 0; r < rules; ++r) {
    NetRule rule;
    rule.from = static_cast<std::uint32_t>(rng.below(controls));
    rule.to = static_cast<std::uint32_t>(rng.below(controls));
    const std::size_t ops = rng.below(max_ops + 1);
    for (std::size_t k = 0; k < ops; ++k) {
      const auto c = static_cast<std::uint32_t>(rng.below(counters));
      switch (rng.below(3)) {
        case 0: rule.incr.push_back(c); break;
        case 1: rule.decr.push_back(c); break;
        default: rule.reset.push_back(c); break;
      }
    }
    net.add_rule(std::move(rule));
  }
  return net;
}

NetConfig random_config(Rng& rng, const ResetNet& net, std::uint32_t max_value) {
  NetConfig c{static_cast<std::uint32_t>(rng.below(net.controls().size())), Marking(net.counters().size(), 0)};
  for (auto& v : c.marking) v = static_cast<std::uint32_t>(rng.below(max_value + 1));
  return c;
}

std::vector<Marking> all_markings(std::size_t counters, std::uint32_t bound) {
  std::vector<Marking> out;
  Marking m(counters, 0);
  while (true) {
    out.push_back(m);
    std::size_t i = 0;
    while (i < counters && ++m[i] > bound) m[i++] = 0;
    if (i == counters) return out;
  }
}

Mpds random_mpds(Rng& rng, unsigned stacks, unsigned scope, std::size_t controls, std::size_t rules) {
  Mpds m(stacks, scope);
  std::vector<std::string> q;
  for (std::size_t i = 0; i < controls; ++i) q.push_back("q" + std::to_string(i));
  for (const auto& name : q) m.add_control(name);
  const std::vector<std::string> syms = {"a", "b"};
  for (std::size_t r = 0; r < rules; ++r) {
    const unsigned s = static_cast<unsigned>(rng.between(1, stacks));
    const auto& from = q[rng.below(controls)];
    const auto& to = q[rng.below(controls)];
    switch (rng.below(3)) {
      case 0: m.push(s, from, to, syms[rng.below(syms.size())]); break;
      case 1: m.internal(s, from, to); break;
      default: m.pop(s, from, syms[rng.below(syms.size())], to); break;
    }
  }
  m.initial = 0;
  m.target = static_cast<std::uint32_t>(controls - 1);
  return m;
}

std::optional<std::vector<MpdsMove>> decode_scoped_witness(const Mpds& mpds, const ScopedEncoding& encoding,
                                                           const std::vector<WitnessStep>& witness) {
  std::map<std::string, std::uint32_t> control_of, symbol_of;
  for (const auto& [orig, encoded] : encoding.report.names) {
    if (orig.rfind("control ", 0) == 0) control_of[encoded] = mpds.find_control(orig.substr(8)).value();
    if (orig.rfind("symbol ", 0) == 0 && orig != "symbol bot") {
      const std::string name = orig.substr(7);
      const auto& syms = mpds.symbols();
      symbol_of[encoded] = static_cast<std::uint32_t>(std::find(syms.begin(), syms.end(), name) - syms.begin());
    }
  }
  const Sgtrs& sys = encoding.system.base;
  auto stack_of = [&](ControlId c) -> std::optional<unsigned> {
    const std::string& name = sys.control_name(c);
    const auto at = name.rfind('@');
    if (at == std::string::npos) return std::nullopt;
    return static_cast<unsigned>(std::stoul(name.substr(at + 1)));
  };

  std::vector<MpdsMove> out;
  for (const auto& step : witness) {
    const Rule& r = sys.rule(step.rule);
    const auto from_stack = stack_of(r.source);
    const auto to_stack = stack_of(r.target);
    if (!from_stack || !to_stack) continue;  // begin or end rule
    const Tree& lhs = *r.lhs_tree();
    const Tree& rhs = *r.rhs_tree();
    if (*from_stack != *to_stack) {
      // A switch out of the idle padding stack ends no pushdown phase.
      if (*from_stack <= mpds.stacks()) out.push_back({true, 0});
      continue;
    }
    const std::string lhs_leaf = lhs.label(lhs.size() - 1).name();
    const std::string rhs_leaf = rhs.label(rhs.size() - 1).name();
    if (!control_of.contains(lhs_leaf)) continue;  // stopped marker unfolds
    if (!control_of.contains(rhs_leaf)) return std::nullopt;
    MpdsRule m;
    m.stack = *from_stack;
    m.from = control_of.at(lhs_leaf);
    m.to = control_of.at(rhs_leaf);
    if (lhs.size() == 1 && rhs.size() == 1) {
      m.kind = MpdsRule::Kind::Int;
    } else if (lhs.size() == 1) {
      m.kind = MpdsRule::Kind::Push;
      m.symbol = symbol_of.at(rhs.root_label().name());
    } else {
      m.kind = MpdsRule::Kind::Pop;
      m.symbol = symbol_of.at(lhs.root_label().name());
    }
    const auto& rules = mpds.rules();
    const auto it = std::find(rules.begin(), rules.end(), m);
    if (it == rules.end()) return std::nullopt;
    out.push_back({false, static_cast<std::size_t>(it - rules.begin())});
  }
  return out;
}

std::vector<std::vector<std::string>> accepted_words(const RegularAutomaton& automaton, std::size_t max_length) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> word;
  std::function<void(StateId)> walk = [&](StateId s) {
    if (automaton.is_final(s)) out.push_back(word);
    if (word.size() == max_length) return;
    for (const auto& t : automaton.transitions()) {
      if (t.from != s) continue;
      word.push_back(t.symbol);
      walk(t.to);
      word.pop_back();
    }
  };
  if (automaton.state_count() > 0) walk(automaton.initial());
  return out;
}

RegularAutomaton random_ra(Rng& rng, const std::vector<std::string>& symbols, std::size_t states) {
  RegularAutomaton a;
  for (std::size_t s = 0; s < states; ++s) a.add_state("r" + std::to_string(s));
  a.set_initial(0);
  const std::size_t edges = rng.between(1, 2 * states);
  for (std::size_t e = 0; e < edges; ++e) {
    a.add_transition(static_cast<StateId>(rng.below(states)), symbols[rng.below(symbols.size())],
                     static_cast<StateId>(rng.below(states)));
  }
  for (std::size_t s = 0; s < states; ++s) {
    if (rng.chance(0.4)) a.add_final(static_cast<StateId>(s));
  }
  return a;
}

}  // namespace senescent::testing
