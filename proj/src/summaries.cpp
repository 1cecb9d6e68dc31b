#include "senescent/summaries.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

#include "senescent/errors.hpp"

namespace senescent {

bool compatible(const Sequence& a, const Sequence& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].control != b[i].control || (a[i].bit && b[i].bit)) return false;
  }
  return true;
}

Sequence sequence_add(const Sequence& a, const Sequence& b) {
  if (!compatible(a, b)) throw Error(ErrorKind::Incompatible, "sequences disagree on a control or both claim a change");
  const Sequence& longer = a.size() >= b.size() ? a : b;
  Sequence out = longer;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) out[i].bit = a[i].bit || b[i].bit;
  return out;
}

Summary Summary::initial(ControlId control, std::size_t generators, unsigned window) {
  Summary s;
  s.sequence = {{control, true}};
  s.counters.assign(generators, std::vector<std::uint32_t>(window, 0));
  if (generators > 0 && window > 0) s.counters[0][0] = 1;
  return s;
}

Summary summary_add(const Summary& summary, const Interface& interface) {
  if (interface.empty()) throw Error(ErrorKind::Incompatible, "empty interface");
  Sequence seq;
  for (const auto& e : interface) seq.push_back({e.control, e.bit});
  Summary out = summary;
  out.sequence = sequence_add(summary.sequence, seq);
  const std::size_t window = summary.counters.empty() ? 0 : summary.counters.front().size();
  if (interface.size() > window) throw Error(ErrorKind::Incompatible, "interface longer than the window");
  for (std::size_t i = 0; i < interface.size(); ++i) {
    const auto& gen = interface[i].generated;
    if (gen.size() != out.counters.size()) {
      throw Error(ErrorKind::Incompatible, "interface has the wrong number of generators");
    }
    for (std::size_t g = 0; g < gen.size(); ++g) out.counters[g][i] += gen[g];
  }
  return out;
}

Summary summary_resolve(const Summary& summary) {
  if (summary.sequence.size() < 2 || !summary.sequence[1].bit) {
    throw Error(ErrorKind::ResolutionBlocked, "the next control change is not yet guaranteed");
  }
  Summary out;
  out.sequence.assign(summary.sequence.begin() + 1, summary.sequence.end());
  out.counters = summary.counters;
  for (auto& row : out.counters) {
    std::rotate(row.begin(), row.begin() + 1, row.end());
    row.back() = 0;
  }
  return out;
}

namespace {

Label fresh_label(const RankedAlphabet& alphabet, std::string base) {
  while (alphabet.contains(Label::intern(base))) base += "_";
  return Label::intern(base);
}

std::string emit_symbol(std::size_t generator, unsigned index) {
  return "g" + std::to_string(generator) + "@" + std::to_string(index);
}

Age older(Age a, Age fossil) { return a >= fossil ? fossil : static_cast<Age>(a + 1); }

// Search state shared by the two interface explorers.  `control` is the index
// of the last sequence entry reached.
struct Probe {
  Sequence sequence;
  Tree tree;
  std::vector<Age> ages;
  ParikhTuple parikh;
  bool born = false;
  std::size_t depth = 0;
};

std::string probe_key(const Probe& p) {
  std::string key;
  auto put = [&](std::uint32_t v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
  put(static_cast<std::uint32_t>(p.sequence.size()));
  for (const auto& e : p.sequence) put(e.control * 2 + (e.bit ? 1 : 0));
  put(p.born ? 1 : 0);
  for (const auto& n : p.tree.nodes()) put(n.label.id());
  key.append(reinterpret_cast<const char*>(p.ages.data()), p.ages.size());
  for (auto v : p.parikh) put(v);
  return key;
}

// 0-1 breadth-first search: `expand` reports (probe, cost) pairs, costs are 0
// or 1, and cost-1 moves stop at `depth`.
template <typename Expand, typename Visit>
bool explore(Probe start, const ParikhBounds& bounds, Expand expand, Visit visit) {
  std::unordered_map<std::string, std::size_t> best;
  std::deque<Probe> queue;
  bool capped = false;
  best.emplace(probe_key(start), 0);
  queue.push_back(std::move(start));
  while (!queue.empty()) {
    Probe cur = std::move(queue.front());
    queue.pop_front();
    if (best.at(probe_key(cur)) < cur.depth) continue;
    visit(cur);
    expand(cur, [&](Probe next, unsigned cost) {
      next.depth = cur.depth + cost;
      if (next.depth > bounds.depth) return;
      auto key = probe_key(next);
      auto it = best.find(key);
      if (it != best.end() && it->second <= next.depth) return;
      if (it == best.end() && best.size() >= bounds.max_states) {
        capped = true;
        return;
      }
      best[key] = next.depth;
      if (cost == 0) {
        queue.push_front(std::move(next));
      } else {
        queue.push_back(std::move(next));
      }
    });
  }
  return capped;
}

Probe with_placeholder(const AgedTransition& tr, Label placeholder) {
  Probe p;
  const std::size_t idx = *tr.next.tree.index_of(tr.position);
  const std::size_t size = tr.next.tree.node(idx).size;
  p.tree = tr.next.tree.replace(idx, Tree::leaf(placeholder));
  p.ages = tr.next.ages;
  p.ages.erase(p.ages.begin() + static_cast<std::ptrdiff_t>(idx) + 1,
               p.ages.begin() + static_cast<std::ptrdiff_t>(idx + size));
  p.ages[idx] = 0;
  return p;
}

std::size_t rhs_bound_of(const Sgtrs& base, std::size_t requested) {
  return requested != 0 ? requested : base.max_singleton_size();
}

}  // namespace

Configuration IstiSystem::initial() const { return Configuration{0, Tree::leaf(init)}; }

IstiSystem build_istigtrs(const SenescentSystem& system, std::size_t generator, const NTA& generator_rhs,
                          const Sequence& sequence) {
  if (sequence.empty()) throw Error(ErrorKind::InvalidSystem, "empty interface sequence");
  const Sgtrs& base = system.base;
  IstiSystem out;
  out.sequence = sequence;
  out.generator = generator;
  out.generators = base.rules().size() + 1;
  out.system.lifespan = system.lifespan;

  RankedAlphabet alphabet = base.alphabet();
  out.placeholder = fresh_label(alphabet, "ext");
  alphabet.add(out.placeholder, 0);
  out.init = fresh_label(alphabet, "init");
  alphabet.add(out.init, 0);

  std::vector<std::string> controls;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    controls.push_back(base.control_name(sequence[i].control) + "." + (sequence[i].bit ? "1" : "0") + "." +
                       std::to_string(i + 1));
  }
  Sgtrs& sys = out.system.base;
  sys = Sgtrs(controls, alphabet);

  auto add = [&](IstiSystem::Family family, ControlId from, NTA lhs, ControlId to, NTA rhs,
                 std::optional<std::pair<std::size_t, unsigned>> emits) {
    std::optional<std::string> output;
    if (emits) output = emit_symbol(emits->first, emits->second);
    sys.add_rule(Rule{from, std::move(lhs), to, std::move(rhs), output});
    out.family.push_back(family);
    out.emits.push_back(emits);
  };
  const NTA hole = singleton_nta(Tree::leaf(out.placeholder));

  add(IstiSystem::Family::Init, 0, singleton_nta(Tree::leaf(out.init)), 0, generator_rhs, std::nullopt);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const auto here = static_cast<ControlId>(i);
    const auto index = static_cast<unsigned>(i + 1);
    for (std::size_t r = 0; r < base.rules().size(); ++r) {
      const Rule& rule = base.rule(r);
      if (rule.source != sequence[i].control) continue;
      if (!rule.changes_control()) {
        add(IstiSystem::Family::Simulate, here, rule.lhs, here, rule.rhs, std::nullopt);
        add(IstiSystem::Family::Generate, here, rule.lhs, here, hole, std::pair{r + 1, index});
      } else if (i + 1 < sequence.size() && sequence[i + 1].bit && rule.target == sequence[i + 1].control) {
        add(IstiSystem::Family::Change, here, rule.lhs, here + 1, rule.rhs, std::nullopt);
        add(IstiSystem::Family::GenerateChange, here, rule.lhs, here + 1, hole, std::pair{r + 1, index + 1});
      }
    }
    if (i + 1 < sequence.size() && !sequence[i + 1].bit) {
      for (const auto& [label, rank] : alphabet.symbols()) {
        if (rank != 0 || label == out.init) continue;
        add(IstiSystem::Family::Advance, here, singleton_nta(Tree::leaf(label)), here + 1,
            singleton_nta(Tree::leaf(label)), std::nullopt);
      }
    }
  }
  return out;
}

std::set<ParikhTuple> interface_parikh(const IstiSystem& isti, const ParikhBounds& bounds) {
  std::set<ParikhTuple> out;
  const std::size_t n = isti.sequence.size();
  const std::size_t g_count = isti.generators;
  const std::size_t rhs_bound = rhs_bound_of(isti.system.base, bounds.rhs_size);
  const Age fossil = isti.system.fossil();

  // The sequence field holds only the entry reached so far.
  Probe start;
  start.sequence = {isti.sequence.front()};
  start.tree = isti.initial().tree;
  start.ages = {0};
  start.parikh.assign(n * g_count, 0);

  explore(
      std::move(start), bounds,
      [&](const Probe& cur, auto&& push) {
        const auto control = static_cast<ControlId>(cur.sequence.size() - 1);
        AgedConfiguration cfg{control, cur.tree, cur.ages};
        for (auto& tr : senescent_successors(isti.system, cfg, rhs_bound)) {
          if (isti.family[tr.rule] == IstiSystem::Family::Advance) continue;
          Probe next;
          next.tree = std::move(tr.next.tree);
          next.ages = std::move(tr.next.ages);
          next.parikh = cur.parikh;
          next.born = true;
          next.sequence = cur.sequence;
          if (tr.next.control != control) next.sequence.push_back(isti.sequence[tr.next.control]);
          if (auto e = isti.emits[tr.rule]) ++next.parikh[(e->second - 1) * g_count + e->first];
          push(std::move(next), 1);
        }
        const std::size_t k = cur.sequence.size();
        if (cur.born && k < n && !isti.sequence[k].bit) {
          Probe next = cur;
          next.sequence.push_back(isti.sequence[k]);
          for (auto& a : next.ages) a = older(a, fossil);
          push(std::move(next), 0);
        }
      },
      [&](const Probe& p) {
        if (p.sequence.size() == n) out.insert(p.parikh);
      });
  return out;
}

std::map<Sequence, std::set<ParikhTuple>> interface_table(const SenescentSystem& system, std::size_t generator,
                                                          ControlId start_control, const NTA& generator_rhs,
                                                          const ParikhBounds& bounds, bool* truncated) {
  const Sgtrs& base = system.base;
  const std::size_t g_count = base.rules().size() + 1;
  const unsigned window = interface_window(system.lifespan);
  const std::size_t rhs_bound = rhs_bound_of(base, bounds.rhs_size);
  const Age fossil = system.fossil();
  const Label placeholder = fresh_label(base.alphabet(), "ext");
  // Another sub-tree can only move the control along a rule of the system.
  std::vector<std::vector<ControlId>> moves(base.controls().size());
  for (const auto& [from, to] : underlying_control_graph(base)) {
    if (from != to) moves[from].push_back(to);
  }
  const std::vector<Tree> born_as = generator_rhs.singleton() ? std::vector<Tree>{*generator_rhs.singleton()}
                                                              : nta_enumerate(generator_rhs, rhs_bound);
  (void)generator;

  std::map<Sequence, std::set<ParikhTuple>> out;
  Probe start;
  start.sequence = {{start_control, false}};
  start.tree = Tree::leaf(fresh_label(base.alphabet(), "init"));
  start.ages = {0};
  start.parikh.assign(window * g_count, 0);

  const bool capped = explore(
      std::move(start), bounds,
      [&](const Probe& cur, auto&& push) {
        const std::size_t k = cur.sequence.size();
        if (!cur.born) {
          for (const Tree& t : born_as) {
            Probe next = cur;
            next.tree = t;
            next.ages.assign(t.size(), 0);
            next.born = true;
            push(std::move(next), 1);
          }
          return;
        }
        const ControlId q = cur.sequence.back().control;
        AgedConfiguration cfg{q, cur.tree, cur.ages};
        for (auto& tr : senescent_successors(system, cfg, rhs_bound)) {
          const Rule& rule = base.rule(tr.rule);
          const std::size_t g = tr.rule + 1;
          if (rule.changes_control() && k >= window) continue;
          Probe gen = with_placeholder(tr, placeholder);
          gen.born = true;
          gen.sequence = cur.sequence;
          gen.parikh = cur.parikh;
          Probe sim = cur;
          sim.tree = std::move(tr.next.tree);
          sim.ages = std::move(tr.next.ages);
          if (rule.changes_control()) {
            sim.sequence.push_back({rule.target, true});
            gen.sequence.push_back({rule.target, true});
            ++gen.parikh[k * g_count + g];
          } else {
            ++gen.parikh[(k - 1) * g_count + g];
          }
          push(std::move(sim), 1);
          push(std::move(gen), 1);
        }
        if (k < window) {
          for (ControlId q2 : moves[q]) {
            Probe next = cur;
            next.sequence.push_back({q2, false});
            for (auto& a : next.ages) a = older(a, fossil);
            push(std::move(next), 0);
          }
        }
      },
      [&](const Probe& p) {
        ParikhTuple tuple(p.parikh.begin(), p.parikh.begin() + static_cast<std::ptrdiff_t>(p.sequence.size() * g_count));
        out[p.sequence].insert(std::move(tuple));
      });
  if (truncated) *truncated = capped;
  return out;
}

std::string sequence_name(const Sgtrs& system, const Sequence& sequence) {
  std::string out = "<";
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (i) out += ",";
    out += system.control_name(sequence[i].control) + ":" + (sequence[i].bit ? "1" : "0");
  }
  return out + ">";
}

Pnreach build_pnreach(const SenescentSystem& system, ControlId q_init, const Tree& init_tree, ControlId q_dest,
                      const PnreachBounds& bounds) {
  const Sgtrs& base = system.base;
  Pnreach pn;
  pn.window = interface_window(system.lifespan);
  pn.generators = base.rules().size() + 1;
  const unsigned w = pn.window;
  const std::size_t g_count = pn.generators;

  for (std::size_t g = 0; g < g_count; ++g) {
    for (unsigned i = 1; i <= w; ++i) pn.net.add_counter("c" + std::to_string(g) + "_" + std::to_string(i));
  }
  std::vector<std::string> order;
  order.resize(w * g_count);
  for (unsigned i = 1; i <= w; ++i) {
    for (std::size_t g = 0; g < g_count; ++g) order[(i - 1) * g_count + g] = emit_symbol(g, i);
  }

  std::vector<std::map<Sequence, std::set<ParikhTuple>>> tables;
  bool capped = false;
  for (std::size_t g = 0; g < g_count; ++g) {
    if (g == 0) {
      tables.push_back(interface_table(system, 0, q_init, singleton_nta(init_tree), bounds.parikh, &capped));
    } else {
      const Rule& r = base.rule(g - 1);
      tables.push_back(interface_table(system, g, r.target, r.rhs, bounds.parikh, &capped));
    }
    pn.truncated = pn.truncated || capped;
  }

  const std::uint32_t goal = pn.net.add_control("goal");
  auto name = [&](const Sequence& s) { return sequence_name(base, s); };
  std::map<Sequence, std::uint32_t> known;
  std::deque<Sequence> queue;
  auto reach = [&](const Sequence& s) -> std::optional<std::uint32_t> {
    if (auto it = known.find(s); it != known.end()) return it->second;
    if (known.size() >= bounds.max_sequences) {
      pn.truncated = true;
      return std::nullopt;
    }
    const std::uint32_t id = pn.net.add_control(name(s));
    known.emplace(s, id);
    queue.push_back(s);
    return id;
  };

  const Sequence first{{q_init, true}};
  pn.initial = NetConfig{*reach(first), Marking(pn.net.counters().size(), 0)};
  pn.initial.marking[pn.counter(0, 1)] = 1;
  pn.target = NetConfig{goal, Marking(pn.net.counters().size(), 0)};

  std::set<std::string> built;
  while (!queue.empty()) {
    const Sequence sigma = queue.front();
    queue.pop_front();
    const std::uint32_t here = known.at(sigma);
    if (sigma.front().control == q_dest) pn.net.add_rule(NetRule{here, goal, {}, {}, {}});

    for (std::size_t g = 0; g < g_count; ++g) {
      for (const auto& [sigma2, tuples] : tables[g]) {
        if (!compatible(sigma, sigma2)) continue;
        const Sequence sigma1 = sequence_add(sigma, sigma2);
        auto target = reach(sigma1);
        if (!target) continue;
        const std::string prefix = name(sigma1) + "~g" + std::to_string(g) + "~" + name(sigma2) + "~";
        if (built.insert(prefix).second) {
          // Extra pending sub-trees never block coverability, so only the
          // componentwise-maximal vectors matter.
          std::set<ParikhVector> vectors;
          for (const auto& t : tuples) {
            const bool dominated = std::any_of(tuples.begin(), tuples.end(), [&](const ParikhTuple& u) {
              return u != t && std::equal(t.begin(), t.end(), u.begin(), std::less_equal<>());
            });
            if (dominated) continue;
            ParikhVector v(w * g_count, 0);
            std::copy(t.begin(), t.end(), v.begin());
            vectors.insert(std::move(v));
          }
          const RegularAutomaton a = automaton_from_vectors(vectors, order);
          auto state = [&](StateId s) { return pn.net.add_control(prefix + a.state_name(s)); };
          for (const auto& tr : a.transitions()) {
            const auto at = tr.symbol.find('@');
            const std::size_t tg = std::stoul(tr.symbol.substr(1, at - 1));
            const auto ti = static_cast<unsigned>(std::stoul(tr.symbol.substr(at + 1)));
            pn.net.add_rule(NetRule{state(tr.from), state(tr.to), {}, {}, {pn.counter(tg, ti)}});
          }
          for (StateId f : a.finals()) pn.net.add_rule(NetRule{state(f), *target, {}, {}, {}});
        }
        pn.net.add_rule(NetRule{here, pn.net.control(prefix + "init"), {pn.counter(g, 1)}, {}, {}});
      }
    }

    if (sigma.size() >= 2 && sigma[1].bit) {
      const Sequence rest(sigma.begin() + 1, sigma.end());
      auto target = reach(rest);
      if (!target) continue;
      const std::string prefix = name(rest) + "~shift";
      auto shift = [&](unsigned i) { return pn.net.add_control(prefix + std::to_string(i)); };
      if (built.insert(prefix).second) {
        for (unsigned i = 1; i < w; ++i) {
          std::vector<std::uint32_t> next_index;
          for (std::size_t g = 0; g < g_count; ++g) {
            pn.net.add_rule(NetRule{shift(i), shift(i), {pn.counter(g, i + 1)}, {}, {pn.counter(g, i)}});
            next_index.push_back(pn.counter(g, i + 1));
          }
          const std::uint32_t after = i + 1 < w ? shift(i + 1) : *target;
          pn.net.add_rule(NetRule{shift(i), after, {}, next_index, {}});
        }
      }
      std::vector<std::uint32_t> first_index;
      for (std::size_t g = 0; g < g_count; ++g) first_index.push_back(pn.counter(g, 1));
      pn.net.add_rule(NetRule{here, shift(1), {}, first_index, {}});
    }
  }
  pn.sequences = known.size();
  return pn;
}

DualVerdict decide_control_reachability(const SenescentSystem& system, ControlId q_init, const Tree& init_tree,
                                        ControlId q_dest, const PipelineBounds& bounds) {
  DualVerdict out;
  out.forward = reach_control(system, Configuration{q_init, init_tree}, q_dest, bounds.forward);
  const Pnreach pn = build_pnreach(system, q_init, init_tree, q_dest, bounds.summary);
  out.net_controls = pn.net.controls().size();
  out.net_rules = pn.net.rules().size();
  out.sequences = pn.sequences;
  out.truncated = pn.truncated;
  out.summary_yes = pn_cover_backward(pn.net, pn.initial, pn.target).covered;
  return out;
}

}  // namespace senescent
