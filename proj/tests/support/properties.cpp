#include "properties.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "senescent/errors.hpp"
#include "senescent/formats.hpp"
#include "senescent/summaries.hpp"
#include "support.hpp"

namespace senescent::testing {

namespace {

class Suite {
 public:
  explicit Suite(std::string name) { report_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++report_.cases;
    if (ok) return;
    if (report_.failures++ == 0) report_.first_failure = describe();
  }
  void fail(const std::string& what) {
    ++report_.cases;
    if (report_.failures++ == 0) report_.first_failure = what;
  }

  PropertyReport done() { return report_; }

 private:
  PropertyReport report_;
};

PropertyReport tree_round_trips(Rng& rng) {
  Suite s("tree round-trips");
  const RankedAlphabet sigma = small_alphabet();
  for (int k = 0; k < 300; ++k) {
    const Tree t = random_tree(rng, sigma, 1 + rng.below(12));
    const std::string text = t.to_string();
    try {
      s.check(parse_tree(text, sigma) == t, [&] { return "print/parse changed " + text; });
    } catch (const Error& e) {
      s.fail("parse of " + text + " threw " + e.what());
    }
    const auto positions = t.positions();
    const Position p = positions[rng.below(positions.size())];
    const auto [context, sub] = decompose(t, p);
    const Tree back = substitute(context, std::vector<Tree>{sub});
    s.check(back == t && context.arity() == 1 && context.holes().front() == p,
            [&] { return "decompose/substitute at " + position_to_string(p) + " of " + text; });
    const Tree other = random_tree(rng, sigma, 4);
    const Tree swapped = substitute(context, std::vector<Tree>{other});
    s.check(swapped == t.replace(*t.index_of(p), other),
            [&] { return "substitute disagrees with replace at " + position_to_string(p) + " of " + text; });
  }
  return s.done();
}

PropertyReport nta_enumeration(Rng& rng) {
  Suite s("NTA vs enumeration");
  const RankedAlphabet sigma = small_alphabet();
  const std::vector<Tree> universe = all_trees(sigma, 5);
  for (int k = 0; k < 120; ++k) {
    const NTA a = random_nta(rng, sigma, 1 + rng.below(3));
    std::vector<Tree> expected;
    bool agree = true;
    std::string bad;
    for (const Tree& t : universe) {
      const bool by_runs = accepts_by_runs(a, t);
      if (by_runs) expected.push_back(t);
      if (by_runs != nta_accepts(a, t) && agree) {
        agree = false;
        bad = t.to_string();
      }
    }
    s.check(agree, [&] { return "nta_accepts disagrees with run enumeration on " + bad; });
    std::sort(expected.begin(), expected.end(),
              [](const Tree& x, const Tree& y) { return x.to_string() < y.to_string(); });
    s.check(nta_enumerate(a, 5) == expected, [&] { return "nta_enumerate differs from filtered universe"; });
    s.check(expected.empty() || !nta_empty(a),
            [&] { return "nta_empty claims emptiness of an automaton with accepted trees"; });
  }
  return s.done();
}

PropertyReport parikh_additivity(Rng& rng) {
  Suite s("Parikh additivity");
  const std::vector<std::string> order = {"x", "y", "z"};
  auto word = [&](std::size_t n) {
    std::vector<std::string> w;
    for (std::size_t i = 0; i < n; ++i) w.push_back(order[rng.below(order.size())]);
    return w;
  };
  for (int k = 0; k < 200; ++k) {
    const auto u = word(rng.below(7));
    const auto v = word(rng.below(7));
    auto uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    const ParikhVector pu = parikh_of_word(u, order), pv = parikh_of_word(v, order);
    ParikhVector sum(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) sum[i] = pu[i] + pv[i];
    s.check(parikh_of_word(uv, order) == sum, [&] { return "Parikh image of a concatenation is not the sum"; });
  }
  for (int k = 0; k < 150; ++k) {
    const RegularAutomaton a = random_ra(rng, order, 1 + rng.below(4));
    std::set<ParikhVector> expected;
    for (const auto& w : accepted_words(a, 5)) expected.insert(parikh_of_word(w, order));
    s.check(parikh_of_automaton(a, order, 5) == expected,
            [&] { return "parikh_of_automaton differs from word enumeration:\n" + print_ra(a); });
  }
  for (int k = 0; k < 150; ++k) {
    std::set<ParikhVector> vectors;
    const std::size_t n = rng.below(4);
    for (std::size_t i = 0; i < n; ++i) {
      vectors.insert({static_cast<std::uint32_t>(rng.below(3)), static_cast<std::uint32_t>(rng.below(3)),
                      static_cast<std::uint32_t>(rng.below(3))});
    }
    const RegularAutomaton a = automaton_from_vectors(vectors, order);
    s.check(parikh_of_automaton(a, order, 6) == vectors,
            [&] { return "automaton_from_vectors does not realise its vectors"; });
  }
  return s.done();
}

PropertyReport pred_basis_checks(Rng& rng) {
  Suite s("pred-basis soundness and completeness");
  for (int k = 0; k < 250; ++k) {
    const std::size_t counters = 1 + rng.below(3);
    const ResetNet net = random_net(rng, 2, counters, 3);
    const std::size_t r = rng.below(net.rules().size());
    const NetRule& rule = net.rules()[r];
    NetConfig target = random_config(rng, net, 3);
    target.control = rule.to;
    const auto basis = pred_basis(net, rule, target);
    if (basis) {
      const auto after = pn_try_step(net, *basis, r);
      s.check(basis->control == rule.from && after && covers(*after, target),
              [&] { return "basis element does not step to a cover of " + format_config(net, target); });
    }
    bool complete = true;
    std::string bad;
    for (const Marking& m : all_markings(counters, 4)) {
      const NetConfig c{rule.from, m};
      const auto after = pn_try_step(net, c, r);
      const bool reaches = after && covers(*after, target);
      const bool predicted = basis && covers(c, *basis);
      if (reaches != predicted && complete) {
        complete = false;
        bad = format_config(net, c);
      }
    }
    s.check(complete, [&] {
      return "pred-basis misclassifies " + bad + " for target " + format_config(net, target) + " in\n" +
             print_net(net);
    });
  }
  return s.done();
}

Interface random_interface(Rng& rng, std::size_t length, std::size_t controls, std::size_t generators) {
  Interface out;
  for (std::size_t i = 0; i < length; ++i) {
    InterfaceEntry e{static_cast<ControlId>(rng.below(controls)), rng.chance(0.5), {}};
    for (std::size_t g = 0; g < generators; ++g) e.generated.push_back(static_cast<std::uint32_t>(rng.below(3)));
    out.push_back(std::move(e));
  }
  return out;
}

// The interface restricted to what a summary with sequence `seq` accepts.
Interface conform(Interface iface, const Sequence& seq, Rng& rng) {
  for (std::size_t i = 0; i < iface.size() && i < seq.size(); ++i) {
    iface[i].control = seq[i].control;
    if (seq[i].bit) iface[i].bit = false;
  }
  if (rng.chance(0.2) && !iface.empty()) iface[0].bit = !iface[0].bit;
  return iface;
}

bool tail_zero(const Summary& s) {
  for (const auto& row : s.counters) {
    for (std::size_t i = s.sequence.size(); i < row.size(); ++i) {
      if (row[i] != 0) return false;
    }
  }
  return true;
}

PropertyReport summary_algebra(Rng& rng) {
  Suite s("summary add/resolve algebra");
  const unsigned window = 4;
  const std::size_t generators = 3, controls = 3;
  for (int k = 0; k < 150; ++k) {
    Summary cur = Summary::initial(0, generators, window);
    for (int step = 0; step < 8; ++step) {
      if (rng.chance(0.3) && cur.sequence.size() >= 2) {
        try {
          const Summary next = summary_resolve(cur);
          s.check(cur.sequence[1].bit, [&] { return "resolve accepted a second pair with bit 0"; });
          bool shifted = next.sequence.size() + 1 == cur.sequence.size();
          for (std::size_t g = 0; g < generators; ++g) {
            for (unsigned i = 0; i + 1 < window; ++i) shifted = shifted && next.counters[g][i] == cur.counters[g][i + 1];
            shifted = shifted && next.counters[g][window - 1] == 0;
          }
          s.check(shifted, [&] { return "resolve did not shift counters down one index"; });
          cur = next;
        } catch (const Error& e) {
          s.check(e.kind() == ErrorKind::ResolutionBlocked && !cur.sequence[1].bit,
                  [&] { return std::string("resolve failed unexpectedly: ") + e.what(); });
        }
      } else {
        const Interface iface =
            conform(random_interface(rng, 1 + rng.below(window), controls, generators), cur.sequence, rng);
        Sequence seq;
        for (const auto& e : iface) seq.push_back({e.control, e.bit});
        const bool ok = compatible(cur.sequence, seq);
        try {
          const Summary next = summary_add(cur, iface);
          bool counted = ok && next.sequence.size() == std::max(cur.sequence.size(), iface.size());
          for (std::size_t i = 0; i < iface.size(); ++i) {
            for (std::size_t g = 0; g < generators; ++g) {
              counted = counted && next.counters[g][i] == cur.counters[g][i] + iface[i].generated[g];
            }
          }
          s.check(counted, [&] { return "add did not merge the interface as expected"; });
          cur = next;
        } catch (const Error& e) {
          s.check(!ok && e.kind() == ErrorKind::Incompatible,
                  [&] { return std::string("add failed unexpectedly: ") + e.what(); });
        }
      }
      s.check(tail_zero(cur), [&] { return "a counter beyond the sequence length is nonzero"; });
    }
  }
  // resolve(add(S, I)) = add(resolve(S), tail I) when I does not reach index 1.
  for (int k = 0; k < 150; ++k) {
    Summary base = Summary::initial(0, generators, window);
    const Interface opener = conform(random_interface(rng, 2 + rng.below(window - 1), controls, generators),
                                     base.sequence, rng);
    try {
      base = summary_add(base, opener);
    } catch (const Error&) {
      continue;
    }
    base.sequence[1].bit = true;
    Interface iface = conform(random_interface(rng, 2 + rng.below(window - 1), controls, generators), base.sequence, rng);
    iface[0].generated.assign(generators, 0);
    Sequence seq;
    for (const auto& e : iface) seq.push_back({e.control, e.bit});
    if (!compatible(base.sequence, seq)) continue;
    const Interface tail(iface.begin() + 1, iface.end());
    const Summary lhs = summary_resolve(summary_add(base, iface));
    const Summary rhs = summary_add(summary_resolve(base), tail);
    s.check(lhs == rhs, [&] { return "resolve and add do not commute"; });
  }
  return s.done();
}

std::string aged_key(const AgedConfiguration& c) {
  std::string k = std::to_string(c.control) + "|" + c.tree.to_string() + "|";
  for (Age a : c.ages) k += std::to_string(a) + ",";
  return k;
}

std::set<std::string> library_aged_reach(const SenescentSystem& system, const Configuration& initial,
                                         std::size_t depth, std::size_t rhs_bound) {
  const AgedConfiguration start = fresh_configuration(initial);
  std::set<std::string> seen{aged_key(start)};
  std::vector<AgedConfiguration> layer{start};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<AgedConfiguration> next;
    for (const auto& c : layer) {
      for (auto& t : senescent_successors(system, c, rhs_bound)) {
        if (seen.insert(aged_key(t.next)).second) next.push_back(std::move(t.next));
      }
    }
    layer = std::move(next);
  }
  return seen;
}

std::set<std::string> projected(const std::set<std::string>& aged) {
  std::set<std::string> out;
  for (const auto& k : aged) out.insert(k.substr(0, k.rfind('|')));
  return out;
}

PropertyReport lifespan_monotonicity(Rng& rng) {
  Suite s("lifespan monotonicity and age history");
  const RankedAlphabet sigma = small_alphabet();
  for (int k = 0; k < 60; ++k) {
    SenescentSystem sys = random_system(rng, 2 + rng.below(2), 3 + rng.below(3), 0);
    const Configuration init{0, random_tree(rng, sigma, 4)};
    const std::size_t bound = sys.base.max_singleton_size();
    std::set<std::string> previous;
    for (unsigned l = 0; l <= 3; ++l) {
      sys.lifespan = l;
      const auto aged = library_aged_reach(sys, init, 4, bound);
      const auto reached = projected(aged);
      s.check(std::includes(reached.begin(), reached.end(), previous.begin(), previous.end()),
              [&] { return "lifespan " + std::to_string(l) + " loses configurations reached at lifespan " +
                           std::to_string(l - 1) + "\n" + print_system(sys); });
      previous = reached;
      if (l <= 1) {
        std::set<std::string> brute;
        for (const auto& c : brute_aged_reachable(sys, init, 4, bound)) brute.insert(aged_key(c));
        s.check(brute == aged, [&] { return "aged reachable set differs from the brute-force oracle\n" +
                                            print_system(sys); });
      }
    }
    // Random walks: stored ages must match the history-based ages.
    for (int walk = 0; walk < 3; ++walk) {
      sys.lifespan = static_cast<unsigned>(rng.below(3));
      AgedConfiguration cur = fresh_configuration(init);
      std::vector<WitnessStep> witness;
      std::vector<std::vector<Age>> stored{cur.ages};
      for (int step = 0; step < 8; ++step) {
        auto succ = senescent_successors(sys, cur, bound);
        if (succ.empty()) break;
        auto& t = succ[rng.below(succ.size())];
        witness.push_back({t.rule, t.position, t.rhs});
        cur = t.next;
        stored.push_back(cur.ages);
      }
      const auto history = history_ages(sys, init, witness);
      s.check(history && *history == stored,
              [&] { return "stored ages differ from the history replay\n" + format_witness(witness); });
    }
    // Unrestricted agreement when the lifespan cannot bite.
    sys.lifespan = 5;
    std::set<std::string> plain;
    for (const auto& c : brute_reachable(sys.base, init, 4, bound)) {
      plain.insert(std::to_string(c.control) + "|" + c.tree.to_string());
    }
    s.check(projected(library_aged_reach(sys, init, 4, bound)) == plain,
            [&] { return "lifespan above the depth restricts the reachable set\n" + print_system(sys); });
  }
  return s.done();
}

PropertyReport successor_agreement(Rng& rng) {
  Suite s("successors vs brute force");
  const RankedAlphabet sigma = small_alphabet();
  for (int k = 0; k < 100; ++k) {
    Sgtrs sys({"q0", "q1"}, sigma);
    for (int r = 0; r < 3; ++r) {
      Rule rule;
      rule.source = static_cast<ControlId>(rng.below(2));
      rule.target = static_cast<ControlId>(rng.below(2));
      rule.lhs = rng.chance(0.5) ? singleton_nta(random_tree(rng, sigma, 2)) : random_nta(rng, sigma, 2);
      rule.rhs = rng.chance(0.5) ? singleton_nta(random_tree(rng, sigma, 3)) : random_nta(rng, sigma, 2);
      if (nta_empty(rule.lhs) || nta_empty(rule.rhs)) continue;
      sys.add_rule(std::move(rule));
    }
    const Configuration c{static_cast<ControlId>(rng.below(2)), random_tree(rng, sigma, 5)};
    std::set<std::string> lib, brute;
    auto key = [](std::size_t rule, const Position& p, const Tree& t) {
      return std::to_string(rule) + "@" + position_to_string(p) + ":" + t.to_string();
    };
    for (const auto& t : successors(sys, c, 3)) {
      lib.insert(key(t.rule, t.position, t.rhs));
      const auto [context, sub] = decompose(c.tree, t.position);
      s.check(sub == t.lhs_witness && substitute(context, std::vector<Tree>{t.rhs}) == t.next.tree,
              [&] { return "successor is not a one-position rewrite"; });
    }
    for (const auto& t : brute_successors(sys, c, 3)) brute.insert(key(t.rule, t.position, t.rhs));
    s.check(lib == brute, [&] { return "successors differ from brute-force enumeration on " + c.tree.to_string(); });
    std::set<std::string> smaller;
    for (const auto& t : successors(sys, c, 2)) smaller.insert(key(t.rule, t.position, t.rhs));
    s.check(std::includes(lib.begin(), lib.end(), smaller.begin(), smaller.end()),
            [&] { return "successors are not monotone in the rhs bound"; });
  }
  return s.done();
}

}  // namespace

std::vector<PropertyReport> run_property_suites(std::uint64_t seed) {
  std::vector<PropertyReport> out;
  Rng rng(seed);
  out.push_back(tree_round_trips(rng));
  out.push_back(nta_enumeration(rng));
  out.push_back(parikh_additivity(rng));
  out.push_back(pred_basis_checks(rng));
  out.push_back(summary_algebra(rng));
  out.push_back(lifespan_monotonicity(rng));
  out.push_back(successor_agreement(rng));
  return out;
}

}  // namespace senescent::testing
