// Random generators and brute-force oracles shared by the unit, property and
// acceptance suites.  Nothing here calls the search engines under test.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "senescent/automata.hpp"
#include "senescent/encodings.hpp"
#include "senescent/mpds.hpp"
#include "senescent/resetpn.hpp"
#include "senescent/senescent.hpp"

namespace senescent::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  std::size_t between(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// a:0 b:0 f:1 g:2.
RankedAlphabet small_alphabet();

Tree random_tree(Rng& rng, const RankedAlphabet& alphabet, std::size_t max_nodes);

/// Every tree over `alphabet` with at most `max_nodes` nodes.
std::vector<Tree> all_trees(const RankedAlphabet& alphabet, std::size_t max_nodes);

NTA random_nta(Rng& rng, const RankedAlphabet& alphabet, std::size_t states);

/// Acceptance by trying every assignment of states to nodes.
bool accepts_by_runs(const NTA& automaton, const Tree& tree);

/// Singleton-rule system over small_alphabet() with controls q0..q{n-1}.
SenescentSystem random_system(Rng& rng, std::size_t controls, std::size_t rules, unsigned lifespan,
                              std::size_t lhs_nodes = 2, std::size_t rhs_nodes = 3);

/// Ages after each step of `witness`, computed from birthdates: a node's age
/// is the number of control changes made after the step that wrote it,
/// capped at lifespan+1.  Returns nothing if some step rewrites a node older
/// than the lifespan or does not match.
std::optional<std::vector<std::vector<Age>>> history_ages(const SenescentSystem& system,
                                                          const Configuration& initial,
                                                          const std::vector<WitnessStep>& witness);

/// Smallest lifespan under which `witness` is a legal run (history oracle).
std::optional<unsigned> minimal_lifespan(const SenescentSystem& system, const Configuration& initial,
                                         const std::vector<WitnessStep>& witness, unsigned max_lifespan);

/// Transitions by enumerating positions and candidate trees; LHS membership
/// via accepts_by_runs, RHS candidates from all_trees.
struct BruteTransition {
  std::size_t rule;
  Position position;
  Tree rhs;
  Configuration next;
};
std::vector<BruteTransition> brute_successors(const Sgtrs& system, const Configuration& config,
                                              std::size_t rhs_bound);

/// Unrestricted sGTRS configurations reachable within `depth` steps.
std::vector<Configuration> brute_reachable(const Sgtrs& system, const Configuration& initial, std::size_t depth,
                                           std::size_t rhs_bound);

/// Lifespan-restricted configurations (with ages) reachable within `depth`
/// steps, computed with history_ages-style bookkeeping.
std::vector<AgedConfiguration> brute_aged_reachable(const SenescentSystem& system, const Configuration& initial,
                                                    std::size_t depth, std::size_t rhs_bound);

ResetNet random_net(Rng& rng, std::size_t controls, std::size_t counters, std::size_t max_ops);
NetConfig random_config(Rng& rng, const ResetNet& net, std::uint32_t max_value);

/// Markings with every component <= bound.
std::vector<Marking> all_markings(std::size_t counters, std::uint32_t bound);

Mpds random_mpds(Rng& rng, unsigned stacks, unsigned scope, std::size_t controls, std::size_t rules);

/// Reads an encoded witness back as pushdown moves, using the report's name
/// map.  Nothing is returned when a step has no pushdown meaning.
std::optional<std::vector<MpdsMove>> decode_scoped_witness(const Mpds& mpds, const ScopedEncoding& encoding,
                                                           const std::vector<WitnessStep>& witness);

/// Words of length <= max_length accepted by `automaton`.
std::vector<std::vector<std::string>> accepted_words(const RegularAutomaton& automaton, std::size_t max_length);

RegularAutomaton random_ra(Rng& rng, const std::vector<std::string>& symbols, std::size_t states);

}  // namespace senescent::testing
