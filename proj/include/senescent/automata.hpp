// Bottom-up tree automata and finite word automata with Parikh images.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "senescent/trees.hpp"

namespace senescent {

using StateId = std::uint32_t;

class NTA {
 public:
  struct Rule {
    std::vector<StateId> children;
    Label label;
    StateId target = 0;

    friend bool operator==(const Rule&, const Rule&) = default;
  };

  explicit NTA(RankedAlphabet alphabet = {}) : alphabet_(std::move(alphabet)) {}

  StateId add_state(std::string name = {});
  /// Looks a state up by name, creating it if absent.
  StateId state(std::string_view name);
  std::optional<StateId> find_state(std::string_view name) const;

  /// Extends the alphabet with `label` if needed; a rank conflict throws
  /// RankMismatch.
  void add_rule(std::vector<StateId> children, Label label, StateId target);
  void add_final(StateId state);

  std::size_t state_count() const { return names_.size(); }
  const std::string& state_name(StateId s) const { return names_[s]; }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<StateId>& finals() const { return finals_; }
  bool is_final(StateId s) const;
  const RankedAlphabet& alphabet() const { return alphabet_; }

  /// Rules with the given label, by index into rules().
  const std::vector<std::size_t>& rules_for(Label label) const;

  /// Set when the automaton was built by singleton_nta.
  const std::optional<Tree>& singleton() const { return singleton_; }

 private:
  friend NTA singleton_nta(const Tree&, const RankedAlphabet*);

  RankedAlphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<Rule> rules_;
  std::vector<StateId> finals_;
  std::unordered_map<std::uint32_t, std::vector<std::size_t>> by_label_;
  std::optional<Tree> singleton_;
};

/// Per-node sets of reachable states (indexed by pre-order node, then state).
std::vector<std::vector<char>> nta_run_sets(const NTA& automaton, const Tree& tree);
/// Throws AlphabetMismatch when the tree uses symbols outside the alphabet.
bool nta_accepts(const NTA& automaton, const Tree& tree);
/// Automaton whose language is exactly {tree}, over the tree's own labels.
/// When `alphabet` is given the tree is checked against it.
NTA singleton_nta(const Tree& tree, const RankedAlphabet* alphabet = nullptr);
/// Accepted trees with at most max_nodes nodes, sorted by serialization.
std::vector<Tree> nta_enumerate(const NTA& automaton, std::size_t max_nodes);
bool nta_empty(const NTA& automaton);

/// Counts under an explicitly supplied symbol ordering.
using ParikhVector = std::vector<std::uint32_t>;

class RegularAutomaton {
 public:
  struct Transition {
    StateId from;
    std::string symbol;
    StateId to;
  };

  StateId add_state(std::string name = {});
  StateId state(std::string_view name);
  std::optional<StateId> find_state(std::string_view name) const;
  void set_initial(StateId s) { initial_ = s; }
  void add_final(StateId s);
  void add_transition(StateId from, std::string symbol, StateId to);

  std::size_t state_count() const { return names_.size(); }
  const std::string& state_name(StateId s) const { return names_[s]; }
  StateId initial() const { return initial_; }
  const std::vector<StateId>& finals() const { return finals_; }
  bool is_final(StateId s) const;
  const std::vector<Transition>& transitions() const { return transitions_; }
  /// Output symbols occurring on transitions, sorted.
  std::vector<std::string> symbols() const;

 private:
  std::vector<std::string> names_;
  StateId initial_ = 0;
  std::vector<StateId> finals_;
  std::vector<Transition> transitions_;
};

ParikhVector parikh_of_word(std::span<const std::string> word, std::span<const std::string> order);
/// Parikh images of accepted words of length <= max_length.
std::set<ParikhVector> parikh_of_automaton(const RegularAutomaton& automaton,
                                           std::span<const std::string> order,
                                           std::size_t max_length);
/// A union of chains, one per vector, whose Parikh image is exactly `vectors`.
RegularAutomaton automaton_from_vectors(const std::set<ParikhVector>& vectors,
                                        std::span<const std::string> order);

}  // namespace senescent
