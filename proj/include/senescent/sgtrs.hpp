// Ground tree rewrite systems with state (sGTRS), optionally with output
// symbols on rules.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "senescent/automata.hpp"
#include "senescent/trees.hpp"

namespace senescent {

using ControlId = std::uint32_t;

struct Rule {
  ControlId source = 0;
  NTA lhs;
  ControlId target = 0;
  NTA rhs;
  std::optional<std::string> output;

  bool changes_control() const { return source != target; }
  /// Present when the side was given as single(tree).
  const std::optional<Tree>& lhs_tree() const { return lhs.singleton(); }
  const std::optional<Tree>& rhs_tree() const { return rhs.singleton(); }
};

class Sgtrs {
 public:
  Sgtrs() = default;
  Sgtrs(std::vector<std::string> controls, RankedAlphabet alphabet);

  ControlId add_control(std::string name);
  /// Throws InvalidSystem for unknown names.
  ControlId control(std::string_view name) const;
  std::optional<ControlId> find_control(std::string_view name) const;
  const std::string& control_name(ControlId id) const { return controls_.at(id); }
  const std::vector<std::string>& controls() const { return controls_; }

  const RankedAlphabet& alphabet() const { return alphabet_; }
  RankedAlphabet& alphabet() { return alphabet_; }

  /// Validates and appends; returns the rule index.  Throws InvalidSystem when
  /// controls are undeclared or either side has an empty language, and
  /// AlphabetMismatch when an automaton uses symbols outside the alphabet.
  std::size_t add_rule(Rule rule);
  /// Convenience for rules with singleton sides.
  std::size_t add_single(std::string_view source, const Tree& lhs, std::string_view target,
                         const Tree& rhs, std::optional<std::string> output = std::nullopt);

  const std::vector<Rule>& rules() const { return rules_; }
  const Rule& rule(std::size_t index) const { return rules_.at(index); }
  const std::vector<std::size_t>& rules_from(ControlId control) const;

  /// Size of the largest singleton tree in any rule (LHS or RHS), at least 1.
  std::size_t max_singleton_size() const;
  bool all_singleton() const;

 private:
  std::vector<std::string> controls_;
  RankedAlphabet alphabet_;
  std::vector<Rule> rules_;
  std::vector<std::vector<std::size_t>> by_source_;
};

struct Configuration {
  ControlId control = 0;
  Tree tree;
};

struct Transition {
  std::size_t rule = 0;
  std::size_t index = 0;  // pre-order index of the rewritten node
  Position position;
  Tree lhs_witness;
  Tree rhs;
  std::optional<std::string> output;
  Configuration next;
};

/// RHS trees for each rule, at most `rhs_bound` nodes each, sorted by
/// serialization.
std::vector<std::vector<Tree>> rhs_candidates(const Sgtrs& system, std::size_t rhs_bound);

/// Pre-order indices of `tree` where the rule's LHS matches, ascending.
std::vector<std::size_t> match_indices(const Rule& rule, const Tree& tree);

/// All transitions whose inserted tree has at most rhs_bound nodes, ordered by
/// (rule, position, rhs serialization).
std::vector<Transition> successors(const Sgtrs& system, const Configuration& config,
                                   std::size_t rhs_bound);

std::set<std::pair<ControlId, ControlId>> underlying_control_graph(const Sgtrs& system);
/// True iff every strongly connected component of the control graph is a
/// single node.
bool is_weakly_extended(const Sgtrs& system);

}  // namespace senescent
