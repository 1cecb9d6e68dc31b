// Lifespan-restricted semantics: per-node ages, fossilisation, and bounded
// breadth-first reachability.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "senescent/sgtrs.hpp"

namespace senescent {

using Age = std::uint8_t;

struct SenescentSystem {
  Sgtrs base;
  unsigned lifespan = 0;

  /// Saturation value: any age above the lifespan is stored as this.
  Age fossil() const { return static_cast<Age>(lifespan + 1); }
};

/// Ages are indexed like the tree's pre-order nodes.
struct AgedConfiguration {
  ControlId control = 0;
  Tree tree;
  std::vector<Age> ages;

  friend bool operator==(const AgedConfiguration&, const AgedConfiguration&) = default;
};

AgedConfiguration fresh_configuration(const Configuration& config);

/// One lifespan-restricted transition.  Throws RuleNotApplicable when the
/// control, LHS or RHS do not fit, FossilisedNode when the replaced subtree
/// holds a node older than the lifespan.
AgedConfiguration step(const SenescentSystem& system, const AgedConfiguration& config,
                       std::size_t rule, const Position& position, const Tree& rhs);

struct AgedTransition {
  std::size_t rule = 0;
  Position position;
  Tree rhs;
  std::optional<std::string> output;
  AgedConfiguration next;
};

std::vector<AgedTransition> senescent_successors(const SenescentSystem& system,
                                                 const AgedConfiguration& config,
                                                 std::size_t rhs_bound);

struct WitnessStep {
  std::size_t rule = 0;
  Position position;
  Tree rhs;

  friend bool operator==(const WitnessStep&, const WitnessStep&) = default;
};

struct SearchBounds {
  std::size_t depth = 10;
  std::size_t rhs_size = 0;  // 0: the system's largest singleton tree
  unsigned jobs = 1;
  std::size_t max_states = 4'000'000;
};

struct Verdict {
  enum class Outcome { Reachable, Unknown };

  Outcome outcome = Outcome::Unknown;
  std::vector<WitnessStep> witness;
  /// The frontier emptied before any bound was hit.
  bool saturated = false;
  /// Saturated and every RHS language lies within the rhs bound, so the whole
  /// lifespan-restricted state space was visited.
  bool exhaustive = false;
  std::size_t states = 0;
  std::size_t depth_reached = 0;
  std::size_t rhs_bound = 0;
  /// "depth", "states" or "" (nothing exhausted).
  std::string exhausted;

  bool reachable() const { return outcome == Outcome::Reachable; }
};

Verdict reach_control(const SenescentSystem& system, const Configuration& initial,
                      ControlId target, const SearchBounds& bounds = {});
Verdict reach_regular(const SenescentSystem& system, const Configuration& initial,
                      ControlId target, const NTA& target_trees, const SearchBounds& bounds = {});

/// Aged configurations along the witness, starting with the initial one.
std::vector<AgedConfiguration> replay(const SenescentSystem& system, const Configuration& initial,
                                      std::span<const WitnessStep> witness);

/// `apply <rule> at <position> insert <tree>` lines.
std::string format_witness(std::span<const WitnessStep> witness);

}  // namespace senescent
