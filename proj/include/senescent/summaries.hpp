// Interfaces of independently evolving sub-trees, interface summaries, the
// per-rule weakly extended system that generates interfaces, and the reset
// net whose coverability decides control-state reachability.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "senescent/resetpn.hpp"
#include "senescent/senescent.hpp"

namespace senescent {

/// Longest interface a sub-tree can have: the control it was created in,
/// `lifespan` further changes while every node is still rewritable, and the
/// change made by rewriting a node of age `lifespan`.
inline unsigned interface_window(unsigned lifespan) { return lifespan + 2; }

struct SummaryPair {
  ControlId control = 0;
  bool bit = false;

  friend bool operator==(const SummaryPair&, const SummaryPair&) = default;
  friend auto operator<=>(const SummaryPair&, const SummaryPair&) = default;
};

using Sequence = std::vector<SummaryPair>;

bool compatible(const Sequence& a, const Sequence& b);
/// Bitwise OR on the overlap, then the longer tail.  Throws Incompatible.
Sequence sequence_add(const Sequence& a, const Sequence& b);

/// Generators index the sub-tree sources: 0 is the virtual rule producing the
/// initial tree, g >= 1 is rule g-1 of the system.
struct InterfaceEntry {
  ControlId control = 0;
  bool bit = false;
  std::vector<std::uint32_t> generated;  // per generator

  friend bool operator==(const InterfaceEntry&, const InterfaceEntry&) = default;
};

using Interface = std::vector<InterfaceEntry>;

struct Summary {
  Sequence sequence;
  /// counters[g][i-1] = c_{g,i}, for i in 1..window.
  std::vector<std::vector<std::uint32_t>> counters;

  static Summary initial(ControlId control, std::size_t generators, unsigned window);
  friend bool operator==(const Summary&, const Summary&) = default;
};

Summary summary_add(const Summary& summary, const Interface& interface);
/// Drops the first pair and shifts counters down one index.  Throws
/// ResolutionBlocked unless the second pair has bit 1.
Summary summary_resolve(const Summary& summary);

struct IstiSystem {
  enum class Family { Init, Simulate, Change, Advance, Generate, GenerateChange };

  /// Controls are the sequence entries (q_i, b_i, i), in order.
  SenescentSystem system;
  Sequence sequence;
  std::size_t generator = 0;
  std::size_t generators = 0;
  Label placeholder;
  Label init;
  std::vector<Family> family;  // per rule
  /// (generator, index) emitted per rule, when any.
  std::vector<std::optional<std::pair<std::size_t, unsigned>>> emits;

  Configuration initial() const;
};

/// `generator_rhs` is the tree language created by the generator (the RHS of
/// its rule, or the initial tree for generator 0).
IstiSystem build_istigtrs(const SenescentSystem& system, std::size_t generator, const NTA& generator_rhs,
                          const Sequence& sequence);

struct ParikhBounds {
  std::size_t depth = 8;  // rule applications; control advances are free
  std::size_t rhs_size = 0;
  std::size_t max_states = 100'000;
};

/// Generation counts as a flattened vector: entry (i-1)*generators + g.
using ParikhTuple = std::vector<std::uint32_t>;

/// Output Parikh images of runs from the init leaf to the last sequence
/// entry, under the lifespan of the original system.  Advances of type
/// Advance move the control without rewriting.
std::set<ParikhTuple> interface_parikh(const IstiSystem& isti, const ParikhBounds& bounds);

/// All interface sequences of one generator with their Parikh sets, explored
/// in a single pass that guesses the sequence on the fly.  Sequences are
/// restricted to a first bit of 0 and to control changes along edges of the
/// control graph.
std::map<Sequence, std::set<ParikhTuple>> interface_table(const SenescentSystem& system, std::size_t generator,
                                                          ControlId start, const NTA& generator_rhs,
                                                          const ParikhBounds& bounds, bool* truncated = nullptr);

struct PnreachBounds {
  ParikhBounds parikh;
  std::size_t max_sequences = 50'000;
};

struct Pnreach {
  ResetNet net;
  NetConfig initial;
  NetConfig target;
  unsigned window = 0;
  std::size_t generators = 0;
  std::size_t sequences = 0;
  /// Hit max_sequences or a table's state cap, so the net is a strict part of
  /// the construction.
  bool truncated = false;

  std::uint32_t counter(std::size_t generator, unsigned index) const {
    return static_cast<std::uint32_t>(generator * window + index - 1);
  }
};

Pnreach build_pnreach(const SenescentSystem& system, ControlId q_init, const Tree& init_tree, ControlId q_dest,
                      const PnreachBounds& bounds = {});

std::string sequence_name(const Sgtrs& system, const Sequence& sequence);

struct DualVerdict {
  Verdict forward;
  bool summary_yes = false;
  std::size_t net_controls = 0;
  std::size_t net_rules = 0;
  std::size_t sequences = 0;
  bool truncated = false;

  bool reachable() const { return forward.reachable() || summary_yes; }
};

struct PipelineBounds {
  SearchBounds forward;
  PnreachBounds summary;
};

DualVerdict decide_control_reachability(const SenescentSystem& system, ControlId q_init, const Tree& init_tree,
                                        ControlId q_dest, const PipelineBounds& bounds = {});

}  // namespace senescent
