// Multi-stack pushdown systems under round/phase scheduling with a scope
// bound on pops.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace senescent {

struct MpdsRule {
  enum class Kind { Push, Int, Pop };

  Kind kind = Kind::Int;
  unsigned stack = 1;  // 1-based
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::uint32_t symbol = 0;  // unused for Int

  friend bool operator==(const MpdsRule&, const MpdsRule&) = default;
};

/// Stack symbols exclude the bottom marker, which every stack holds
/// implicitly and which is never pushed or popped.
class Mpds {
 public:
  Mpds(unsigned stacks, unsigned scope);

  unsigned stacks() const { return stacks_; }
  unsigned scope() const { return scope_; }

  std::uint32_t add_control(std::string_view name);
  std::uint32_t add_symbol(std::string_view name);
  std::optional<std::uint32_t> find_control(std::string_view name) const;
  std::uint32_t control(std::string_view name) const;
  const std::vector<std::string>& controls() const { return controls_; }
  const std::vector<std::string>& symbols() const { return symbols_; }

  std::size_t add_rule(const MpdsRule& rule);
  std::size_t push(unsigned stack, std::string_view from, std::string_view to, std::string_view symbol);
  std::size_t internal(unsigned stack, std::string_view from, std::string_view to);
  std::size_t pop(unsigned stack, std::string_view from, std::string_view symbol, std::string_view to);
  const std::vector<MpdsRule>& rules() const { return rules_; }

  /// Optional designated endpoints, used by the encoder and the CLI.
  std::optional<std::uint32_t> initial;
  std::optional<std::uint32_t> target;

 private:
  unsigned stacks_;
  unsigned scope_;
  std::vector<std::string> controls_;
  std::vector<std::string> symbols_;
  std::vector<MpdsRule> rules_;
};

struct StackCell {
  std::uint32_t symbol = 0;
  std::uint32_t round = 0;  // round of the push

  friend bool operator==(const StackCell&, const StackCell&) = default;
};

/// Stacks list the cells above the bottom marker, top last.
struct MpdsConfiguration {
  std::uint32_t control = 0;
  std::vector<std::vector<StackCell>> stacks;
  unsigned round = 1;
  unsigned phase = 1;  // the stack currently allowed to move

  friend bool operator==(const MpdsConfiguration&, const MpdsConfiguration&) = default;
};

MpdsConfiguration mpds_initial(const Mpds& system, std::uint32_t control);

/// Throws WrongPhase (stack is not the active phase, or the rule belongs to
/// another stack), WrongControl, TopMismatch, ScopeViolation.
MpdsConfiguration mpds_step(const Mpds& system, const MpdsConfiguration& config, unsigned stack,
                            std::size_t rule);
/// Ends the current phase; after phase n the next round starts.
MpdsConfiguration mpds_next_phase(const Mpds& system, const MpdsConfiguration& config);

struct MpdsMove {
  bool is_switch = false;
  std::size_t rule = 0;

  friend bool operator==(const MpdsMove&, const MpdsMove&) = default;
};

struct MpdsBounds {
  unsigned rounds = 4;
  /// Total cost: each rule application costs 1, each phase switch
  /// `switch_cost`.
  std::size_t budget = 24;
  unsigned switch_cost = 0;
  /// Only accept the target at the start of a round (phase 1, entered by a
  /// switch or initially); a run may then enter round `rounds + 1`.
  bool round_start_goal = false;
  std::size_t max_states = 2'000'000;
};

struct MpdsVerdict {
  bool reachable = false;
  std::vector<MpdsMove> witness;
  bool saturated = false;
  std::size_t states = 0;
  std::string exhausted;
};

MpdsVerdict mpds_reach_control(const Mpds& system, std::uint32_t initial, std::uint32_t target,
                               const MpdsBounds& bounds = {});

/// Replays moves from the initial configuration; throws on an illegal move.
std::vector<MpdsConfiguration> mpds_replay(const Mpds& system, std::uint32_t initial,
                                           const std::vector<MpdsMove>& moves);

}  // namespace senescent
