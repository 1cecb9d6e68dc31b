// Reset Petri nets in counter-machine form: forward semantics, a bounded
// forward search, and backward coverability over upward-closed sets.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace senescent {

using Marking = std::vector<std::uint32_t>;

/// Operation sets per counter kind; each list is sorted and duplicate-free.
struct NetRule {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::vector<std::uint32_t> decr;
  std::vector<std::uint32_t> reset;
  std::vector<std::uint32_t> incr;

  std::size_t op_count() const { return decr.size() + reset.size() + incr.size(); }

  friend bool operator==(const NetRule&, const NetRule&) = default;
};

class ResetNet {
 public:
  std::uint32_t add_control(std::string_view name);
  std::uint32_t add_counter(std::string_view name);
  std::optional<std::uint32_t> find_control(std::string_view name) const;
  std::optional<std::uint32_t> find_counter(std::string_view name) const;
  std::uint32_t control(std::string_view name) const;
  std::uint32_t counter(std::string_view name) const;

  const std::vector<std::string>& controls() const { return controls_; }
  const std::vector<std::string>& counters() const { return counters_; }
  const std::vector<NetRule>& rules() const { return rules_; }

  /// Sorts and dedupes the operation lists.
  std::size_t add_rule(NetRule rule);

 private:
  std::vector<std::string> controls_;
  std::vector<std::string> counters_;
  std::unordered_map<std::string, std::uint32_t> control_index_;
  std::unordered_map<std::string, std::uint32_t> counter_index_;
  std::vector<NetRule> rules_;
};

struct NetConfig {
  std::uint32_t control = 0;
  Marking marking;

  friend bool operator==(const NetConfig&, const NetConfig&) = default;
  friend auto operator<=>(const NetConfig&, const NetConfig&) = default;
};

/// Same control and componentwise >=.
bool covers(const NetConfig& big, const NetConfig& small);

/// Decrements, then resets, then increments.  Throws WrongControl or
/// StuckOnDecrement.
NetConfig pn_step(const ResetNet& net, const NetConfig& config, std::size_t rule);
/// Non-throwing variant.
std::optional<NetConfig> pn_try_step(const ResetNet& net, const NetConfig& config, std::size_t rule);

/// Minimal configuration from which `rule` leads to something covering
/// `target`, or nothing when no predecessor exists.
std::optional<NetConfig> pred_basis(const ResetNet& net, const NetRule& rule, const NetConfig& target);

struct NetVerdict {
  enum class Outcome { Yes, No, Unknown };

  Outcome outcome = Outcome::Unknown;
  std::vector<std::size_t> witness;  // rule indices
  std::size_t states = 0;
  std::size_t depth_reached = 0;
  std::string exhausted;

  bool yes() const { return outcome == Outcome::Yes; }
  bool decided() const { return outcome != Outcome::Unknown; }
};

/// Breadth-first search that drops configurations covered by one already
/// seen.  Answers No only when the frontier empties.
NetVerdict pn_cover_forward(const ResetNet& net, const NetConfig& initial, const NetConfig& target,
                            std::size_t depth_bound, std::size_t max_states = 1'000'000);

struct BackwardResult {
  bool covered = false;
  /// Minimal configurations from which the target can be covered.
  std::vector<NetConfig> basis;
  /// A run from `initial` whose end covers the target, when covered.
  std::vector<std::size_t> witness;
  std::size_t iterations = 0;
};

BackwardResult pn_cover_backward(const ResetNet& net, const NetConfig& initial, const NetConfig& target);

/// Exact-marking breadth-first search.  Answers No only when the reachable
/// set was exhausted.
NetVerdict pn_reach_forward(const ResetNet& net, const NetConfig& initial, const NetConfig& target,
                            std::size_t depth_bound, std::size_t max_states = 1'000'000);

/// Replays rule indices from `initial`; throws like pn_step.
std::vector<NetConfig> pn_replay(const ResetNet& net, const NetConfig& initial,
                                 const std::vector<std::size_t>& rules);

std::string format_config(const ResetNet& net, const NetConfig& config);

}  // namespace senescent
