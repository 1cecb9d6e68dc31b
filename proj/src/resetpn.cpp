#include "senescent/resetpn.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "senescent/errors.hpp"

namespace senescent {

namespace {

using Index = std::unordered_map<std::string, std::uint32_t>;

std::uint32_t intern(std::vector<std::string>& names, Index& index, std::string_view name) {
  auto [it, added] = index.try_emplace(std::string(name), static_cast<std::uint32_t>(names.size()));
  if (added) names.emplace_back(name);
  return it->second;
}

std::optional<std::uint32_t> lookup(const Index& index, std::string_view name) {
  auto it = index.find(std::string(name));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

bool contains(const std::vector<std::uint32_t>& v, std::uint32_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

void normalise(std::vector<std::uint32_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::uint32_t ResetNet::add_control(std::string_view name) { return intern(controls_, control_index_, name); }
std::uint32_t ResetNet::add_counter(std::string_view name) { return intern(counters_, counter_index_, name); }
std::optional<std::uint32_t> ResetNet::find_control(std::string_view name) const { return lookup(control_index_, name); }
std::optional<std::uint32_t> ResetNet::find_counter(std::string_view name) const { return lookup(counter_index_, name); }

std::uint32_t ResetNet::control(std::string_view name) const {
  if (auto c = find_control(name)) return *c;
  throw Error(ErrorKind::InvalidSystem, "unknown control '" + std::string(name) + "'");
}

std::uint32_t ResetNet::counter(std::string_view name) const {
  if (auto c = find_counter(name)) return *c;
  throw Error(ErrorKind::InvalidSystem, "unknown counter '" + std::string(name) + "'");
}

std::size_t ResetNet::add_rule(NetRule rule) {
  if (rule.from >= controls_.size() || rule.to >= controls_.size()) {
    throw Error(ErrorKind::InvalidSystem, "net rule refers to an undeclared control");
  }
  for (auto* ops : {&rule.decr, &rule.reset, &rule.incr}) {
    normalise(*ops);
    if (!ops->empty() && ops->back() >= counters_.size()) {
      throw Error(ErrorKind::InvalidSystem, "net rule refers to an undeclared counter");
    }
  }
  rules_.push_back(std::move(rule));
  return rules_.size() - 1;
}

bool covers(const NetConfig& big, const NetConfig& small) {
  if (big.control != small.control || big.marking.size() != small.marking.size()) return false;
  for (std::size_t i = 0; i < big.marking.size(); ++i) {
    if (big.marking[i] < small.marking[i]) return false;
  }
  return true;
}

std::optional<NetConfig> pn_try_step(const ResetNet& net, const NetConfig& config, std::size_t rule) {
  const NetRule& r = net.rules().at(rule);
  if (r.from != config.control) return std::nullopt;
  NetConfig out{r.to, config.marking};
  for (auto c : r.decr) {
    if (out.marking[c] == 0) return std::nullopt;
    --out.marking[c];
  }
  for (auto c : r.reset) out.marking[c] = 0;
  for (auto c : r.incr) ++out.marking[c];
  return out;
}

NetConfig pn_step(const ResetNet& net, const NetConfig& config, std::size_t rule) {
  const NetRule& r = net.rules().at(rule);
  if (r.from != config.control) {
    throw Error(ErrorKind::WrongControl, "rule starts in '" + net.controls()[r.from] + "', not '" +
                                             net.controls()[config.control] + "'");
  }
  for (auto c : r.decr) {
    if (config.marking.at(c) == 0) {
      throw Error(ErrorKind::StuckOnDecrement, "counter '" + net.counters()[c] + "' is zero");
    }
  }
  return *pn_try_step(net, config, rule);
}

std::optional<NetConfig> pred_basis(const ResetNet& net, const NetRule& rule, const NetConfig& target) {
  if (rule.to != target.control) return std::nullopt;
  NetConfig out{rule.from, Marking(net.counters().size(), 0)};
  for (std::uint32_t c = 0; c < out.marking.size(); ++c) {
    const std::uint32_t inc = contains(rule.incr, c) ? 1 : 0;
    const std::uint32_t dec = contains(rule.decr, c) ? 1 : 0;
    const std::uint32_t want = target.marking[c];
    if (contains(rule.reset, c)) {
      if (want > inc) return std::nullopt;
      out.marking[c] = dec;
    } else {
      out.marking[c] = (want > inc ? want - inc : 0) + dec;
    }
  }
  return out;
}

namespace {

struct Visited {
  NetConfig config;
  std::size_t parent;
  std::size_t rule;
  std::size_t depth;
};

std::vector<std::size_t> chain(const std::vector<Visited>& nodes, std::size_t idx) {
  std::vector<std::size_t> out;
  while (idx != 0) {
    out.push_back(nodes[idx].rule);
    idx = nodes[idx].parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

NetVerdict pn_cover_forward(const ResetNet& net, const NetConfig& initial, const NetConfig& target,
                            std::size_t depth_bound, std::size_t max_states) {
  NetVerdict v;
  std::vector<Visited> nodes{{initial, 0, 0, 0}};
  // Maximal configurations seen so far, per control.
  std::map<std::uint32_t, std::vector<std::size_t>> maximal;
  maximal[initial.control].push_back(0);
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const std::size_t idx = frontier.front();
    frontier.pop_front();
    const Visited cur = nodes[idx];
    v.depth_reached = std::max(v.depth_reached, cur.depth);
    if (covers(cur.config, target)) {
      v.outcome = NetVerdict::Outcome::Yes;
      v.witness = chain(nodes, idx);
      v.states = nodes.size();
      return v;
    }
    if (cur.depth == depth_bound) {
      v.exhausted = "depth";
      continue;
    }
    for (std::size_t r = 0; r < net.rules().size(); ++r) {
      auto next = pn_try_step(net, cur.config, r);
      if (!next) continue;
      auto& bucket = maximal[next->control];
      bool dominated = false;
      for (std::size_t m : bucket) {
        if (covers(nodes[m].config, *next)) {
          dominated = true;
          break;
        }
      }
      if (dominated) continue;
      if (nodes.size() >= max_states) {
        v.exhausted = "states";
        v.states = nodes.size();
        return v;
      }
      std::erase_if(bucket, [&](std::size_t m) { return covers(*next, nodes[m].config); });
      nodes.push_back({std::move(*next), idx, r, cur.depth + 1});
      bucket.push_back(nodes.size() - 1);
      frontier.push_back(nodes.size() - 1);
    }
  }
  v.states = nodes.size();
  if (v.exhausted.empty()) v.outcome = NetVerdict::Outcome::No;
  return v;
}

BackwardResult pn_cover_backward(const ResetNet& net, const NetConfig& initial, const NetConfig& target) {
  struct Element {
    NetConfig config;
    std::size_t rule;
    std::size_t successor;  // element this one reaches through `rule`
    bool live;
  };
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<Element> elements{{target, 0, none, true}};
  std::deque<std::size_t> queue{0};
  std::map<std::uint32_t, std::vector<std::size_t>> by_control;
  by_control[target.control].push_back(0);

  std::vector<std::vector<std::size_t>> into(net.controls().size());
  for (std::size_t r = 0; r < net.rules().size(); ++r) into[net.rules()[r].to].push_back(r);

  BackwardResult result;
  std::optional<std::size_t> hit;
  if (covers(initial, target)) hit = 0;
  while (!queue.empty()) {
    const std::size_t idx = queue.front();
    queue.pop_front();
    if (!elements[idx].live) continue;
    ++result.iterations;
    for (std::size_t r : into[elements[idx].config.control]) {
      auto pred = pred_basis(net, net.rules()[r], elements[idx].config);
      if (!pred) continue;
      auto& bucket = by_control[pred->control];
      bool dominated = false;
      for (std::size_t e : bucket) {
        if (covers(*pred, elements[e].config)) {
          dominated = true;
          break;
        }
      }
      if (dominated) continue;
      for (std::size_t e : bucket) {
        if (covers(elements[e].config, *pred)) elements[e].live = false;
      }
      std::erase_if(bucket, [&](std::size_t e) { return !elements[e].live; });
      elements.push_back({std::move(*pred), r, idx, true});
      const std::size_t added = elements.size() - 1;
      bucket.push_back(added);
      queue.push_back(added);
      if (!hit && covers(initial, elements[added].config)) hit = added;
    }
  }

  for (const auto& [control, bucket] : by_control) {
    for (std::size_t e : bucket) result.basis.push_back(elements[e].config);
  }
  std::sort(result.basis.begin(), result.basis.end());
  if (hit) {
    result.covered = true;
    for (std::size_t e = *hit; elements[e].successor != none; e = elements[e].successor) {
      result.witness.push_back(elements[e].rule);
    }
  }
  return result;
}

NetVerdict pn_reach_forward(const ResetNet& net, const NetConfig& initial, const NetConfig& target,
                            std::size_t depth_bound, std::size_t max_states) {
  NetVerdict v;
  std::vector<Visited> nodes{{initial, 0, 0, 0}};
  std::set<NetConfig> seen{initial};
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const std::size_t idx = frontier.front();
    frontier.pop_front();
    const Visited cur = nodes[idx];
    v.depth_reached = std::max(v.depth_reached, cur.depth);
    if (cur.config == target) {
      v.outcome = NetVerdict::Outcome::Yes;
      v.witness = chain(nodes, idx);
      v.states = nodes.size();
      return v;
    }
    if (cur.depth == depth_bound) {
      v.exhausted = "depth";
      continue;
    }
    for (std::size_t r = 0; r < net.rules().size(); ++r) {
      auto next = pn_try_step(net, cur.config, r);
      if (!next || !seen.insert(*next).second) continue;
      if (nodes.size() >= max_states) {
        v.exhausted = "states";
        v.states = nodes.size();
        return v;
      }
      nodes.push_back({std::move(*next), idx, r, cur.depth + 1});
      frontier.push_back(nodes.size() - 1);
    }
  }
  v.states = nodes.size();
  if (v.exhausted.empty()) v.outcome = NetVerdict::Outcome::No;
  return v;
}

std::vector<NetConfig> pn_replay(const ResetNet& net, const NetConfig& initial,
                                 const std::vector<std::size_t>& rules) {
  std::vector<NetConfig> out{initial};
  for (std::size_t r : rules) out.push_back(pn_step(net, out.back(), r));
  return out;
}

std::string format_config(const ResetNet& net, const NetConfig& config) {
  std::string out = net.controls()[config.control];
  for (std::size_t c = 0; c < config.marking.size(); ++c) {
    if (config.marking[c] == 0) continue;
    out += " " + net.counters()[c] + "=" + std::to_string(config.marking[c]);
  }
  return out;
}

}  // namespace senescent
