#include "senescent/trees.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <mutex>
#include <set>
#include <unordered_map>

#include "senescent/errors.hpp"

namespace senescent {

namespace {

struct LabelRegistry {
  std::mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, std::uint32_t> ids;

  LabelRegistry() {
    names.emplace_back();
    ids.emplace("", 0);
  }
};

LabelRegistry& registry() {
  static LabelRegistry instance;
  return instance;
}

std::size_t mix(std::size_t seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 12) + (seed >> 4);
  return seed;
}

}  // namespace

Label Label::intern(std::string_view name) {
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  auto it = reg.ids.find(std::string(name));
  if (it != reg.ids.end()) return Label(it->second);
  auto id = static_cast<std::uint32_t>(reg.names.size());
  reg.names.emplace_back(name);
  reg.ids.emplace(std::string(name), id);
  return Label(id);
}

const std::string& Label::name() const {
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  return reg.names[id_];
}

Label variable_label(std::size_t i) { return Label::intern("$" + std::to_string(i)); }

std::optional<std::size_t> variable_index(Label label) {
  const std::string& name = label.name();
  if (name.size() < 2 || name[0] != '$') return std::nullopt;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), value);
  if (ec != std::errc() || ptr != name.data() + name.size() || value == 0) return std::nullopt;
  return value;
}

// ---------------------------------------------------------------------------
// RankedAlphabet

Label RankedAlphabet::add(std::string_view name, unsigned rank) {
  Label label = Label::intern(name);
  add(label, rank);
  return label;
}

void RankedAlphabet::add(Label label, unsigned rank) {
  auto [it, inserted] = ranks_.emplace(label, rank);
  if (!inserted && it->second != rank) {
    throw Error(ErrorKind::RankMismatch, "symbol '" + label.name() + "' declared with ranks " +
                                             std::to_string(it->second) + " and " +
                                             std::to_string(rank));
  }
}

unsigned RankedAlphabet::rank(Label label) const {
  auto it = ranks_.find(label);
  if (it == ranks_.end()) throw Error(ErrorKind::UnknownSymbol, "symbol '" + label.name() + "'");
  return it->second;
}

std::vector<std::pair<Label, unsigned>> RankedAlphabet::symbols() const {
  std::vector<std::pair<Label, unsigned>> out(ranks_.begin(), ranks_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first.name() < b.first.name(); });
  return out;
}

void RankedAlphabet::merge(const RankedAlphabet& other) {
  for (const auto& [label, rank] : other.ranks_) add(label, rank);
}

// ---------------------------------------------------------------------------
// Positions

std::string position_to_string(const Position& position) {
  if (position.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < position.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(position[i]);
  }
  return out;
}

Position position_from_string(std::string_view text) {
  Position out;
  if (text == "e") return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('.', start);
    if (end == std::string_view::npos) end = text.size();
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + end, value);
    if (ec != std::errc() || ptr != text.data() + end || value == 0) {
      throw Error(ErrorKind::PositionNotInDomain, "malformed position '" + std::string(text) + "'");
    }
    out.push_back(value);
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tree

Tree::Tree(std::vector<Node> nodes) : nodes_(std::move(nodes)) { rehash(); }

void Tree::rehash() {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const Node& n : nodes_) {
    h = mix(h, n.label.id());
    h = mix(h, n.arity);
  }
  hash_ = h;
}

Tree Tree::leaf(Label label) { return Tree({Node{label, 0, 1}}); }

Tree Tree::make(Label label, std::span<const Tree> children) {
  std::vector<Node> nodes;
  std::size_t total = 1;
  for (const Tree& c : children) total += c.size();
  nodes.reserve(total);
  nodes.push_back(Node{label, static_cast<std::uint32_t>(children.size()),
                       static_cast<std::uint32_t>(total)});
  for (const Tree& c : children) nodes.insert(nodes.end(), c.nodes_.begin(), c.nodes_.end());
  return Tree(std::move(nodes));
}

Tree Tree::make(std::string_view name, std::initializer_list<Tree> children) {
  return make(Label::intern(name), std::span<const Tree>(children.begin(), children.size()));
}

std::vector<std::size_t> Tree::children(std::size_t index) const {
  std::vector<std::size_t> out;
  out.reserve(nodes_[index].arity);
  std::size_t child = index + 1;
  for (std::uint32_t k = 0; k < nodes_[index].arity; ++k) {
    out.push_back(child);
    child += nodes_[child].size;
  }
  return out;
}

std::optional<std::size_t> Tree::parent(std::size_t index) const {
  if (index == 0) return std::nullopt;
  std::size_t cur = 0;
  while (true) {
    std::size_t child = cur + 1;
    for (std::uint32_t k = 0; k < nodes_[cur].arity; ++k) {
      if (child == index) return cur;
      if (index < child + nodes_[child].size) break;
      child += nodes_[child].size;
    }
    cur = child;
  }
}

Tree Tree::subtree(std::size_t index) const {
  return Tree(std::vector<Node>(nodes_.begin() + static_cast<std::ptrdiff_t>(index),
                                nodes_.begin() + static_cast<std::ptrdiff_t>(index + nodes_[index].size)));
}

Tree Tree::replace(std::size_t index, const Tree& replacement) const {
  const std::size_t old_size = nodes_[index].size;
  std::vector<Node> out;
  out.reserve(nodes_.size() - old_size + replacement.size());
  out.insert(out.end(), nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(index));
  out.insert(out.end(), replacement.nodes_.begin(), replacement.nodes_.end());
  out.insert(out.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(index + old_size), nodes_.end());
  // Ancestors of `index` are exactly the earlier nodes whose slice covers it.
  const auto delta = static_cast<std::int64_t>(replacement.size()) - static_cast<std::int64_t>(old_size);
  if (delta != 0) {
    std::size_t cur = 0;
    while (cur != index) {
      out[cur].size = static_cast<std::uint32_t>(static_cast<std::int64_t>(out[cur].size) + delta);
      std::size_t child = cur + 1;
      while (index >= child + nodes_[child].size) child += nodes_[child].size;
      cur = child;
    }
  }
  return Tree(std::move(out));
}


std::vector<Position> Tree::positions() const {
  std::vector<Position> out(nodes_.size());
  // Parents precede children in pre-order, so one forward pass suffices.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    std::size_t child = i + 1;
    for (std::uint32_t k = 1; k <= nodes_[i].arity; ++k) {
      out[child] = out[i];
      out[child].push_back(k);
      child += nodes_[child].size;
    }
  }
  return out;
}

Position Tree::position_of(std::size_t index) const {
  Position pos;
  std::size_t cur = 0;
  while (cur != index) {
    std::size_t child = cur + 1;
    std::uint32_t k = 1;
    while (index >= child + nodes_[child].size) {
      child += nodes_[child].size;
      ++k;
    }
    pos.push_back(k);
    cur = child;
  }
  return pos;
}

std::optional<std::size_t> Tree::index_of(const Position& position) const {
  std::size_t cur = 0;
  for (std::uint32_t k : position) {
    if (k == 0 || k > nodes_[cur].arity) return std::nullopt;
    std::size_t child = cur + 1;
    for (std::uint32_t j = 1; j < k; ++j) child += nodes_[child].size;
    cur = child;
  }
  return cur;
}

namespace {

std::size_t write_node(const std::vector<Tree::Node>& nodes, std::size_t i, std::string& out) {
  out += nodes[i].label.name();
  std::size_t next = i + 1;
  if (nodes[i].arity == 0) return next;
  out += '(';
  for (std::uint32_t k = 0; k < nodes[i].arity; ++k) {
    if (k) out += ',';
    next = write_node(nodes, next, out);
  }
  out += ')';
  return next;
}

}  // namespace

std::string Tree::to_string() const {
  std::string out;
  write_node(nodes_, 0, out);
  return out;
}

std::size_t Tree::depth() const {
  std::vector<std::size_t> d(nodes_.size(), 0);
  std::size_t best = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    best = std::max(best, d[i]);
    std::size_t child = i + 1;
    for (std::uint32_t k = 0; k < nodes_[i].arity; ++k) {
      d[child] = d[i] + 1;
      child += nodes_[child].size;
    }
  }
  return best;
}

std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
  // Node-wise by label name then arity; independent of interning order.
  const std::size_t n = std::min(a.nodes_.size(), b.nodes_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.nodes_[i];
    const auto& y = b.nodes_[i];
    if (x.label != y.label) {
      int c = x.label.name().compare(y.label.name());
      return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (auto c = x.arity <=> y.arity; c != 0) return c;
  }
  return a.nodes_.size() <=> b.nodes_.size();
}

// ---------------------------------------------------------------------------
// Validation

Tree validate_tree(const RankedAlphabet& alphabet, const RawTree& raw) {
  if (raw.empty()) throw Error(ErrorKind::EmptyTree, "tree domain is empty");
  for (const auto& [pos, name] : raw) {
    if (pos.empty()) continue;
    Position prefix(pos.begin(), pos.end() - 1);
    if (!raw.contains(prefix)) {
      throw Error(ErrorKind::DomainNotClosed,
                  "position " + position_to_string(pos) + " has no parent");
    }
    if (pos.back() > 1) {
      Position sibling = pos;
      --sibling.back();
      if (!raw.contains(sibling)) {
        throw Error(ErrorKind::DomainNotClosed,
                    "position " + position_to_string(pos) + " has no left sibling");
      }
    }
  }
  if (!raw.contains(Position{})) throw Error(ErrorKind::DomainNotClosed, "missing root");

  // std::map order on positions is lexicographic, i.e. pre-order.
  std::map<Position, unsigned> child_count;
  for (const auto& [pos, name] : raw) {
    if (!pos.empty()) {
      Position prefix(pos.begin(), pos.end() - 1);
      child_count[prefix] = std::max(child_count[prefix], pos.back());
    }
  }
  std::vector<Tree> built;
  std::vector<std::pair<Label, unsigned>> order;
  for (const auto& [pos, name] : raw) {
    Label label = Label::intern(name);
    unsigned rank = alphabet.rank(label);
    unsigned kids = child_count.contains(pos) ? child_count.at(pos) : 0;
    if (kids != rank) {
      throw Error(ErrorKind::RankMismatch, "node " + position_to_string(pos) + " labelled '" +
                                               name + "' has " + std::to_string(kids) +
                                               " children, rank is " + std::to_string(rank));
    }
    order.emplace_back(label, rank);
  }
  // Assemble bottom-up from the pre-order listing.
  for (std::size_t i = order.size(); i-- > 0;) {
    auto [label, rank] = order[i];
    std::vector<Tree> kids(built.end() - rank, built.end());
    std::reverse(kids.begin(), kids.end());
    built.erase(built.end() - rank, built.end());
    built.push_back(Tree::make(label, kids));
  }
  return built.back();
}

bool conforms(const Tree& tree, const RankedAlphabet& alphabet) {
  for (const auto& node : tree.nodes()) {
    if (!alphabet.contains(node.label) || alphabet.rank(node.label) != node.arity) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Contexts

Context::Context(Tree base) : base_(std::move(base)) {
  std::map<std::size_t, Position> found;
  std::size_t idx = 0;
  for (const auto& node : base_.nodes()) {
    if (auto v = variable_index(node.label)) {
      if (node.arity != 0) {
        throw Error(ErrorKind::ArityMismatch, "variable $" + std::to_string(*v) + " is not a leaf");
      }
      if (!found.emplace(*v, base_.position_of(idx)).second) {
        throw Error(ErrorKind::ArityMismatch, "variable $" + std::to_string(*v) + " repeated");
      }
    }
    ++idx;
  }
  std::size_t expect = 1;
  for (auto& [v, pos] : found) {
    if (v != expect++) {
      throw Error(ErrorKind::ArityMismatch, "context variables are not $1..$n");
    }
    holes_.push_back(std::move(pos));
  }
}

Tree substitute(const Context& context, std::span<const Tree> fillers) {
  if (fillers.size() != context.arity()) {
    throw Error(ErrorKind::ArityMismatch, "context has " + std::to_string(context.arity()) +
                                              " holes, got " + std::to_string(fillers.size()));
  }
  const Tree& base = context.base();
  // Replace from the rightmost hole so earlier indices stay valid.
  std::vector<std::pair<std::size_t, std::size_t>> holes;  // (pre-order index, variable)
  for (std::size_t i = 0; i < context.arity(); ++i) {
    holes.emplace_back(*base.index_of(context.holes()[i]), i);
  }
  std::sort(holes.begin(), holes.end());
  Tree out = base;
  for (auto it = holes.rbegin(); it != holes.rend(); ++it) out = out.replace(it->first, fillers[it->second]);
  return out;
}

std::pair<Context, Tree> decompose(const Tree& tree, const Position& position) {
  auto idx = tree.index_of(position);
  if (!idx) {
    throw Error(ErrorKind::PositionNotInDomain, "position " + position_to_string(position));
  }
  return {Context(tree.replace(*idx, Tree::leaf(variable_label(1)))), tree.subtree(*idx)};
}

}  // namespace senescent
