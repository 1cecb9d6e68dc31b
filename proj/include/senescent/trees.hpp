// Ranked alphabets, finite ranked trees, tree domains, contexts and
// substitution.
//
// Trees are stored as a flat pre-order array of nodes.  Each node records its
// label, its arity and the size of the subtree it roots, so a subtree is the
// contiguous slice [i, i + size).  Pre-order index order coincides with the
// lexicographic order on positions, which the explorers rely on for
// deterministic tie-breaking.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace senescent {

/// Interned label.  Names are process-global; the id is only meaningful
/// inside one process.
class Label {
 public:
  Label() = default;
  static Label intern(std::string_view name);

  std::uint32_t id() const noexcept { return id_; }
  const std::string& name() const;

  friend bool operator==(Label a, Label b) noexcept { return a.id_ == b.id_; }
  friend auto operator<=>(Label a, Label b) noexcept { return a.id_ <=> b.id_; }

 private:
  explicit Label(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

/// Label of the i-th context variable (written `$i`, 1-based).
Label variable_label(std::size_t i);
/// Returns i for `$i`, nothing for ordinary labels.
std::optional<std::size_t> variable_index(Label label);

class RankedAlphabet {
 public:
  RankedAlphabet() = default;

  /// Adds `name` with the given rank; re-adding with a different rank throws
  /// RankMismatch.
  Label add(std::string_view name, unsigned rank);
  void add(Label label, unsigned rank);

  bool contains(Label label) const { return ranks_.contains(label); }
  /// Throws UnknownSymbol for labels outside the alphabet.
  unsigned rank(Label label) const;
  std::size_t size() const { return ranks_.size(); }
  bool empty() const { return ranks_.empty(); }

  /// Symbols sorted by name, for deterministic printing.
  std::vector<std::pair<Label, unsigned>> symbols() const;

  /// Union; conflicting ranks throw RankMismatch.
  void merge(const RankedAlphabet& other);

  friend bool operator==(const RankedAlphabet&, const RankedAlphabet&) = default;

 private:
  std::map<Label, unsigned> ranks_;
};

/// A node address: the sequence of 1-based child indices from the root.
using Position = std::vector<std::uint32_t>;

std::string position_to_string(const Position& position);
/// Parses `e` (root) or dotted child indices such as `2.1`.
Position position_from_string(std::string_view text);

class Tree {
 public:
  struct Node {
    Label label;
    std::uint32_t arity = 0;
    std::uint32_t size = 1;

    friend bool operator==(const Node&, const Node&) = default;
  };

  /// A one-node placeholder labelled by the null label; never a parse result.
  Tree() : nodes_{Node{}} { rehash(); }

  static Tree leaf(Label label);
  static Tree leaf(std::string_view name) { return leaf(Label::intern(name)); }
  static Tree make(Label label, std::span<const Tree> children);
  static Tree make(std::string_view name, std::initializer_list<Tree> children);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const Node> nodes() const noexcept { return nodes_; }
  const Node& node(std::size_t index) const { return nodes_[index]; }
  Label label(std::size_t index) const { return nodes_[index].label; }
  Label root_label() const { return nodes_.front().label; }

  /// Pre-order indices of the children of `index`.
  std::vector<std::size_t> children(std::size_t index) const;
  /// Parent pre-order index; the root has none.
  std::optional<std::size_t> parent(std::size_t index) const;

  Tree subtree(std::size_t index) const;
  /// Replaces the subtree rooted at `index` by `replacement`.
  Tree replace(std::size_t index, const Tree& replacement) const;

  /// All positions in pre-order (= lexicographic order).
  std::vector<Position> positions() const;
  Position position_of(std::size_t index) const;
  std::optional<std::size_t> index_of(const Position& position) const;

  /// Canonical serialization `a(b,c(d))`; injective on trees.
  std::string to_string() const;
  std::size_t hash() const noexcept { return hash_; }
  std::size_t depth() const;

  friend bool operator==(const Tree& a, const Tree& b) {
    return a.hash_ == b.hash_ && a.nodes_ == b.nodes_;
  }
  friend std::strong_ordering operator<=>(const Tree& a, const Tree& b);

 private:
  explicit Tree(std::vector<Node> nodes);
  void rehash();

  std::vector<Node> nodes_;
  std::size_t hash_ = 0;
};

struct TreeHash {
  std::size_t operator()(const Tree& t) const noexcept { return t.hash(); }
};

/// Raw candidate data: a position -> label-name map, as it comes out of a
/// reader before any well-formedness check.
using RawTree = std::map<Position, std::string>;

/// Builds a Tree from raw data, checking domain closure and ranks.
Tree validate_tree(const RankedAlphabet& alphabet, const RawTree& raw);
/// Checks that every node of `tree` is in `alphabet` with matching arity.
bool conforms(const Tree& tree, const RankedAlphabet& alphabet);

/// A tree over Σ ⊎ {$1..$n}; variable i sits at `holes[i-1]`.
class Context {
 public:
  /// Throws ArityMismatch if the variables are not exactly $1..$n, each
  /// once, at leaves.
  explicit Context(Tree base);

  const Tree& base() const { return base_; }
  std::size_t arity() const { return holes_.size(); }
  const std::vector<Position>& holes() const { return holes_; }

  friend bool operator==(const Context&, const Context&) = default;

 private:
  Tree base_;
  std::vector<Position> holes_;
};

/// Fills variable i with fillers[i-1].
Tree substitute(const Context& context, std::span<const Tree> fillers);
/// Splits `tree` at `position` into a one-hole context and the subtree.
std::pair<Context, Tree> decompose(const Tree& tree, const Position& position);

}  // namespace senescent

template <>
struct std::hash<senescent::Tree> {
  std::size_t operator()(const senescent::Tree& t) const noexcept { return t.hash(); }
};
