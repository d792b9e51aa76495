#pragma once

// Elements of the free inverse monoid as birooted Munn trees.
//
// An element is a finite prefix-closed set of reduced words (the vertices of a
// subtree of the Cayley tree of the free group containing 1) together with a
// distinguished vertex, the root. Vertices are stored as a trie whose nodes are
// numbered in (length, lexicographic) order of the words they spell, so node 0
// is the empty word and structural equality is equality in the monoid.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fim/automata.hpp"
#include "fim/words.hpp"

namespace fim {

class MunnElement {
 public:
  // The identity: the single vertex 1 with root 1.
  MunnElement();

  // Validates that `vertices` is prefix-closed and contains 1 and `root`.
  // Throws PreconditionError otherwise.
  static MunnElement from_vertices(std::vector<ReducedWord> vertices, const ReducedWord& root);

  std::size_t vertex_count() const { return parent_.size(); }
  std::vector<ReducedWord> vertices() const;
  ReducedWord vertex(std::size_t node) const;
  ReducedWord root() const { return vertex(root_); }
  std::size_t root_node() const { return root_; }

  // Tree structure. Node 0 is the vertex 1; every other node has a parent and
  // the edge parent -> node carries edge_label(node).
  std::size_t parent(std::size_t node) const { return parent_[node]; }
  Letter edge_label(std::size_t node) const { return label_[node]; }
  std::optional<std::size_t> child(std::size_t node, Letter l) const;
  // Neighbour reached from `node` by reading `l`, if that edge is in the tree.
  std::optional<std::size_t> step(std::size_t node, Letter l) const;
  std::optional<std::size_t> find_vertex(std::span<const Letter> w) const;
  bool contains_vertex(const ReducedWord& w) const { return find_vertex(w.letters()).has_value(); }

  std::size_t depth(std::size_t node) const;
  std::size_t norm() const { return depth(vertex_count() - 1); }
  bool is_idempotent() const { return root_ == 0; }

  std::size_t hash() const;

  bool operator==(const MunnElement&) const = default;

 private:
  friend class TreeBuilder;

  std::vector<std::uint32_t> parent_;
  std::vector<Letter> label_;
  std::vector<std::uint32_t> child_begin_;  // children of n: [child_begin_[n], child_begin_[n+1])
  std::uint32_t root_ = 0;
};

// The canonical homomorphism from words: the Munn tree of the walk w from 1.
MunnElement from_word(std::span<const Letter> w);
inline MunnElement from_word(const ReducedWord& w) { return from_word(w.letters()); }

MunnElement multiply(const MunnElement& x, const MunnElement& y);
inline MunnElement operator*(const MunnElement& x, const MunnElement& y) { return multiply(x, y); }
MunnElement inverse(const MunnElement& x);

inline bool equals(const MunnElement& x, const MunnElement& y) { return x == y; }

// A fixed total order on elements (vertex count first), for sorted containers
// and deterministic output. Not the natural partial order.
bool canonical_less(const MunnElement& x, const MunnElement& y);
struct CanonicalLess {
  bool operator()(const MunnElement& x, const MunnElement& y) const { return canonical_less(x, y); }
};

// Natural partial order: x <= y iff T(x) contains T(y) and the roots agree.
bool leq(const MunnElement& x, const MunnElement& y);
inline bool is_idempotent(const MunnElement& x) { return x.is_idempotent(); }
inline std::size_t norm(const MunnElement& x) { return x.norm(); }

// Image of x under the matched substitution sending letter code c to
// images_by_code[c]. This is the action of a monoid endomorphism on elements.
MunnElement map_element(const MunnElement& x, std::span<const Word> images_by_code);

// The letters labelling edges of the tree, both orientations, sorted.
std::vector<Letter> edge_letters(const MunnElement& x);

// Inverse automaton on the tree's vertices, initial 1, accepting the root.
// Accepts exactly the words w with from_word(w) >= x.
Nfa to_automaton(const MunnElement& x);

// Automaton accepting exactly the words w with from_word(w) = x. States are
// (vertex, visited set). Throws ResourceError when 2^n * n exceeds guard.
inline constexpr std::size_t kDefaultPreimageGuard = std::size_t{1} << 20;
Nfa preimage_automaton(const MunnElement& x, std::size_t guard = kDefaultPreimageGuard);

// A word representing x: a depth-first walk in letter order, with edges off the
// 1-to-root path walked forward and back and the path itself walked last.
Word canonical_word(const MunnElement& x);

// Every idempotent with at most max_vertices vertices, exactly once, ordered by
// vertex count and then by vertex list. Throws ResourceError above the guards.
inline constexpr std::size_t kMaxEnumerationVertices = 12;
inline constexpr std::size_t kMaxEnumerationCount = 4'000'000;
std::vector<MunnElement> enumerate_idempotents(const Alphabet& alphabet, std::size_t max_vertices);
// Every element (all roots) with at most max_vertices vertices.
std::vector<MunnElement> enumerate_elements(const Alphabet& alphabet, std::size_t max_vertices);

// {"vertices": ["", "a", "ab"], "root": "a"}
std::string to_json(const MunnElement& x, const Alphabet& alphabet);
MunnElement munn_from_json(std::string_view text, const Alphabet& alphabet);
std::string to_dot(const MunnElement& x, const Alphabet& alphabet);

}  // namespace fim

template <>
struct std::hash<fim::MunnElement> {
  std::size_t operator()(const fim::MunnElement& x) const noexcept { return x.hash(); }
};
