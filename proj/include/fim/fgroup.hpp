#pragma once

// Free group endomorphisms, Stallings graphs of finitely generated subgroups,
// bounded fixed-subgroup search and curl estimation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fim/words.hpp"

namespace fim {

// Endomorphism of the free group on `rank` generators, acting on the right:
// apply_fg(compose_fg(s, t), w) = apply_fg(t, apply_fg(s, w)).
class FreeGroupEndo {
 public:
  explicit FreeGroupEndo(std::vector<ReducedWord> images);
  static FreeGroupEndo identity(std::size_t rank);

  std::size_t rank() const { return images_.size(); }
  const ReducedWord& image(std::uint32_t generator) const { return images_[generator]; }
  ReducedWord image(Letter l) const;
  const std::vector<ReducedWord>& images() const { return images_; }

  bool operator==(const FreeGroupEndo&) const = default;

 private:
  std::vector<ReducedWord> images_;
};

ReducedWord apply_fg(const FreeGroupEndo& theta, std::span<const Letter> w);
inline ReducedWord apply_fg(const FreeGroupEndo& theta, const ReducedWord& w) {
  return apply_fg(theta, w.letters());
}
FreeGroupEndo compose_fg(const FreeGroupEndo& first, const FreeGroupEndo& second);
FreeGroupEndo power_fg(const FreeGroupEndo& theta, std::size_t n);
// As power_fg, but returns nullopt as soon as an image grows past max_image_len.
std::optional<FreeGroupEndo> power_fg_bounded(const FreeGroupEndo& theta, std::size_t n,
                                              std::size_t max_image_len);

// Images are single letters and the induced map on the involutive alphabet is
// a bijection.
bool is_letter_permutation(const FreeGroupEndo& theta);

// Folded inverse automaton with base vertex 0. Vertices are numbered by a
// breadth-first search from the base in letter order, so isomorphic graphs
// compare equal.
class StallingsGraph {
 public:
  StallingsGraph();

  struct Edge {
    std::size_t from;
    Letter label;
    std::size_t to;
  };
  // Builds a graph from directed edges (each also readable backwards) and
  // renumbers it canonically from `base`. Throws PreconditionError unless the
  // result is folded and connected.
  static StallingsGraph from_edges(std::size_t vertex_count, std::size_t base,
                                   std::span<const Edge> edges);

  std::size_t vertex_count() const { return out_.size(); }
  std::size_t base() const { return 0; }
  std::optional<std::size_t> target(std::size_t vertex, Letter l) const;
  // Sorted (letter, target) pairs leaving `vertex`, both orientations.
  const std::vector<std::pair<Letter, std::size_t>>& edges(std::size_t vertex) const {
    return out_[vertex];
  }
  // Undirected edge count: each inverse pair counts once.
  std::size_t edge_count() const;
  // End vertex of the path labelled w from the base, if it stays defined.
  std::optional<std::size_t> read(std::span<const Letter> w) const;

  bool operator==(const StallingsGraph&) const = default;

 private:
  std::vector<std::vector<std::pair<Letter, std::size_t>>> out_;
};

StallingsGraph stallings_from_generators(std::span<const ReducedWord> generators);
bool subgroup_membership(const StallingsGraph& g, const ReducedWord& w);
std::size_t rank(const StallingsGraph& g);

// Injective iff the image subgroup has rank equal to the number of generators
// (free groups of finite rank are Hopfian).
bool is_injective(const FreeGroupEndo& theta);

// All reduced w with |w| <= max_len and apply_fg(theta, w) = w.
std::vector<ReducedWord> fixed_words_bounded(const FreeGroupEndo& theta, std::size_t max_len);

// The subgroup generated by fixed_words_bounded: contained in Fix(theta) and
// equal to it when the bound suffices. `exact` is set only when a certificate
// proves equality (letter permutations, whose fixed subgroup is generated by
// the fixed generators).
struct BoundedSubgroup {
  StallingsGraph graph;
  std::size_t max_len = 0;
  bool exact = false;
};
BoundedSubgroup fix_basis_bounded(const FreeGroupEndo& theta, std::size_t max_len);

enum class CurlStatus { Exact, LowerBoundOnly, Asserted };

struct CurlReport {
  std::size_t value = 1;
  CurlStatus status = CurlStatus::LowerBoundOnly;
  std::string evidence;

  // Exact, or asserted by the caller; both are accepted where a certified
  // curl is required.
  bool certified() const { return status != CurlStatus::LowerBoundOnly; }
};

std::string to_string(CurlStatus status);

// Order of a letter permutation. Throws PreconditionError otherwise.
CurlReport curl_permutation(const FreeGroupEndo& theta);

struct CurlBounds {
  std::size_t n_max = 6;
  std::size_t len_max = 8;
  // Orbits whose words grow past this length are treated as non-periodic.
  std::size_t length_cap = 128;
};

// Semi-decision: scans Fix(theta^(n!)) for n = 1..n_max on words of length at
// most len_max and returns the smallest N whose bounded fixed subgroup matches
// the stabilised one. Exact only for letter permutations or when theta^N is
// the identity.
CurlReport curl_bounded(const FreeGroupEndo& theta, const CurlBounds& bounds = {});

CurlReport assert_curl(std::size_t value, std::string reason);

// Period of w under theta (smallest p >= 1 with w theta^p = w), searched for at
// most max_steps steps while every iterate stays within length_cap.
std::optional<std::size_t> fg_period(const FreeGroupEndo& theta, const ReducedWord& w,
                                     std::size_t max_steps, std::size_t length_cap);

std::string to_dot(const StallingsGraph& g, const Alphabet& alphabet);

}  // namespace fim
