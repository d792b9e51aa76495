#pragma once

// Languages over the involutive alphabet whose images describe submonoids of
// the free inverse monoid: Dyck and subgroup-preimage grammars, radical
// grammars, the rationality test for radicals, and the constructive
// context-sensitive description of fixed points.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fim/automata.hpp"
#include "fim/endo.hpp"
#include "fim/fgroup.hpp"
#include "fim/grammar.hpp"
#include "fim/munn.hpp"

namespace fim {

// D -> 1 | D x D X D for every letter x. Generates the words reducing to 1.
Cfg dyck_grammar(const Alphabet& alphabet);

// Words whose reduced form labels a closed path at the base of g: a
// nonterminal per vertex reading towards the base, plus the Dyck symbol.
Cfg subgroup_preimage_grammar(const StallingsGraph& g, const Alphabet& alphabet);

// (union of canonical words of the tiles of phi^n)*. Its image is Fix(phi^n)
// provided every tile is fixed and the curl of the induced endomorphism
// divides n. Throws PreconditionError otherwise.
Nfa fix_power_language(const MonoidEndo& phi, std::size_t n, const TileReport& tiles,
                       const CurlReport& curl);

struct RadOptions {
  std::size_t n = 0;            // 0 means the curl value
  std::size_t fix_len_max = 8;  // bound for the fixed subgroup of the induced map
  OrbitCutoffs cutoffs;
};

struct RadGrammar {
  Cfg grammar{1};
  std::size_t n = 1;
  BoundedSubgroup h;  // fixed subgroup of the induced map, with its bound
  TileReport tiles;
  Nfa language;
  std::string caveat;  // empty when nothing is only boundedly certified
};

// Preimage grammar of H intersected with the fixed-point language of phi^n.
RadGrammar rad_grammar(const MonoidEndo& phi, const CurlReport& curl, const RadOptions& options = {});

// x fixed by phi^n with root fixed by the induced map.
bool rad_membership_direct(const MonoidEndo& phi, std::size_t n, const MunnElement& x);

// kappa(x x^-1) x, a fixed point of phi. Throws PreconditionError when x is not
// in the n-th radical and UnstableOrbitError when x x^-1 is not stable.
MunnElement radical_to_fix(const MonoidEndo& phi, std::size_t n, const MunnElement& x,
                           const OrbitCutoffs& cutoffs = {});

// The base alphabet and copies 1..copies of it. Copy i of generator g has
// generator index i * base_rank + g; copy 0 is the base.
class TrackedAlphabet {
 public:
  TrackedAlphabet(std::size_t base_rank, std::size_t copies);

  std::size_t base_rank() const { return base_rank_; }
  std::size_t copies() const { return copies_; }
  std::size_t rank() const { return base_rank_ * (copies_ + 1); }
  Letter copy(Letter l, std::size_t i) const;
  std::size_t copy_index(Letter l) const { return l.generator() / base_rank_; }
  Letter base(Letter l) const;

 private:
  std::size_t base_rank_;
  std::size_t copies_;
};

// Matched letter-to-word homomorphism; generators outside the domain have
// no image.
class LetterHom {
 public:
  LetterHom(std::size_t source_rank, std::size_t target_rank);

  void set(std::uint32_t generator, Word image);
  bool defined(std::uint32_t generator) const { return images_[generator].has_value(); }
  const Word& image(std::uint32_t generator) const;
  Word apply(std::span<const Letter> w) const;
  bool epsilon_free() const;
  std::size_t source_rank() const { return images_.size(); }
  std::size_t target_rank() const { return target_rank_; }

 private:
  std::vector<std::optional<Word>> images_;
  std::size_t target_rank_;
};

struct ConsenConstruction {
  std::size_t m = 1;
  TrackedAlphabet tracked{1, 0};
  std::vector<std::vector<bool>> b;  // b[i][g]: generator g in B_i (index 0 unused)
  std::vector<LetterHom> beta;       // beta[i] for i = 1..m-1, index 0 unused
  std::vector<MonoidEndo> psi;       // psi[i] = phi^i at word level
  LetterHom gamma{1, 1};

  // u u^-1 (u beta_1)(u^-1 beta_1) ... (u beta_{m-1})(u^-1 beta_{m-1}) u
  Word tracked_word(std::span<const Letter> u) const;
  Word image(std::span<const Letter> u) const { return gamma.apply(tracked_word(u)); }
};

// Throws PreconditionError if gamma is not epsilon-free.
ConsenConstruction consen_construction(const MonoidEndo& phi, std::size_t m);

struct ConsenEnumeration {
  std::size_t max_len = 0;
  std::size_t words_accepted = 0;
  std::vector<Word> images;  // one per accepted u, shortest u first
};

// Runs the construction over every u with |u| <= max_len accepted by `c`.
ConsenEnumeration consen_language(const ConsenConstruction& construction, const Cfg& c,
                                  std::size_t max_len);

enum class Rationality { Rational, NotRational, Unknown };
std::string to_string(Rationality r);

struct RationalityReport {
  Rationality verdict = Rationality::Unknown;
  bool hypothesis_bounded = false;  // trivial fixed subgroup holds only up to the bound
  bool language_finite = false;
  std::string note;
};

// Radicals with trivial fixed subgroup of the induced map are rational exactly
// when finite. Unknown when the gate fails or certifications are missing.
RationalityReport rad_is_rational(const MonoidEndo& phi, const CurlReport& curl,
                                  const RadOptions& options = {});

}  // namespace fim
