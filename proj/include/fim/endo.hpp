#pragma once

// Endomorphisms of the free inverse monoid and their dynamics on idempotents:
// orbits, stable letters, tiles, fixed points and generators of the periodic
// point submonoid.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fim/errors.hpp"
#include "fim/fgroup.hpp"
#include "fim/munn.hpp"
#include "fim/words.hpp"

namespace fim {

// Given by generator images; the image of a^-1 is the inverted image of a.
class MonoidEndo {
 public:
  explicit MonoidEndo(std::vector<Word> images);
  static MonoidEndo identity(std::size_t rank);

  std::size_t rank() const { return images_.size(); }
  const Word& image(std::uint32_t generator) const { return images_[generator]; }
  const Word& image(Letter l) const { return by_code_[l.code()]; }
  const std::vector<Word>& images() const { return images_; }
  // Indexed by letter code, as consumed by map_element.
  std::span<const Word> images_by_code() const { return by_code_; }

  bool operator==(const MonoidEndo& other) const { return images_ == other.images_; }

 private:
  std::vector<Word> images_;
  std::vector<Word> by_code_;
};

Word substitute(const MonoidEndo& phi, std::span<const Letter> w);
MunnElement apply(const MonoidEndo& phi, const MunnElement& x);
// x phi^n by iterating apply, without forming the power's images.
MunnElement apply_power(const MonoidEndo& phi, const MunnElement& x, std::size_t n);
FreeGroupEndo induced_fg(const MonoidEndo& phi);

// first, then second.
MonoidEndo compose(const MonoidEndo& first, const MonoidEndo& second);
// Throws ResourceError when the images would exceed max_total letters.
inline constexpr std::size_t kMaxPowerLetters = std::size_t{1} << 22;
MonoidEndo power(const MonoidEndo& phi, std::size_t n, std::size_t max_total = kMaxPowerLetters);

struct OrbitCutoffs {
  std::size_t max_steps = 4096;
  std::size_t max_norm = 4096;
  std::size_t max_vertices = std::size_t{1} << 16;  // per orbit element
  std::size_t max_total_vertices = std::size_t{1} << 22;  // summed over the stored orbit
};

enum class Stability {
  Stable,
  // The orbit is proved infinite: some vertex has an unbounded image under
  // the abelianised induced endomorphism.
  UnstableCertified,
  // A cutoff fired; nothing is claimed.
  UnstableWithinBound
};
std::string to_string(Stability s);

struct OrbitRecord {
  std::vector<MunnElement> elements;  // e, e phi, ... pairwise distinct
  std::size_t entry_index = 0;        // last element maps to elements[entry_index]
  Stability status = Stability::UnstableWithinBound;
  std::size_t steps = 0;
  std::size_t max_norm = 0;

  bool stable() const { return status == Stability::Stable; }
  bool decided() const { return status != Stability::UnstableWithinBound; }
  std::size_t period() const { return elements.size(); }
  std::size_t cycle_length() const { return elements.size() - entry_index; }
  // Index of e phi^n within elements. Stable orbits only.
  std::size_t position(std::size_t n) const;
};

// Thrown where a certified stable orbit was required.
class UnstableOrbitError : public PreconditionError {
 public:
  UnstableOrbitError(const std::string& what, OrbitRecord record)
      : PreconditionError(what), record_(std::move(record)) {}
  const OrbitRecord& record() const { return record_; }

 private:
  OrbitRecord record_;
};

// Throws PreconditionError unless e is idempotent.
OrbitRecord idempotent_orbit(const MonoidEndo& phi, const MunnElement& e,
                             const OrbitCutoffs& cutoffs = {});

// Certificate used by idempotent_orbit: true when the abelianised orbit of w
// under theta is provably infinite, false when provably finite, nullopt for
// ranks above 6.
std::optional<bool> abelian_orbit_infinite(const FreeGroupEndo& theta, const ReducedWord& w);

// Product of the orbit of e. Throws UnstableOrbitError unless stable.
MunnElement kappa(const MonoidEndo& phi, const MunnElement& e, const OrbitCutoffs& cutoffs = {});
MunnElement kappa(const OrbitRecord& orbit);

// Orbit of aa^-1 for every letter a, indexed by letter code.
struct LetterDynamics {
  std::vector<OrbitRecord> orbits;

  const OrbitRecord& of(Letter l) const { return orbits[l.code()]; }
  bool decided() const;
  std::vector<Letter> stable() const;
  std::size_t max_tail() const;
  std::size_t cycle_lcm() const;
};
LetterDynamics stable_letters(const MonoidEndo& phi, const OrbitCutoffs& cutoffs = {});

struct Tile {
  Letter letter;
  MunnElement element;
};

struct TileReport {
  std::size_t power = 1;  // tiles of phi^power
  std::vector<Tile> verified_fixed;
  std::vector<Tile> violations;
  bool decided = true;  // every letter's stability is settled

  std::vector<Tile> tiles() const;
};

TileReport tiles(const MonoidEndo& phi, const OrbitCutoffs& cutoffs = {});
// Tiles of phi^m, with orbits under phi^m read off the phi-orbits. Each tile is
// verified by applying phi m times.
TileReport tiles_of_power(const MonoidEndo& phi, std::size_t m, const LetterDynamics& dynamics);

bool is_fixed(const MonoidEndo& phi, const MunnElement& x);
// x x^-1 fixed and the root fixed by the induced free group endomorphism.
bool fixed_check_permv(const MonoidEndo& phi, const MunnElement& x);

// Tiles t_i for the letters of canonical_word(x), when all are stable and the
// product recovers x.
std::optional<std::vector<MunnElement>> tile_factorization(const MonoidEndo& phi,
                                                           const MunnElement& x,
                                                           const LetterDynamics& dynamics);

enum class FixCertificate { Complete, SoundPossiblyIncomplete };
std::string to_string(FixCertificate c);

struct FixGenerators {
  std::vector<MunnElement> generators;
  FixCertificate certificate = FixCertificate::SoundPossiblyIncomplete;
  std::string note;
};
FixGenerators fix_generators(const MonoidEndo& phi, const CurlReport& curl,
                             const OrbitCutoffs& cutoffs = {});

struct PerGenerators {
  std::vector<MunnElement> generators;  // sorted by CanonicalLess
  bool complete = false;
  std::size_t curl = 1;
  std::size_t iterations = 0;  // values of k examined
  // lcm of the generators' periods under phi, so Per = Fix(phi^m) when complete.
  std::size_t m = 1;
  std::string note;
};
PerGenerators per_generators(const MonoidEndo& phi, const CurlReport& curl,
                             const OrbitCutoffs& cutoffs = {});

enum class Verdict { Finite, Infinite, Unknown };
std::string to_string(Verdict v);

struct FixInfiniteReport {
  Verdict verdict = Verdict::Unknown;
  PerGenerators per;
  std::optional<MunnElement> witness;  // a non-idempotent periodic point
  std::string note;
};
FixInfiniteReport is_fix_infinite(const MonoidEndo& phi, const CurlReport& curl,
                                  const OrbitCutoffs& cutoffs = {});

// Submonoid generated by `generators`, restricted to elements with at most
// max_vertices vertices. Complete because vertex count never drops under
// multiplication.
std::vector<MunnElement> submonoid_ball(std::span<const MunnElement> generators,
                                        std::size_t max_vertices);

std::vector<MunnElement> fix_enumerate(const MonoidEndo& phi, const Alphabet& alphabet,
                                       std::size_t max_vertices, std::size_t threads = 1);

// Endomorphism spec files:
//   alphabet: a b
//   a -> b B a
//   b -> 1        # empty image
struct EndoSpec {
  Alphabet alphabet;
  MonoidEndo endo;
};
EndoSpec parse_endo_spec(std::string_view text);
EndoSpec load_endo_spec(const std::string& path);
std::string format_endo_spec(const EndoSpec& spec);

std::string orbit_to_json(const OrbitRecord& orbit, const Alphabet& alphabet);
std::string orbit_to_dot(const OrbitRecord& orbit, const Alphabet& alphabet);

}  // namespace fim
