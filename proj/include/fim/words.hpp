#pragma once

// Involutive alphabets, words over them, free reduction and the prefix metric.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fim {

// A letter of the involutive alphabet: a generator or its formal inverse.
// Letters are ordered by code, so a < A < b < B < ...
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(std::uint32_t generator, bool inverse)
      : code_(generator * 2 + (inverse ? 1u : 0u)) {}

  static constexpr Letter from_code(std::uint32_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  constexpr std::uint32_t generator() const { return code_ >> 1; }
  constexpr bool is_inverse() const { return (code_ & 1u) != 0; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1u); }
  constexpr std::uint32_t code() const { return code_; }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint32_t code_ = 0;
};

using Word = std::vector<Letter>;

// A word with no adjacent cancelling pair. Only reduce() and the checked
// factory produce one, so the invariant holds for every instance.
class ReducedWord {
 public:
  ReducedWord() = default;

  // Throws PreconditionError if `letters` is not reduced.
  static ReducedWord from_letters(Word letters);

  const Word& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  // Lexicographic comparison on letter codes.
  auto operator<=>(const ReducedWord&) const = default;

 private:
  friend ReducedWord reduce(std::span<const Letter> w);
  explicit ReducedWord(Word letters) : letters_(std::move(letters)) {}
  Word letters_;
};

// (length, lexicographic) order, the canonical vertex order of Munn trees.
struct ShortLex {
  bool operator()(const ReducedWord& u, const ReducedWord& v) const {
    if (u.size() != v.size()) return u.size() < v.size();
    return u < v;
  }
};

// Generators printed as lowercase names, inverses as the uppercase name.
class Alphabet {
 public:
  // Default names a, b, c, ...
  explicit Alphabet(std::size_t size);
  explicit Alphabet(std::vector<char> names);

  std::size_t size() const { return names_.size(); }
  char name(std::uint32_t generator) const { return names_[generator]; }
  char symbol(Letter l) const;
  std::optional<Letter> letter_for(char c) const;
  const std::vector<char>& names() const { return names_; }

  // Every letter of the involutive alphabet, in code order.
  std::vector<Letter> letters() const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<char> names_;
};

Word invert_word(std::span<const Letter> w);
ReducedWord invert(const ReducedWord& w);

bool is_reduced(std::span<const Letter> w);
ReducedWord reduce(std::span<const Letter> w);
inline ReducedWord reduce(const ReducedWord& w) { return w; }

// Product in the free group: reduce(u v).
ReducedWord multiply_reduced(const ReducedWord& u, const ReducedWord& v);

Word concat(std::span<const Letter> u, std::span<const Letter> v);

ReducedWord longest_common_prefix(const ReducedWord& u, const ReducedWord& v);

// d(u, v) = 0 if u = v and 2^-|u^v| otherwise, kept as an exact exponent.
struct PrefixDistance {
  bool is_zero = true;
  std::size_t exponent = 0;  // value is 2^-exponent when !is_zero

  bool operator==(const PrefixDistance&) const = default;
  std::strong_ordering operator<=>(const PrefixDistance& other) const;
};

PrefixDistance prefix_distance(const ReducedWord& u, const ReducedWord& v);

// Lowercase letters are generators, uppercase their inverses; whitespace is
// ignored. Throws ParseError naming the offending character and position.
Word parse_word(std::string_view text, const Alphabet& alphabet);
ReducedWord parse_reduced(std::string_view text, const Alphabet& alphabet);

std::string format_word(std::span<const Letter> w, const Alphabet& alphabet);
std::string format_word(const ReducedWord& w, const Alphabet& alphabet);
// As format_word, but the empty word is shown as "1".
std::string display_word(std::span<const Letter> w, const Alphabet& alphabet);
std::string display_word(const ReducedWord& w, const Alphabet& alphabet);

// Calls fn on every word over the involutive alphabet of the given rank with
// length <= max_len, shortest first and lexicographic within a length.
void for_each_word(std::size_t rank, std::size_t max_len,
                   const std::function<void(const Word&)>& fn);

// As for_each_word, restricted to reduced words.
void for_each_reduced_word(std::size_t rank, std::size_t max_len,
                           const std::function<void(const ReducedWord&)>& fn);

std::size_t hash_letters(std::span<const Letter> w, std::size_t seed = 0);

}  // namespace fim

template <>
struct std::hash<fim::ReducedWord> {
  std::size_t operator()(const fim::ReducedWord& w) const noexcept {
    return fim::hash_letters(w.letters());
  }
};
