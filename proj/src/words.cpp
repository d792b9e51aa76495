#include "fim/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "fim/errors.hpp"

namespace fim {

ReducedWord ReducedWord::from_letters(Word letters) {
  if (!is_reduced(letters)) {
    throw PreconditionError("word is not freely reduced");
  }
  ReducedWord r;
  r.letters_ = std::move(letters);
  return r;
}

Alphabet::Alphabet(std::size_t size) {
  if (size == 0 || size > 26) {
    throw PreconditionError("alphabet size must be between 1 and 26");
  }
  for (std::size_t i = 0; i < size; ++i) {
    names_.push_back(static_cast<char>('a' + i));
  }
}

Alphabet::Alphabet(std::vector<char> names) : names_(std::move(names)) {
  if (names_.empty()) throw PreconditionError("alphabet must not be empty");
  std::set<char> seen;
  for (char c : names_) {
    if (c < 'a' || c > 'z') {
      throw PreconditionError(std::string("generator name must be a lowercase letter: '") +
                              c + "'");
    }
    if (!seen.insert(c).second) {
      throw PreconditionError(std::string("duplicate generator name '") + c + "'");
    }
  }
}

char Alphabet::symbol(Letter l) const {
  char c = names_.at(l.generator());
  return l.is_inverse() ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
}

std::optional<Letter> Alphabet::letter_for(char c) const {
  bool inverse = std::isupper(static_cast<unsigned char>(c)) != 0;
  char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto it = std::find(names_.begin(), names_.end(), lower);
  if (it == names_.end()) return std::nullopt;
  return Letter(static_cast<std::uint32_t>(it - names_.begin()), inverse);
}

std::vector<Letter> Alphabet::letters() const {
  std::vector<Letter> out;
  for (std::uint32_t c = 0; c < 2 * names_.size(); ++c) out.push_back(Letter::from_code(c));
  return out;
}

Word invert_word(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

ReducedWord invert(const ReducedWord& w) {
  return ReducedWord::from_letters(invert_word(w.letters()));
}

bool is_reduced(std::span<const Letter> w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == w[i - 1].inverse()) return false;
  }
  return true;
}

ReducedWord reduce(std::span<const Letter> w) {
  Word stack;
  stack.reserve(w.size());
  for (Letter l : w) {
    if (!stack.empty() && stack.back() == l.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return ReducedWord(std::move(stack));
}

ReducedWord multiply_reduced(const ReducedWord& u, const ReducedWord& v) {
  std::size_t cancel = 0;
  while (cancel < u.size() && cancel < v.size() &&
         u[u.size() - 1 - cancel] == v[cancel].inverse()) {
    ++cancel;
  }
  Word out(u.begin(), u.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), v.begin() + static_cast<std::ptrdiff_t>(cancel), v.end());
  return reduce(out);
}

Word concat(std::span<const Letter> u, std::span<const Letter> v) {
  Word out(u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

ReducedWord longest_common_prefix(const ReducedWord& u, const ReducedWord& v) {
  std::size_t n = 0;
  while (n < u.size() && n < v.size() && u[n] == v[n]) ++n;
  return reduce(std::span<const Letter>(u.letters()).first(n));
}

std::strong_ordering PrefixDistance::operator<=>(const PrefixDistance& other) const {
  if (is_zero || other.is_zero) {
    return (is_zero ? 0 : 1) <=> (other.is_zero ? 0 : 1);
  }
  // 2^-e is smaller for larger e.
  return other.exponent <=> exponent;
}

PrefixDistance prefix_distance(const ReducedWord& u, const ReducedWord& v) {
  if (u == v) return PrefixDistance{true, 0};
  return PrefixDistance{false, longest_common_prefix(u, v).size()};
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  Word out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    auto letter = alphabet.letter_for(c);
    if (!letter) {
      throw ParseError("unknown symbol '" + std::string(1, c) + "' at position " +
                           std::to_string(i),
                       i);
    }
    out.push_back(*letter);
  }
  return out;
}

ReducedWord parse_reduced(std::string_view text, const Alphabet& alphabet) {
  return reduce(parse_word(text, alphabet));
}

std::string format_word(std::span<const Letter> w, const Alphabet& alphabet) {
  std::string out;
  out.reserve(w.size());
  for (Letter l : w) out.push_back(alphabet.symbol(l));
  return out;
}

std::string format_word(const ReducedWord& w, const Alphabet& alphabet) {
  return format_word(w.letters(), alphabet);
}

std::string display_word(std::span<const Letter> w, const Alphabet& alphabet) {
  return w.empty() ? std::string("1") : format_word(w, alphabet);
}

std::string display_word(const ReducedWord& w, const Alphabet& alphabet) {
  return display_word(w.letters(), alphabet);
}

namespace {

void extend_words(std::size_t rank, std::size_t remaining, bool reduced_only, Word& current,
                  const std::function<void(const Word&)>& fn) {
  if (remaining == 0) {
    fn(current);
    return;
  }
  for (std::uint32_t c = 0; c < 2 * rank; ++c) {
    Letter l = Letter::from_code(c);
    if (reduced_only && !current.empty() && current.back() == l.inverse()) continue;
    current.push_back(l);
    extend_words(rank, remaining - 1, reduced_only, current, fn);
    current.pop_back();
  }
}

}  // namespace

void for_each_word(std::size_t rank, std::size_t max_len,
                   const std::function<void(const Word&)>& fn) {
  Word current;
  for (std::size_t len = 0; len <= max_len; ++len) {
    extend_words(rank, len, false, current, fn);
  }
}

void for_each_reduced_word(std::size_t rank, std::size_t max_len,
                           const std::function<void(const ReducedWord&)>& fn) {
  Word current;
  for (std::size_t len = 0; len <= max_len; ++len) {
    extend_words(rank, len, true, current,
                 [&](const Word& w) { fn(ReducedWord::from_letters(w)); });
  }
}

std::size_t hash_letters(std::span<const Letter> w, std::size_t seed) {
  // FNV-1a over letter codes.
  std::size_t h = 1469598103934665603ull ^ seed;
  for (Letter l : w) {
    h ^= l.code() + 1;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace fim
