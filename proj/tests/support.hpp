#pragma once

#include <string>
#include <string_view>

#include "fim/endo.hpp"
#include "fim/munn.hpp"
#include "fim/words.hpp"

namespace fim::test {

inline const Alphabet& ab() {
  static const Alphabet a(2);
  return a;
}

inline Word w(std::string_view s, const Alphabet& a = ab()) { return parse_word(s, a); }
inline ReducedWord rw(std::string_view s, const Alphabet& a = ab()) { return parse_reduced(s, a); }
inline MunnElement m(std::string_view s, const Alphabet& a = ab()) { return from_word(w(s, a)); }
inline std::string str(std::span<const Letter> x, const Alphabet& a = ab()) { return format_word(x, a); }
inline std::string str(const ReducedWord& x, const Alphabet& a = ab()) { return format_word(x, a); }
inline std::string canon(const MunnElement& x, const Alphabet& a = ab()) {
  return format_word(canonical_word(x), a);
}

inline MonoidEndo endo(std::string_view text) { return parse_endo_spec(text).endo; }
inline MonoidEndo swap_endo() { return endo("alphabet: a b\na -> b\nb -> a\n"); }
inline MonoidEndo double_endo() { return endo("alphabet: a\na -> a a\n"); }
inline MonoidEndo aba_endo() { return endo("alphabet: a b\na -> a\nb -> a b a\n"); }
inline MonoidEndo gap_endo() { return endo("alphabet: a b\na -> a\nb -> b B\n"); }

}  // namespace fim::test
