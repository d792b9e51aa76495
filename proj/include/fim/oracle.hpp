#pragma once

// Deliberately naive reimplementations used only to cross-check the library.
// Words are plain strings (lowercase generator, uppercase inverse) and Munn
// trees are sets of such strings; nothing here calls the algorithms it checks.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fim::oracle {

std::string reduce_text(std::string_view w);
std::string invert_text(std::string_view w);

// Vertex set and endpoint of the walk w in the Cayley tree.
struct Trace {
  std::set<std::string> vertices;
  std::string root;

  bool operator==(const Trace&) const = default;
};

Trace trace(std::string_view w);
Trace multiply(const Trace& x, const Trace& y);
// x <= y in the natural order.
bool leq(const Trace& x, const Trace& y);

// Letter substitution given images of the lowercase generators.
std::string substitute(const std::map<char, std::string>& images, std::string_view w);
// Trace-level fixed-point test: trace(substitute(canonical)) == trace.
bool is_fixed(const std::map<char, std::string>& images, std::string_view representative);

// Membership of a reduced word in the subgroup generated by gens, by closing
// products of at most max_factors generators and inverses.
bool subgroup_member(const std::vector<std::string>& gens, std::string_view w,
                     std::size_t max_factors);

// A grammar as rules over single-character terminals (lowercase/uppercase)
// and nonterminals given by index. No epsilon rules.
struct NaiveGrammar {
  struct Item {
    bool terminal;
    char letter;
    std::size_t nonterminal;
  };
  std::size_t start = 0;
  std::vector<std::pair<std::size_t, std::vector<Item>>> rules;
};

// Every terminal word of length <= max_len, by exploring sentential forms.
std::set<std::string> language_up_to(const NaiveGrammar& g, std::size_t max_len);

}  // namespace fim::oracle
