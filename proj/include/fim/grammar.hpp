#pragma once

// Context-free grammars over an involutive alphabet: construction, export,
// normalisation to Chomsky normal form, tabular recognition, emptiness,
// finiteness, and intersection with finite automata.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "fim/automata.hpp"
#include "fim/words.hpp"

namespace fim {

struct Symbol {
  bool terminal = false;
  std::uint32_t id = 0;  // letter code for terminals, nonterminal index otherwise

  static Symbol t(Letter l) { return {true, l.code()}; }
  static Symbol n(std::uint32_t nonterminal) { return {false, nonterminal}; }

  auto operator<=>(const Symbol&) const = default;
};

struct Production {
  std::uint32_t lhs = 0;
  std::vector<Symbol> body;  // empty body is an epsilon production

  bool operator==(const Production&) const = default;
};

class Cfg {
 public:
  // Terminals are letters over the involutive alphabet of this rank.
  explicit Cfg(std::size_t rank);

  std::uint32_t add_nonterminal(std::string name);
  void add_production(std::uint32_t lhs, std::vector<Symbol> body);
  void set_start(std::uint32_t start);

  std::size_t rank() const { return rank_; }
  std::size_t nonterminal_count() const { return names_.size(); }
  const std::string& name(std::uint32_t nonterminal) const { return names_[nonterminal]; }
  std::uint32_t start() const { return start_; }
  const std::vector<Production>& productions() const { return productions_; }

 private:
  std::size_t rank_;
  std::vector<std::string> names_;
  std::vector<Production> productions_;
  std::uint32_t start_ = 0;
};

// Chomsky normal form with an optional epsilon rule for the start symbol,
// which occurs in no body. Useless nonterminals are removed.
struct CnfGrammar {
  std::size_t rank = 0;
  std::vector<std::string> names;
  std::uint32_t start = 0;
  bool accepts_empty = false;
  bool start_productive = false;  // some nonempty word is generated
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> binary;  // A -> B C
  std::vector<std::pair<std::uint32_t, Letter>> unary;                          // A -> x
};

CnfGrammar to_cnf(const Cfg& g);

// Built once per grammar; queries are then independent and thread-safe.
class CfgRecognizer {
 public:
  explicit CfgRecognizer(const Cfg& g);
  explicit CfgRecognizer(CnfGrammar cnf);

  bool accepts(std::span<const Letter> w) const;
  const CnfGrammar& cnf() const { return cnf_; }

 private:
  void index();

  CnfGrammar cnf_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> by_left_;  // B -> (C, A)
  std::vector<std::vector<std::uint32_t>> by_letter_;                          // code -> A
};

bool cfg_membership(const Cfg& g, std::span<const Letter> w);
bool cfg_is_empty(const Cfg& g);
bool cfg_is_finite(const Cfg& g);

// Bar-Hillel triple construction. L(result) = L(g) intersected with L(m).
Cfg intersect_cfg_nfa(const Cfg& g, const Nfa& m);

// Productions of the start symbol first, then the rest in insertion order, one
// per line as `N_p -> D a N_q`; an empty body is written `1`.
std::string to_text(const Cfg& g, const Alphabet& alphabet);

}  // namespace fim
