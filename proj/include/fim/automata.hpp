#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fim/words.hpp"

namespace fim {

struct Transition {
  std::uint32_t from = 0;
  std::optional<Letter> label;  // nullopt is an epsilon move
  std::uint32_t to = 0;

  bool operator==(const Transition&) const = default;
};

// Finite automaton over the involutive alphabet, optionally with epsilon moves.
class Nfa {
 public:
  Nfa() = default;

  std::uint32_t add_state(bool accepting = false);
  void set_initial(std::uint32_t state) { initial_ = state; }
  void set_accepting(std::uint32_t state, bool accepting = true);
  void add_transition(std::uint32_t from, std::optional<Letter> label, std::uint32_t to);

  std::size_t state_count() const { return accepting_.size(); }
  std::uint32_t initial() const { return initial_; }
  bool is_accepting(std::uint32_t state) const { return accepting_[state]; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  bool has_epsilon() const;

  bool accepts(std::span<const Letter> w) const;

  // Language-equivalent automaton with no epsilon moves.
  Nfa without_epsilon() const;

  // True when no accepting state is reachable.
  bool is_empty() const;

 private:
  std::vector<std::uint32_t> epsilon_closure(std::vector<std::uint32_t> states) const;

  std::uint32_t initial_ = 0;
  std::vector<bool> accepting_;
  std::vector<Transition> transitions_;
};

std::string to_dot(const Nfa& nfa, const Alphabet& alphabet);

// One line per transition, "from symbol to" with "-" for epsilon, preceded by
// "initial" and "accepting" lines.
std::string to_table(const Nfa& nfa, const Alphabet& alphabet);

}  // namespace fim
