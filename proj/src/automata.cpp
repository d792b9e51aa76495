#include "fim/automata.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace fim {

std::uint32_t Nfa::add_state(bool accepting) {
  accepting_.push_back(accepting);
  return static_cast<std::uint32_t>(accepting_.size() - 1);
}

void Nfa::set_accepting(std::uint32_t state, bool accepting) { accepting_.at(state) = accepting; }

void Nfa::add_transition(std::uint32_t from, std::optional<Letter> label, std::uint32_t to) {
  transitions_.push_back(Transition{from, label, to});
}

bool Nfa::has_epsilon() const {
  return std::any_of(transitions_.begin(), transitions_.end(),
                     [](const Transition& t) { return !t.label.has_value(); });
}

std::vector<std::uint32_t> Nfa::epsilon_closure(std::vector<std::uint32_t> states) const {
  std::vector<bool> seen(state_count(), false);
  for (auto s : states) seen[s] = true;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (const auto& t : transitions_) {
      if (t.from == states[i] && !t.label && !seen[t.to]) {
        seen[t.to] = true;
        states.push_back(t.to);
      }
    }
  }
  std::sort(states.begin(), states.end());
  return states;
}

bool Nfa::accepts(std::span<const Letter> w) const {
  if (state_count() == 0) return false;
  std::vector<std::uint32_t> current = epsilon_closure({initial_});
  for (Letter l : w) {
    std::vector<bool> next(state_count(), false);
    std::vector<std::uint32_t> next_list;
    for (const auto& t : transitions_) {
      if (t.label && *t.label == l && !next[t.to] &&
          std::binary_search(current.begin(), current.end(), t.from)) {
        next[t.to] = true;
        next_list.push_back(t.to);
      }
    }
    if (next_list.empty()) return false;
    current = epsilon_closure(std::move(next_list));
  }
  return std::any_of(current.begin(), current.end(),
                     [&](std::uint32_t s) { return accepting_[s]; });
}

Nfa Nfa::without_epsilon() const {
  if (!has_epsilon()) return *this;
  Nfa out;
  for (std::size_t s = 0; s < state_count(); ++s) out.add_state(false);
  out.set_initial(initial_);
  for (std::uint32_t s = 0; s < state_count(); ++s) {
    auto closure = epsilon_closure({s});
    for (auto c : closure) {
      if (accepting_[c]) out.set_accepting(s);
      for (const auto& t : transitions_) {
        if (t.from == c && t.label) out.add_transition(s, t.label, t.to);
      }
    }
  }
  return out;
}

bool Nfa::is_empty() const {
  if (state_count() == 0) return true;
  std::vector<bool> seen(state_count(), false);
  std::vector<std::uint32_t> stack{initial_};
  seen[initial_] = true;
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    if (accepting_[s]) return false;
    for (const auto& t : transitions_) {
      if (t.from == s && !seen[t.to]) {
        seen[t.to] = true;
        stack.push_back(t.to);
      }
    }
  }
  return true;
}

std::string to_dot(const Nfa& nfa, const Alphabet& alphabet) {
  std::ostringstream out;
  out << "digraph nfa {\n  rankdir=LR;\n  start [shape=point];\n";
  for (std::uint32_t s = 0; s < nfa.state_count(); ++s) {
    out << "  q" << s << " [shape=" << (nfa.is_accepting(s) ? "doublecircle" : "circle")
        << "];\n";
  }
  if (nfa.state_count() > 0) out << "  start -> q" << nfa.initial() << ";\n";
  for (const auto& t : nfa.transitions()) {
    out << "  q" << t.from << " -> q" << t.to << " [label=\""
        << (t.label ? std::string(1, alphabet.symbol(*t.label)) : std::string("eps"))
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_table(const Nfa& nfa, const Alphabet& alphabet) {
  std::ostringstream out;
  out << "states " << nfa.state_count() << "\n";
  out << "initial " << nfa.initial() << "\n";
  out << "accepting";
  for (std::uint32_t s = 0; s < nfa.state_count(); ++s) {
    if (nfa.is_accepting(s)) out << ' ' << s;
  }
  out << "\n";
  for (const auto& t : nfa.transitions()) {
    out << t.from << ' ' << (t.label ? std::string(1, alphabet.symbol(*t.label)) : "-") << ' '
        << t.to << "\n";
  }
  return out.str();
}

}  // namespace fim
