#include "fim/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace fim::oracle {

namespace {

char flip(char c) {
  return std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c))
                                                      : static_cast<char>(std::tolower(c));
}

}  // namespace

std::string reduce_text(std::string_view w) {
  std::string out;
  for (char c : w) {
    if (!out.empty() && out.back() == flip(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string invert_text(std::string_view w) {
  std::string out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(flip(*it));
  return out;
}

Trace trace(std::string_view w) {
  Trace t;
  t.vertices.insert("");
  std::string current;
  for (char c : w) {
    current = reduce_text(current + c);
    t.vertices.insert(current);
  }
  t.root = current;
  return t;
}

Trace multiply(const Trace& x, const Trace& y) {
  Trace t = x;
  for (const auto& v : y.vertices) t.vertices.insert(reduce_text(x.root + v));
  t.root = reduce_text(x.root + y.root);
  return t;
}

bool leq(const Trace& x, const Trace& y) {
  return x.root == y.root &&
         std::includes(x.vertices.begin(), x.vertices.end(), y.vertices.begin(), y.vertices.end());
}

std::string substitute(const std::map<char, std::string>& images, std::string_view w) {
  std::string out;
  for (char c : w) {
    if (std::islower(static_cast<unsigned char>(c))) {
      out += images.at(c);
    } else {
      out += invert_text(images.at(flip(c)));
    }
  }
  return out;
}

bool is_fixed(const std::map<char, std::string>& images, std::string_view representative) {
  return trace(substitute(images, representative)) == trace(representative);
}

bool subgroup_member(const std::vector<std::string>& gens, std::string_view w,
                     std::size_t max_factors) {
  const std::string target = reduce_text(w);
  std::vector<std::string> moves;
  for (const auto& g : gens) {
    moves.push_back(reduce_text(g));
    moves.push_back(invert_text(reduce_text(g)));
  }
  std::set<std::string> seen{""};
  std::vector<std::string> level{""};
  if (target.empty()) return true;
  for (std::size_t step = 0; step < max_factors; ++step) {
    std::vector<std::string> next;
    for (const auto& x : level) {
      for (const auto& m : moves) {
        auto y = reduce_text(x + m);
        if (y == target) return true;
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    level = std::move(next);
  }
  return false;
}

std::set<std::string> language_up_to(const NaiveGrammar& g, std::size_t max_len) {
  // Sentential forms as ints: a terminal is its char, a nonterminal is 256 + index.
  using Form = std::vector<int>;
  std::set<std::string> words;
  std::set<Form> seen;
  std::deque<Form> queue{Form{256 + static_cast<int>(g.start)}};
  seen.insert(queue.front());
  while (!queue.empty()) {
    Form f = queue.front();
    queue.pop_front();
    auto nt = std::find_if(f.begin(), f.end(), [](int s) { return s >= 256; });
    if (nt == f.end()) {
      words.insert(std::string(f.begin(), f.end()));
      continue;
    }
    const std::size_t pos = static_cast<std::size_t>(nt - f.begin());
    const std::size_t which = static_cast<std::size_t>(*nt - 256);
    for (const auto& [lhs, body] : g.rules) {
      if (lhs != which) continue;
      Form h(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(pos));
      for (const auto& item : body) {
        h.push_back(item.terminal ? item.letter : 256 + static_cast<int>(item.nonterminal));
      }
      h.insert(h.end(), f.begin() + static_cast<std::ptrdiff_t>(pos) + 1, f.end());
      if (h.size() > max_len) continue;
      if (seen.insert(h).second) queue.push_back(std::move(h));
    }
  }
  return words;
}

}  // namespace fim::oracle
