#include "fim/munn.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "fim/errors.hpp"
#include "json.hpp"

namespace fim {

// Mutable subtree of the Cayley tree rooted at the vertex 1 (node 0). Nodes are
// created on demand by walking; finish() renumbers them canonically.
class TreeBuilder {
 public:
  TreeBuilder() : parent_{0}, label_{Letter{}}, children_(1) {}

  std::uint32_t step(std::uint32_t node, Letter l) {
    if (node != 0 && label_[node].inverse() == l) return parent_[node];
    for (const auto& [cl, c] : children_[node]) {
      if (cl == l) return c;
    }
    auto fresh = static_cast<std::uint32_t>(parent_.size());
    parent_.push_back(node);
    label_.push_back(l);
    children_.emplace_back();
    children_[node].emplace_back(l, fresh);
    return fresh;
  }

  std::uint32_t walk(std::uint32_t node, std::span<const Letter> w) {
    for (Letter l : w) node = step(node, l);
    return node;
  }

  // Copies the tree of x into the builder so that x's node `start` lands on
  // builder node `at`. Returns the builder node of every node of x.
  std::vector<std::uint32_t> graft(std::uint32_t at, const MunnElement& x, std::size_t start) {
    constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> map(x.vertex_count(), kUnset);
    std::vector<std::size_t> stack{start};
    map[start] = at;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      auto visit = [&](std::size_t v, Letter l) {
        if (map[v] != kUnset) return;
        map[v] = step(map[u], l);
        stack.push_back(v);
      };
      if (u != 0) visit(x.parent_[u], x.label_[u].inverse());
      for (auto c = x.child_begin_[u]; c < x.child_begin_[u + 1]; ++c) visit(c, x.label_[c]);
    }
    return map;
  }

  MunnElement finish(std::uint32_t root) {
    MunnElement out;
    const std::size_t n = parent_.size();
    std::vector<std::uint32_t> renumber(n, 0);
    std::vector<std::uint32_t> order{0};
    order.reserve(n);
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto& kids = children_[order[i]];
      std::sort(kids.begin(), kids.end());
      for (const auto& kid : kids) {
        renumber[kid.second] = static_cast<std::uint32_t>(order.size());
        order.push_back(kid.second);
      }
    }
    out.parent_.assign(n, 0);
    out.label_.assign(n, Letter{});
    out.child_begin_.assign(n + 1, 0);
    std::vector<std::uint32_t> child_count(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
      auto old = order[i];
      out.parent_[i] = renumber[parent_[old]];
      out.label_[i] = label_[old];
      ++child_count[out.parent_[i]];
    }
    std::uint32_t next = 1;
    for (std::size_t i = 0; i < n; ++i) {
      out.child_begin_[i] = next;
      next += child_count[i];
    }
    out.child_begin_[n] = next;
    out.root_ = renumber[root];
    return out;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<Letter> label_;
  std::vector<std::vector<std::pair<Letter, std::uint32_t>>> children_;
};

MunnElement::MunnElement() : parent_{0}, label_{Letter{}}, child_begin_{1, 1}, root_(0) {}

MunnElement MunnElement::from_vertices(std::vector<ReducedWord> vertices, const ReducedWord& root) {
  std::sort(vertices.begin(), vertices.end(), ShortLex{});
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (vertices.empty() || !vertices.front().empty()) {
    throw PreconditionError("vertex set must contain the empty word");
  }
  std::set<ReducedWord> present(vertices.begin(), vertices.end());
  if (!present.count(root)) throw PreconditionError("vertex set must contain the root");
  TreeBuilder builder;
  std::uint32_t root_node = 0;
  for (const auto& v : vertices) {
    if (!v.empty()) {
      Word prefix(v.begin(), v.end() - 1);
      if (!present.count(ReducedWord::from_letters(prefix))) {
        throw PreconditionError("vertex set is not prefix-closed");
      }
    }
    std::uint32_t node = builder.walk(0, v.letters());
    if (v == root) root_node = node;
  }
  return builder.finish(root_node);
}

std::vector<ReducedWord> MunnElement::vertices() const {
  std::vector<ReducedWord> out;
  out.reserve(vertex_count());
  std::vector<Word> words(vertex_count());
  for (std::size_t i = 0; i < vertex_count(); ++i) {
    if (i > 0) {
      words[i] = words[parent_[i]];
      words[i].push_back(label_[i]);
    }
    out.push_back(ReducedWord::from_letters(words[i]));
  }
  return out;
}

ReducedWord MunnElement::vertex(std::size_t node) const {
  Word w;
  while (node != 0) {
    w.push_back(label_[node]);
    node = parent_[node];
  }
  std::reverse(w.begin(), w.end());
  return ReducedWord::from_letters(std::move(w));
}

std::optional<std::size_t> MunnElement::child(std::size_t node, Letter l) const {
  for (auto c = child_begin_[node]; c < child_begin_[node + 1]; ++c) {
    if (label_[c] == l) return c;
  }
  return std::nullopt;
}

std::optional<std::size_t> MunnElement::step(std::size_t node, Letter l) const {
  if (node != 0 && label_[node].inverse() == l) return parent_[node];
  return child(node, l);
}

std::optional<std::size_t> MunnElement::find_vertex(std::span<const Letter> w) const {
  std::size_t node = 0;
  for (Letter l : w) {
    auto c = child(node, l);
    if (!c) return std::nullopt;
    node = *c;
  }
  return node;
}

std::size_t MunnElement::depth(std::size_t node) const {
  std::size_t d = 0;
  while (node != 0) {
    node = parent_[node];
    ++d;
  }
  return d;
}

std::size_t MunnElement::hash() const {
  std::size_t h = hash_letters(label_, root_);
  for (auto p : parent_) {
    h ^= p + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

MunnElement from_word(std::span<const Letter> w) {
  TreeBuilder builder;
  auto end = builder.walk(0, w);
  return builder.finish(end);
}

MunnElement multiply(const MunnElement& x, const MunnElement& y) {
  TreeBuilder builder;
  auto xmap = builder.graft(0, x, 0);
  auto ymap = builder.graft(xmap[x.root_node()], y, 0);
  return builder.finish(ymap[y.root_node()]);
}

MunnElement inverse(const MunnElement& x) {
  TreeBuilder builder;
  auto map = builder.graft(0, x, x.root_node());
  return builder.finish(map[0]);
}

bool canonical_less(const MunnElement& x, const MunnElement& y) {
  if (x.vertex_count() != y.vertex_count()) return x.vertex_count() < y.vertex_count();
  for (std::size_t i = 1; i < x.vertex_count(); ++i) {
    if (x.parent(i) != y.parent(i)) return x.parent(i) < y.parent(i);
    if (x.edge_label(i) != y.edge_label(i)) return x.edge_label(i) < y.edge_label(i);
  }
  return x.root_node() < y.root_node();
}

bool leq(const MunnElement& x, const MunnElement& y) {
  if (x.vertex_count() < y.vertex_count()) return false;
  std::vector<std::size_t> map(y.vertex_count(), 0);
  for (std::size_t i = 1; i < y.vertex_count(); ++i) {
    auto c = x.child(map[y.parent(i)], y.edge_label(i));
    if (!c) return false;
    map[i] = *c;
  }
  return map[y.root_node()] == x.root_node();
}

MunnElement map_element(const MunnElement& x, std::span<const Word> images_by_code) {
  TreeBuilder builder;
  std::vector<std::uint32_t> map(x.vertex_count(), 0);
  for (std::size_t i = 1; i < x.vertex_count(); ++i) {
    map[i] = builder.walk(map[x.parent(i)], images_by_code[x.edge_label(i).code()]);
  }
  return builder.finish(map[x.root_node()]);
}

std::vector<Letter> edge_letters(const MunnElement& x) {
  std::set<Letter> letters;
  for (std::size_t i = 1; i < x.vertex_count(); ++i) {
    letters.insert(x.edge_label(i));
    letters.insert(x.edge_label(i).inverse());
  }
  return {letters.begin(), letters.end()};
}

Nfa to_automaton(const MunnElement& x) {
  Nfa nfa;
  for (std::size_t i = 0; i < x.vertex_count(); ++i) nfa.add_state(i == x.root_node());
  nfa.set_initial(0);
  for (std::size_t i = 1; i < x.vertex_count(); ++i) {
    auto p = static_cast<std::uint32_t>(x.parent(i));
    auto c = static_cast<std::uint32_t>(i);
    nfa.add_transition(p, x.edge_label(i), c);
    nfa.add_transition(c, x.edge_label(i).inverse(), p);
  }
  return nfa;
}

Nfa preimage_automaton(const MunnElement& x, std::size_t guard) {
  const std::size_t n = x.vertex_count();
  if (n >= 48 || (std::size_t{1} << n) * n > guard) {
    throw ResourceError("preimage automaton for a tree with " + std::to_string(n) +
                        " vertices exceeds the guard " + std::to_string(guard));
  }
  using State = std::pair<std::size_t, std::uint64_t>;
  std::map<State, std::uint32_t> index;
  std::vector<State> states;
  Nfa nfa;
  auto intern = [&](const State& s) {
    auto [it, fresh] = index.emplace(s, static_cast<std::uint32_t>(states.size()));
    if (fresh) {
      states.push_back(s);
      const std::uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
      nfa.add_state(s.first == x.root_node() && s.second == full);
    }
    return it->second;
  };
  nfa.set_initial(intern({0, 1}));
  // Tree edges as (from, letter, to) in both orientations.
  std::vector<std::vector<std::pair<Letter, std::size_t>>> moves(n);
  for (std::size_t i = 1; i < n; ++i) {
    moves[x.parent(i)].emplace_back(x.edge_label(i), i);
    moves[i].emplace_back(x.edge_label(i).inverse(), x.parent(i));
  }
  for (std::size_t k = 0; k < states.size(); ++k) {
    auto [v, mask] = states[k];
    for (const auto& [l, t] : moves[v]) {
      auto target = intern({t, mask | (1ull << t)});
      nfa.add_transition(static_cast<std::uint32_t>(k), l, target);
    }
  }
  return nfa;
}

Word canonical_word(const MunnElement& x) {
  // Nodes on the path from 1 to the root.
  std::vector<bool> on_path(x.vertex_count(), false);
  for (std::size_t v = x.root_node();; v = x.parent(v)) {
    on_path[v] = true;
    if (v == 0) break;
  }
  std::vector<std::vector<std::size_t>> kids(x.vertex_count());
  for (std::size_t i = 1; i < x.vertex_count(); ++i) kids[x.parent(i)].push_back(i);

  Word out;
  // Full tour of a subtree, returning to its top.
  std::function<void(std::size_t)> tour = [&](std::size_t v) {
    for (auto c : kids[v]) {
      out.push_back(x.edge_label(c));
      tour(c);
      out.push_back(x.edge_label(c).inverse());
    }
  };
  std::size_t v = 0;
  while (true) {
    std::optional<std::size_t> next;
    for (auto c : kids[v]) {
      if (on_path[c]) {
        next = c;
        continue;
      }
      out.push_back(x.edge_label(c));
      tour(c);
      out.push_back(x.edge_label(c).inverse());
    }
    if (!next) break;
    out.push_back(x.edge_label(*next));
    v = *next;
  }
  return out;
}

std::vector<MunnElement> enumerate_idempotents(const Alphabet& alphabet, std::size_t max_vertices) {
  if (max_vertices > kMaxEnumerationVertices) {
    throw ResourceError("enumeration bound " + std::to_string(max_vertices) +
                        " exceeds the guard " + std::to_string(kMaxEnumerationVertices));
  }
  std::vector<MunnElement> out;
  if (max_vertices == 0) return out;
  const auto letters = alphabet.letters();
  using Key = std::vector<ReducedWord>;  // sorted shortlex
  std::vector<Key> level{Key{ReducedWord{}}};
  std::size_t total = 1;
  std::vector<Key> all = level;
  for (std::size_t size = 2; size <= max_vertices; ++size) {
    std::set<Key> next;
    for (const auto& key : level) {
      for (const auto& v : key) {
        for (Letter l : letters) {
          if (!v.empty() && v.letters().back() == l.inverse()) continue;
          Word w = v.letters();
          w.push_back(l);
          auto rw = ReducedWord::from_letters(std::move(w));
          if (std::binary_search(key.begin(), key.end(), rw, ShortLex{})) continue;
          Key grown = key;
          grown.insert(std::upper_bound(grown.begin(), grown.end(), rw, ShortLex{}), rw);
          next.insert(std::move(grown));
          if (total + next.size() > kMaxEnumerationCount) {
            throw ResourceError("idempotent enumeration exceeds " +
                                std::to_string(kMaxEnumerationCount) + " trees");
          }
        }
      }
    }
    level.assign(next.begin(), next.end());
    total += level.size();
    all.insert(all.end(), level.begin(), level.end());
  }
  // Within a size the std::set order compares vertex lists lexicographically
  // by ReducedWord's own order; re-sort with shortlex elementwise.
  std::stable_sort(all.begin(), all.end(), [](const Key& a, const Key& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), ShortLex{});
  });
  out.reserve(all.size());
  for (const auto& key : all) out.push_back(MunnElement::from_vertices(key, ReducedWord{}));
  return out;
}

std::vector<MunnElement> enumerate_elements(const Alphabet& alphabet, std::size_t max_vertices) {
  std::vector<MunnElement> out;
  for (const auto& e : enumerate_idempotents(alphabet, max_vertices)) {
    for (const auto& v : e.vertices()) out.push_back(MunnElement::from_vertices(e.vertices(), v));
  }
  return out;
}

std::string to_json(const MunnElement& x, const Alphabet& alphabet) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : x.vertices()) j["vertices"].push_back(format_word(v, alphabet));
  j["root"] = format_word(x.root(), alphabet);
  return j.dump();
}

MunnElement munn_from_json(std::string_view text, const Alphabet& alphabet) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("root") ||
      !j["vertices"].is_array() || !j["root"].is_string()) {
    throw ParseError("Munn JSON must have a \"vertices\" array and a \"root\" string");
  }
  std::vector<ReducedWord> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw ParseError("vertex entries must be strings");
    auto w = parse_word(v.get<std::string>(), alphabet);
    if (!is_reduced(w)) throw ParseError("vertex \"" + v.get<std::string>() + "\" is not reduced");
    vertices.push_back(ReducedWord::from_letters(std::move(w)));
  }
  auto root = parse_word(j["root"].get<std::string>(), alphabet);
  if (!is_reduced(root)) throw ParseError("root is not reduced");
  return MunnElement::from_vertices(std::move(vertices), ReducedWord::from_letters(root));
}

std::string to_dot(const MunnElement& x, const Alphabet& alphabet) {
  std::ostringstream out;
  out << "digraph munn {\n";
  for (std::size_t i = 0; i < x.vertex_count(); ++i) {
    out << "  v" << i << " [label=\"" << display_word(x.vertex(i), alphabet) << "\"";
    if (i == 0) out << ", shape=doublecircle";
    if (i == x.root_node()) out << ", peripheries=2, style=bold";
    out << "];\n";
  }
  for (std::size_t i = 1; i < x.vertex_count(); ++i) {
    Letter l = x.edge_label(i);
    // Draw each inverse pair once, oriented along the positive generator.
    std::size_t from = l.is_inverse() ? i : x.parent(i);
    std::size_t to = l.is_inverse() ? x.parent(i) : i;
    out << "  v" << from << " -> v" << to << " [label=\"" << alphabet.name(l.generator())
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace fim
