#include "fim/fgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "fim/errors.hpp"

namespace fim {

FreeGroupEndo::FreeGroupEndo(std::vector<ReducedWord> images) : images_(std::move(images)) {
  if (images_.empty()) throw PreconditionError("endomorphism needs at least one generator");
}

FreeGroupEndo FreeGroupEndo::identity(std::size_t rank) {
  std::vector<ReducedWord> images;
  for (std::uint32_t g = 0; g < rank; ++g) {
    images.push_back(ReducedWord::from_letters({Letter(g, false)}));
  }
  return FreeGroupEndo(std::move(images));
}

ReducedWord FreeGroupEndo::image(Letter l) const {
  const auto& w = images_.at(l.generator());
  return l.is_inverse() ? invert(w) : w;
}

ReducedWord apply_fg(const FreeGroupEndo& theta, std::span<const Letter> w) {
  Word out;
  for (Letter l : w) {
    const auto& img = theta.image(l.generator());
    if (l.is_inverse()) {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) {
        out.push_back(it->inverse());
      }
    } else {
      out.insert(out.end(), img.begin(), img.end());
    }
  }
  return reduce(out);
}

FreeGroupEndo compose_fg(const FreeGroupEndo& first, const FreeGroupEndo& second) {
  std::vector<ReducedWord> images;
  for (const auto& img : first.images()) images.push_back(apply_fg(second, img));
  return FreeGroupEndo(std::move(images));
}

FreeGroupEndo power_fg(const FreeGroupEndo& theta, std::size_t n) {
  FreeGroupEndo result = FreeGroupEndo::identity(theta.rank());
  for (std::size_t i = 0; i < n; ++i) result = compose_fg(result, theta);
  return result;
}

std::optional<FreeGroupEndo> power_fg_bounded(const FreeGroupEndo& theta, std::size_t n,
                                              std::size_t max_image_len) {
  FreeGroupEndo result = FreeGroupEndo::identity(theta.rank());
  for (std::size_t i = 0; i < n; ++i) {
    result = compose_fg(result, theta);
    for (const auto& img : result.images()) {
      if (img.size() > max_image_len) return std::nullopt;
    }
  }
  return result;
}

bool is_letter_permutation(const FreeGroupEndo& theta) {
  std::set<Letter> hit;
  for (std::uint32_t g = 0; g < theta.rank(); ++g) {
    const auto& img = theta.image(g);
    if (img.size() != 1) return false;
    hit.insert(img[0]);
    hit.insert(img[0].inverse());
  }
  return hit.size() == 2 * theta.rank();
}

namespace {

using Adjacency = std::vector<std::map<Letter, std::size_t>>;

// Renumbers the component of `base` breadth-first in letter order.
std::vector<std::vector<std::pair<Letter, std::size_t>>> canonical_adjacency(
    const Adjacency& adj, std::size_t base) {
  std::vector<std::size_t> order{base};
  std::map<std::size_t, std::size_t> number{{base, 0}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& [l, t] : adj[order[i]]) {
      if (number.emplace(t, order.size()).second) order.push_back(t);
    }
  }
  std::vector<std::vector<std::pair<Letter, std::size_t>>> out(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& [l, t] : adj[order[i]]) out[i].emplace_back(l, number.at(t));
  }
  return out;
}

class Folder {
 public:
  std::size_t add_vertex() {
    rep_.push_back(rep_.size());
    out_.emplace_back();
    return rep_.size() - 1;
  }

  std::size_t find(std::size_t v) {
    while (rep_[v] != v) {
      rep_[v] = rep_[rep_[v]];
      v = rep_[v];
    }
    return v;
  }

  void add_edge(std::size_t u, Letter l, std::size_t v) {
    pending_.push_back({u, l, v});
    pending_.push_back({v, l.inverse(), u});
    drain();
  }

  // Folded graph on the representatives reachable from `base`, with dangling
  // non-base vertices pruned.
  Adjacency result(std::size_t base, std::size_t& base_out) {
    base = find(base);
    Adjacency adj(rep_.size());
    for (std::size_t v = 0; v < rep_.size(); ++v) {
      if (find(v) != v) continue;
      for (const auto& [l, t] : out_[v]) adj[v][l] = find(t);
    }
    // Prune vertices of degree <= 1 other than the base.
    std::vector<bool> alive(rep_.size(), false);
    for (std::size_t v = 0; v < rep_.size(); ++v) alive[v] = (find(v) == v);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t v = 0; v < rep_.size(); ++v) {
        if (!alive[v] || v == base || adj[v].size() > 1) continue;
        for (const auto& [l, t] : adj[v]) adj[t].erase(l.inverse());
        adj[v].clear();
        alive[v] = false;
        changed = true;
      }
    }
    base_out = base;
    return adj;
  }

 private:
  struct Pending {
    std::size_t from;
    Letter label;
    std::size_t to;
  };

  void drain() {
    while (!pending_.empty()) {
      auto [u, l, v] = pending_.back();
      pending_.pop_back();
      u = find(u);
      v = find(v);
      auto it = out_[u].find(l);
      if (it == out_[u].end()) {
        out_[u][l] = v;
        continue;
      }
      std::size_t w = find(it->second);
      if (w != v) merge(w, v);
    }
  }

  void merge(std::size_t a, std::size_t b) {
    if (b < a) std::swap(a, b);
    rep_[b] = a;
    for (const auto& [l, t] : out_[b]) pending_.push_back({a, l, t});
    out_[b].clear();
  }

  std::vector<std::size_t> rep_;
  std::vector<std::map<Letter, std::size_t>> out_;
  std::vector<Pending> pending_;
};

}  // namespace

StallingsGraph::StallingsGraph() : out_(1) {}

StallingsGraph StallingsGraph::from_edges(std::size_t vertex_count, std::size_t base,
                                          std::span<const Edge> edges) {
  if (base >= vertex_count) throw PreconditionError("base vertex out of range");
  Adjacency adj(vertex_count);
  auto insert = [&](std::size_t u, Letter l, std::size_t v) {
    auto [it, fresh] = adj[u].emplace(l, v);
    if (!fresh && it->second != v) {
      throw PreconditionError("graph is not folded: two edges with the same label");
    }
  };
  for (const auto& e : edges) {
    if (e.from >= vertex_count || e.to >= vertex_count) {
      throw PreconditionError("edge endpoint out of range");
    }
    insert(e.from, e.label, e.to);
    insert(e.to, e.label.inverse(), e.from);
  }
  StallingsGraph g;
  g.out_ = canonical_adjacency(adj, base);
  if (g.out_.size() != vertex_count) throw PreconditionError("graph is not connected");
  return g;
}

std::optional<std::size_t> StallingsGraph::target(std::size_t vertex, Letter l) const {
  for (const auto& [el, t] : out_[vertex]) {
    if (el == l) return t;
  }
  return std::nullopt;
}

std::size_t StallingsGraph::edge_count() const {
  std::size_t directed = 0;
  for (const auto& e : out_) directed += e.size();
  return directed / 2;
}

std::optional<std::size_t> StallingsGraph::read(std::span<const Letter> w) const {
  std::size_t v = base();
  for (Letter l : w) {
    auto t = target(v, l);
    if (!t) return std::nullopt;
    v = *t;
  }
  return v;
}

StallingsGraph stallings_from_generators(std::span<const ReducedWord> generators) {
  Folder folder;
  const std::size_t base = folder.add_vertex();
  for (const auto& g : generators) {
    if (g.empty()) continue;
    std::size_t current = base;
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::size_t next = (i + 1 == g.size()) ? base : folder.add_vertex();
      folder.add_edge(current, g[i], next);
      current = next;
    }
  }
  std::size_t root = 0;
  auto adj = folder.result(base, root);
  StallingsGraph out;
  std::vector<StallingsGraph::Edge> edges;
  // Re-enter through from_edges so canonical numbering lives in one place.
  std::map<std::size_t, std::size_t> compact;
  auto id = [&](std::size_t v) { return compact.emplace(v, compact.size()).first->second; };
  id(root);
  for (std::size_t v = 0; v < adj.size(); ++v) {
    for (const auto& [l, t] : adj[v]) {
      if (!l.is_inverse()) edges.push_back({id(v), l, id(t)});
    }
  }
  return StallingsGraph::from_edges(compact.size(), 0, edges);
}

bool subgroup_membership(const StallingsGraph& g, const ReducedWord& w) {
  auto end = g.read(w.letters());
  return end && *end == g.base();
}

std::size_t rank(const StallingsGraph& g) { return g.edge_count() + 1 - g.vertex_count(); }

bool is_injective(const FreeGroupEndo& theta) {
  return rank(stallings_from_generators(theta.images())) == theta.rank();
}

std::vector<ReducedWord> fixed_words_bounded(const FreeGroupEndo& theta, std::size_t max_len) {
  std::vector<ReducedWord> out;
  for_each_reduced_word(theta.rank(), max_len, [&](const ReducedWord& w) {
    if (apply_fg(theta, w) == w) out.push_back(w);
  });
  return out;
}

BoundedSubgroup fix_basis_bounded(const FreeGroupEndo& theta, std::size_t max_len) {
  BoundedSubgroup result;
  result.graph = stallings_from_generators(fixed_words_bounded(theta, max_len));
  result.max_len = max_len;
  // A letter permutation maps reduced words letter by letter, so a word is
  // fixed iff each of its letters is; the fixed generators (length 1) are
  // always inside the bound.
  result.exact = is_letter_permutation(theta) && max_len >= 1;
  return result;
}

std::string to_string(CurlStatus status) {
  switch (status) {
    case CurlStatus::Exact:
      return "exact";
    case CurlStatus::LowerBoundOnly:
      return "lower-bound-only";
    case CurlStatus::Asserted:
      return "asserted";
  }
  return "unknown";
}

CurlReport curl_permutation(const FreeGroupEndo& theta) {
  if (!is_letter_permutation(theta)) {
    throw PreconditionError("curl_permutation needs images forming a letter permutation");
  }
  const std::size_t n = 2 * theta.rank();
  std::vector<bool> seen(n, false);
  std::size_t order = 1;
  for (std::uint32_t c = 0; c < n; ++c) {
    if (seen[c]) continue;
    std::size_t length = 0;
    Letter l = Letter::from_code(c);
    while (!seen[l.code()]) {
      seen[l.code()] = true;
      ++length;
      l = theta.image(l)[0];
    }
    order = std::lcm(order, length);
  }
  return CurlReport{order, CurlStatus::Exact,
                    "letter permutation of order " + std::to_string(order) +
                        ": its power is the identity, which fixes everything"};
}

std::optional<std::size_t> fg_period(const FreeGroupEndo& theta, const ReducedWord& w,
                                     std::size_t max_steps, std::size_t length_cap) {
  std::unordered_set<ReducedWord> seen;
  ReducedWord current = w;
  for (std::size_t step = 1; step <= max_steps; ++step) {
    current = apply_fg(theta, current);
    if (current == w) return step;
    if (current.size() > length_cap) return std::nullopt;
    // A repeat that is not w means the orbit entered a cycle avoiding w.
    if (!seen.insert(current).second) return std::nullopt;
  }
  return std::nullopt;
}

CurlReport curl_bounded(const FreeGroupEndo& theta, const CurlBounds& bounds) {
  if (bounds.n_max < 1 || bounds.len_max < 1) {
    throw PreconditionError("curl bounds must be at least 1");
  }
  if (bounds.n_max > 8) throw ResourceError("n_max above 8 is not supported");
  if (is_letter_permutation(theta)) return curl_permutation(theta);

  std::size_t max_steps = 1;
  for (std::size_t i = 2; i <= bounds.n_max; ++i) max_steps *= i;

  std::vector<std::pair<ReducedWord, std::size_t>> periodic;
  for_each_reduced_word(theta.rank(), bounds.len_max, [&](const ReducedWord& w) {
    if (w.empty()) return;
    if (auto p = fg_period(theta, w, max_steps, bounds.length_cap)) periodic.emplace_back(w, *p);
  });

  std::map<std::set<std::size_t>, StallingsGraph> cache;
  auto fixed_by_power = [&](std::size_t exponent) -> const StallingsGraph& {
    std::set<std::size_t> periods;
    for (const auto& [w, p] : periodic) {
      if (exponent % p == 0) periods.insert(p);
    }
    auto it = cache.find(periods);
    if (it == cache.end()) {
      std::vector<ReducedWord> gens;
      for (const auto& [w, p] : periodic) {
        if (periods.count(p)) gens.push_back(w);
      }
      it = cache.emplace(periods, stallings_from_generators(gens)).first;
    }
    return it->second;
  };

  const StallingsGraph stable = fixed_by_power(max_steps);
  std::size_t chain_factorial = 1;
  for (std::size_t n = 1; n <= bounds.n_max; ++n) {
    chain_factorial *= n;
    if (fixed_by_power(chain_factorial) == stable) break;
  }
  std::size_t curl = chain_factorial;
  for (std::size_t candidate = 1; candidate < chain_factorial; ++candidate) {
    if (fixed_by_power(candidate) == stable) {
      curl = candidate;
      break;
    }
  }

  std::ostringstream evidence;
  evidence << "bounded scan over reduced words of length <= " << bounds.len_max
           << ", powers up to " << bounds.n_max << "! = " << max_steps
           << ", orbit length cap " << bounds.length_cap << "; " << periodic.size()
           << " periodic words found";
  if (auto p = power_fg_bounded(theta, curl, 4096); p && *p == FreeGroupEndo::identity(theta.rank())) {
    evidence << "; power " << curl << " is the identity";
    return CurlReport{curl, CurlStatus::Exact, evidence.str()};
  }
  return CurlReport{curl, CurlStatus::LowerBoundOnly, evidence.str()};
}

CurlReport assert_curl(std::size_t value, std::string reason) {
  if (value < 1) throw PreconditionError("curl must be at least 1");
  return CurlReport{value, CurlStatus::Asserted, std::move(reason)};
}

std::string to_dot(const StallingsGraph& g, const Alphabet& alphabet) {
  std::ostringstream out;
  out << "digraph stallings {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out << "  s" << v << " [shape=" << (v == g.base() ? "doublecircle" : "circle") << "];\n";
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (const auto& [l, t] : g.edges(v)) {
      if (l.is_inverse()) continue;
      out << "  s" << v << " -> s" << t << " [label=\"" << alphabet.name(l.generator())
          << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace fim
