#include "fim/grammar.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "fim/errors.hpp"

namespace fim {

Cfg::Cfg(std::size_t rank) : rank_(rank) {
  if (rank == 0) throw PreconditionError("grammar needs a nonempty alphabet");
}

std::uint32_t Cfg::add_nonterminal(std::string name) {
  names_.push_back(std::move(name));
  return static_cast<std::uint32_t>(names_.size() - 1);
}

void Cfg::add_production(std::uint32_t lhs, std::vector<Symbol> body) {
  if (lhs >= names_.size()) throw PreconditionError("production for an undeclared nonterminal");
  for (const auto& s : body) {
    if (s.terminal ? s.id >= 2 * rank_ : s.id >= names_.size()) {
      throw PreconditionError("production body uses an undeclared symbol");
    }
  }
  productions_.push_back({lhs, std::move(body)});
}

void Cfg::set_start(std::uint32_t start) {
  if (start >= names_.size()) throw PreconditionError("start symbol is not declared");
  start_ = start;
}

CnfGrammar to_cnf(const Cfg& g) {
  if (g.nonterminal_count() == 0) throw PreconditionError("grammar has no nonterminals");
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < g.nonterminal_count(); ++i) names.push_back(g.name(i));
  auto fresh = [&](std::string name) {
    names.push_back(std::move(name));
    return static_cast<std::uint32_t>(names.size() - 1);
  };
  const std::uint32_t s0 = fresh(g.name(g.start()) + "'");

  std::vector<Production> rules{{s0, {Symbol::n(g.start())}}};
  std::map<std::uint32_t, std::uint32_t> letter_nt;
  std::size_t helper = 0;
  for (const auto& p : g.productions()) {
    auto body = p.body;
    if (body.size() >= 2) {
      for (auto& s : body) {
        if (!s.terminal) continue;
        auto it = letter_nt.find(s.id);
        if (it == letter_nt.end()) {
          auto t = fresh("T" + std::to_string(s.id));
          rules.push_back({t, {s}});
          it = letter_nt.emplace(s.id, t).first;
        }
        s = Symbol::n(it->second);
      }
    }
    std::uint32_t lhs = p.lhs;
    while (body.size() > 2) {
      auto y = fresh(names[p.lhs] + "." + std::to_string(helper++));
      rules.push_back({lhs, {body[0], Symbol::n(y)}});
      lhs = y;
      body.erase(body.begin());
    }
    rules.push_back({lhs, std::move(body)});
  }
  const std::size_t k = names.size();

  std::vector<bool> nullable(k, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : rules) {
      if (nullable[r.lhs]) continue;
      bool all = std::all_of(r.body.begin(), r.body.end(),
                             [&](const Symbol& s) { return !s.terminal && nullable[s.id]; });
      if (all) nullable[r.lhs] = changed = true;
    }
  }

  std::vector<std::set<std::pair<std::uint32_t, std::uint32_t>>> binary(k);
  std::vector<std::set<std::uint32_t>> unary(k);
  std::vector<std::set<std::uint32_t>> unit(k);
  for (const auto& r : rules) {
    if (r.body.size() == 1) {
      if (r.body[0].terminal) {
        unary[r.lhs].insert(r.body[0].id);
      } else if (r.body[0].id != r.lhs) {
        unit[r.lhs].insert(r.body[0].id);
      }
    } else if (r.body.size() == 2) {
      auto b = r.body[0].id, c = r.body[1].id;
      binary[r.lhs].insert({b, c});
      if (nullable[b] && c != r.lhs) unit[r.lhs].insert(c);
      if (nullable[c] && b != r.lhs) unit[r.lhs].insert(b);
    }
  }
  // Unit closure: A inherits the non-unit rules of everything it reaches.
  std::vector<std::set<std::pair<std::uint32_t, std::uint32_t>>> binary_closed = binary;
  std::vector<std::set<std::uint32_t>> unary_closed = unary;
  for (std::uint32_t a = 0; a < k; ++a) {
    std::vector<bool> seen(k, false);
    std::vector<std::uint32_t> stack{a};
    seen[a] = true;
    while (!stack.empty()) {
      auto b = stack.back();
      stack.pop_back();
      if (b != a) {
        binary_closed[a].insert(binary[b].begin(), binary[b].end());
        unary_closed[a].insert(unary[b].begin(), unary[b].end());
      }
      for (auto c : unit[b]) {
        if (!seen[c]) {
          seen[c] = true;
          stack.push_back(c);
        }
      }
    }
  }

  std::vector<bool> productive(k, false);
  for (std::uint32_t a = 0; a < k; ++a) productive[a] = !unary_closed[a].empty();
  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint32_t a = 0; a < k; ++a) {
      if (productive[a]) continue;
      for (const auto& [b, c] : binary_closed[a]) {
        if (productive[b] && productive[c]) {
          productive[a] = changed = true;
          break;
        }
      }
    }
  }
  std::vector<bool> reachable(k, false);
  std::vector<std::uint32_t> stack;
  if (productive[s0]) {
    reachable[s0] = true;
    stack.push_back(s0);
  }
  while (!stack.empty()) {
    auto a = stack.back();
    stack.pop_back();
    for (const auto& [b, c] : binary_closed[a]) {
      if (!productive[b] || !productive[c]) continue;
      for (auto x : {b, c}) {
        if (!reachable[x]) {
          reachable[x] = true;
          stack.push_back(x);
        }
      }
    }
  }

  CnfGrammar out;
  out.rank = g.rank();
  out.accepts_empty = nullable[s0];
  out.start_productive = productive[s0];
  std::vector<std::uint32_t> renumber(k, UINT32_MAX);
  renumber[s0] = 0;
  out.names.push_back(names[s0]);
  for (std::uint32_t a = 0; a < k; ++a) {
    if (a != s0 && reachable[a]) {
      renumber[a] = static_cast<std::uint32_t>(out.names.size());
      out.names.push_back(names[a]);
    }
  }
  out.start = 0;
  for (std::uint32_t a = 0; a < k; ++a) {
    if (!reachable[a]) continue;
    for (const auto& [b, c] : binary_closed[a]) {
      if (reachable[b] && reachable[c]) out.binary.emplace_back(renumber[a], renumber[b], renumber[c]);
    }
    for (auto code : unary_closed[a]) out.unary.emplace_back(renumber[a], Letter::from_code(code));
  }
  return out;
}

CfgRecognizer::CfgRecognizer(const Cfg& g) : cnf_(to_cnf(g)) { index(); }

CfgRecognizer::CfgRecognizer(CnfGrammar cnf) : cnf_(std::move(cnf)) { index(); }

void CfgRecognizer::index() {
  by_left_.assign(cnf_.names.size(), {});
  by_letter_.assign(2 * cnf_.rank, {});
  for (const auto& [a, b, c] : cnf_.binary) by_left_[b].emplace_back(c, a);
  for (const auto& [a, l] : cnf_.unary) by_letter_[l.code()].push_back(a);
}

bool CfgRecognizer::accepts(std::span<const Letter> w) const {
  const std::size_t n = w.size();
  if (n == 0) return cnf_.accepts_empty;
  if (!cnf_.start_productive) return false;
  const std::size_t k = cnf_.names.size();
  // Cell (i, len) holds the nonterminals deriving w[i, i + len).
  auto cell = [n](std::size_t i, std::size_t len) { return (len - 1) * n + i; };
  std::vector<std::vector<std::uint32_t>> lists(n * n);
  std::vector<std::uint8_t> marks(n * n * k, 0);
  auto add = [&](std::size_t c, std::uint32_t a) {
    if (!marks[c * k + a]) {
      marks[c * k + a] = 1;
      lists[c].push_back(a);
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i].code() >= by_letter_.size()) return false;
    for (auto a : by_letter_[w[i].code()]) add(cell(i, 1), a);
  }
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t target = cell(i, len);
      for (std::size_t split = 1; split < len; ++split) {
        const std::size_t left = cell(i, split);
        const std::size_t right = cell(i + split, len - split);
        for (auto b : lists[left]) {
          for (const auto& [c, a] : by_left_[b]) {
            if (marks[right * k + c]) add(target, a);
          }
        }
      }
    }
  }
  return marks[cell(0, n) * k + cnf_.start] != 0;
}

bool cfg_membership(const Cfg& g, std::span<const Letter> w) { return CfgRecognizer(g).accepts(w); }

bool cfg_is_empty(const Cfg& g) {
  auto cnf = to_cnf(g);
  return !cnf.accepts_empty && !cnf.start_productive;
}

bool cfg_is_finite(const Cfg& g) {
  // In trimmed CNF without unit or epsilon rules, every cycle pumps.
  auto cnf = to_cnf(g);
  const std::size_t k = cnf.names.size();
  std::vector<std::vector<std::uint32_t>> next(k);
  for (const auto& [a, b, c] : cnf.binary) {
    next[a].push_back(b);
    next[a].push_back(c);
  }
  std::vector<int> color(k, 0);  // 0 new, 1 on stack, 2 done
  for (std::uint32_t root = 0; root < k; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < next[v].size()) {
        auto u = next[v][i++];
        if (color[u] == 1) return false;
        if (color[u] == 0) {
          color[u] = 1;
          stack.emplace_back(u, 0);
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
  return true;
}

Cfg intersect_cfg_nfa(const Cfg& g, const Nfa& m) {
  const auto cnf = to_cnf(g);
  const Nfa e = m.without_epsilon();
  const std::size_t k = cnf.names.size();
  const std::size_t q = e.state_count();

  using Triple = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;  // (p, A, r)
  std::map<Triple, std::uint32_t> id;
  std::vector<Triple> triples;
  std::vector<std::uint32_t> work;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_left_state;   // (p, A) -> r
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_right_state;  // (A, r) -> p
  auto key = [](std::uint64_t x, std::uint64_t y) { return (x << 32) | y; };
  auto discover = [&](std::uint32_t p, std::uint32_t a, std::uint32_t r) {
    auto [it, fresh] = id.emplace(Triple{p, a, r}, static_cast<std::uint32_t>(triples.size()));
    if (fresh) {
      triples.push_back({p, a, r});
      work.push_back(it->second);
      by_left_state[key(p, a)].push_back(r);
      by_right_state[key(a, r)].push_back(p);
    }
    return it->second;
  };

  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> binary_rules;
  std::set<std::pair<std::uint32_t, std::uint32_t>> letter_rules;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> as_left(k), as_right(k);
  for (const auto& [a, b, c] : cnf.binary) {
    as_left[b].emplace_back(a, c);
    as_right[c].emplace_back(a, b);
  }
  if (q > 0) {
    for (const auto& t : e.transitions()) {
      for (const auto& [a, l] : cnf.unary) {
        if (*t.label == l) letter_rules.emplace(discover(t.from, a, t.to), l.code());
      }
    }
  }
  while (!work.empty()) {
    const auto t = work.back();
    work.pop_back();
    const auto [p, x, r] = triples[t];
    for (const auto& [a, c] : as_left[x]) {
      auto it = by_left_state.find(key(r, c));
      if (it == by_left_state.end()) continue;
      const auto targets = it->second;
      for (auto s : targets) {
        binary_rules.emplace(discover(p, a, s), t, id.at({r, c, s}));
      }
    }
    for (const auto& [a, b] : as_right[x]) {
      auto it = by_right_state.find(key(b, p));
      if (it == by_right_state.end()) continue;
      const auto sources = it->second;
      for (auto s : sources) {
        binary_rules.emplace(discover(s, a, r), id.at({s, b, p}), t);
      }
    }
  }

  // Keep only triples reachable from a start triple.
  std::vector<std::vector<std::uint32_t>> children(triples.size());
  for (const auto& [a, b, c] : binary_rules) {
    children[a].push_back(b);
    children[a].push_back(c);
  }
  std::vector<std::uint32_t> starts;
  for (std::uint32_t f = 0; f < q; ++f) {
    if (!e.is_accepting(f)) continue;
    auto it = id.find({e.initial(), cnf.start, f});
    if (it != id.end()) starts.push_back(it->second);
  }
  std::vector<std::uint32_t> renumber(triples.size(), UINT32_MAX);
  std::vector<std::uint32_t> order;
  for (auto s : starts) {
    if (renumber[s] != UINT32_MAX) continue;
    std::vector<std::uint32_t> stack{s};
    renumber[s] = 0;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (auto c : children[v]) {
        if (renumber[c] == UINT32_MAX) {
          renumber[c] = 0;
          stack.push_back(c);
        }
      }
    }
  }
  std::sort(order.begin(), order.end());

  Cfg out(cnf.rank);
  const auto start = out.add_nonterminal("S");
  out.set_start(start);
  for (auto v : order) {
    const auto [p, a, r] = triples[v];
    renumber[v] = out.add_nonterminal("[" + std::to_string(p) + "," + cnf.names[a] + "," +
                                      std::to_string(r) + "]");
  }
  if (cnf.accepts_empty && q > 0 && e.is_accepting(e.initial())) out.add_production(start, {});
  for (auto s : starts) out.add_production(start, {Symbol::n(renumber[s])});
  for (const auto& [a, b, c] : binary_rules) {
    if (std::binary_search(order.begin(), order.end(), a)) {
      out.add_production(renumber[a], {Symbol::n(renumber[b]), Symbol::n(renumber[c])});
    }
  }
  for (const auto& [a, code] : letter_rules) {
    if (std::binary_search(order.begin(), order.end(), a)) {
      out.add_production(renumber[a], {Symbol::t(Letter::from_code(code))});
    }
  }
  return out;
}

std::string to_text(const Cfg& g, const Alphabet& alphabet) {
  if (alphabet.size() < g.rank()) throw PreconditionError("alphabet smaller than grammar rank");
  std::ostringstream out;
  auto line = [&](const Production& p) {
    out << g.name(p.lhs) << " ->";
    if (p.body.empty()) out << " 1";
    for (const auto& s : p.body) {
      out << ' ';
      if (s.terminal) {
        out << alphabet.symbol(Letter::from_code(s.id));
      } else {
        out << g.name(s.id);
      }
    }
    out << '\n';
  };
  for (const auto& p : g.productions()) {
    if (p.lhs == g.start()) line(p);
  }
  for (const auto& p : g.productions()) {
    if (p.lhs != g.start()) line(p);
  }
  return out.str();
}

}  // namespace fim
