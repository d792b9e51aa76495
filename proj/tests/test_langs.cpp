#include <random>
#include <set>

#include "doctest.h"
#include "fim/errors.hpp"
#include "fim/grammar.hpp"
#include "fim/langs.hpp"
#include "fim/oracle.hpp"
#include "support.hpp"

using namespace fim;
using namespace fim::test;

namespace {

CurlReport curl_of(const MonoidEndo& phi) { return curl_bounded(induced_fg(phi)); }

Nfa star_of(std::span<const Letter> loop) {
  Nfa nfa;
  const auto hub = nfa.add_state(true);
  nfa.set_initial(hub);
  auto from = hub;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const auto to = i + 1 == loop.size() ? hub : nfa.add_state();
    nfa.add_transition(from, loop[i], to);
    from = to;
  }
  return nfa;
}

// Random epsilon-free grammar over {a, A} with three nonterminals, as both a
// Cfg and the naive oracle's representation.
std::pair<Cfg, oracle::NaiveGrammar> random_grammar(std::mt19937_64& rng) {
  const Alphabet a1(1);
  Cfg g(1);
  oracle::NaiveGrammar n;
  for (int i = 0; i < 3; ++i) g.add_nonterminal("N" + std::to_string(i));
  g.set_start(0);
  std::uniform_int_distribution<int> count(1, 3), len(1, 3), kind(0, 3), nt(0, 2);
  for (std::uint32_t lhs = 0; lhs < 3; ++lhs) {
    for (int r = count(rng); r > 0; --r) {
      std::vector<Symbol> body;
      std::vector<oracle::NaiveGrammar::Item> items;
      for (int k = len(rng); k > 0; --k) {
        const int c = kind(rng);
        if (c < 2) {
          const Letter l(0, c == 1);
          body.push_back(Symbol::t(l));
          items.push_back({true, a1.symbol(l), 0});
        } else {
          const auto x = static_cast<std::uint32_t>(nt(rng));
          body.push_back(Symbol::n(x));
          items.push_back({false, 0, x});
        }
      }
      g.add_production(lhs, body);
      n.rules.emplace_back(lhs, items);
    }
  }
  return {g, n};
}

}  // namespace

TEST_CASE("dyck grammar") {
  const auto d = dyck_grammar(ab());
  CHECK(cfg_membership(d, w("aA")));
  CHECK_FALSE(cfg_membership(d, w("a")));
  for_each_word(2, 6, [&](const Word& u) { CHECK(cfg_membership(d, u) == reduce(u).empty()); });
  CHECK_FALSE(cfg_is_finite(d));
  const Alphabet named(std::vector<char>{'c', 'd'});
  CHECK(dyck_grammar(named).name(0) == "D_");
}

TEST_CASE("grammar text export") {
  const auto text = to_text(dyck_grammar(ab()), ab());
  CHECK(text.rfind("D -> 1\n", 0) == 0);
  CHECK(text.find("D -> D a D A D\n") != std::string::npos);
  const auto g = subgroup_preimage_grammar(stallings_from_generators(std::vector{rw("a")}), ab());
  const auto t = to_text(g, ab());
  CHECK(t.rfind("N_0 -> ", 0) == 0);
  CHECK(t.find("N_0 -> D a N_0") != std::string::npos);
}

TEST_CASE("subgroup preimage grammar") {
  const std::vector gens{rw("ab"), rw("bA")};
  const auto graph = stallings_from_generators(gens);
  const auto g = subgroup_preimage_grammar(graph, ab());
  for_each_word(2, 6, [&](const Word& u) {
    CHECK(cfg_membership(g, u) == subgroup_membership(graph, reduce(u)));
  });
  // The oracle closes products of at most six generators.
  for_each_reduced_word(2, 4, [&](const ReducedWord& u) {
    CHECK(subgroup_membership(graph, u) == oracle::subgroup_member({"ab", "bA"}, str(u), 6));
  });
}

TEST_CASE("recognizer agrees with naive derivations") {
  std::mt19937_64 rng(11);
  const Alphabet a1(1);
  for (int trial = 0; trial < 60; ++trial) {
    auto [g, naive] = random_grammar(rng);
    const auto words = oracle::language_up_to(naive, 7);
    const CfgRecognizer rec(g);
    for_each_word(1, 7, [&](const Word& u) { CHECK(rec.accepts(u) == (words.count(str(u, a1)) > 0)); });
    if (!words.empty()) CHECK_FALSE(cfg_is_empty(g));
  }
}

TEST_CASE("intersection with automata") {
  const auto d = dyck_grammar(ab());
  const auto loop = w("aA");
  const auto both = intersect_cfg_nfa(d, star_of(loop));
  for_each_word(2, 8, [&](const Word& u) {
    CHECK(cfg_membership(both, u) == (cfg_membership(d, u) && star_of(loop).accepts(u)));
  });
  Nfa empty;
  empty.set_initial(empty.add_state(false));
  CHECK(cfg_is_empty(intersect_cfg_nfa(d, empty)));
  CHECK_FALSE(cfg_is_finite(both));
  Nfa eps;
  const auto s0 = eps.add_state(false), s1 = eps.add_state(true);
  eps.set_initial(s0);
  eps.add_transition(s0, std::nullopt, s1);
  eps.add_transition(s1, Letter(0, false), s1);
  const auto g = intersect_cfg_nfa(d, eps);
  CHECK(cfg_membership(g, Word{}));
  CHECK(cfg_is_finite(g));
}

TEST_CASE("finiteness") {
  Cfg g(1);
  const auto s = g.add_nonterminal("S");
  g.set_start(s);
  g.add_production(s, {Symbol::t(Letter(0, false))});
  CHECK(cfg_is_finite(g));
  const auto x = g.add_nonterminal("X");
  g.add_production(x, {Symbol::n(x), Symbol::t(Letter(0, false))});
  CHECK(cfg_is_finite(g));  // X is unreachable and unproductive
  g.add_production(s, {Symbol::n(s), Symbol::n(s)});
  CHECK_FALSE(cfg_is_finite(g));
}

TEST_CASE("radical membership") {
  const auto swap = swap_endo();
  CHECK(rad_membership_direct(swap, 2, m("aAbB")));
  CHECK_FALSE(rad_membership_direct(swap, 2, m("a")));
  CHECK(rad_membership_direct(aba_endo(), 1, MunnElement()));
  CHECK_THROWS_AS(rad_membership_direct(swap, 0, m("a")), PreconditionError);
}

TEST_CASE("radical to fixed point") {
  const auto swap = swap_endo();
  CHECK(radical_to_fix(swap, 2, m("aA")) == m("aAbB"));
  CHECK(radical_to_fix(swap, 2, m("aAbB")) == m("aAbB"));
  CHECK_THROWS_AS(radical_to_fix(swap, 2, m("a")), PreconditionError);
}

TEST_CASE("radical grammars") {
  const auto swap = swap_endo();
  const auto rad = rad_grammar(swap, curl_of(swap));
  CHECK(rad.n == 2);
  CHECK(rad.tiles.verified_fixed.size() == 4);
  CHECK(rad.caveat.empty());
  for_each_word(2, 6, [&](const Word& u) {
    CHECK(cfg_membership(rad.grammar, u) == rad_membership_direct(swap, 2, from_word(u)));
  });
  CHECK_FALSE(cfg_is_finite(rad.grammar));
  CHECK_THROWS_AS(rad_grammar(aba_endo(), curl_of(aba_endo())), PreconditionError);
  CHECK_THROWS_AS(rad_grammar(gap_endo(), assert_curl(1, "by hand")), PreconditionError);
  const auto aba = rad_grammar(aba_endo(), assert_curl(1, "by hand"));
  CHECK_FALSE(aba.caveat.empty());
}

TEST_CASE("fixed point language refuses uncertified input") {
  const auto swap = swap_endo();
  const auto t1 = tiles(swap);
  CHECK_THROWS_AS(fix_power_language(swap, 1, t1, curl_of(swap)), PreconditionError);
  const auto t2 = tiles_of_power(swap, 2, stable_letters(swap));
  CHECK_THROWS_AS(fix_power_language(swap, 3, t2, curl_of(swap)), PreconditionError);
  const auto nfa = fix_power_language(swap, 2, t2, curl_of(swap));
  CHECK(nfa.accepts(Word{}));
}

TEST_CASE("tracked construction") {
  const auto swap = swap_endo();
  const auto c = consen_construction(swap, 2);
  CHECK(c.gamma.epsilon_free());
  CHECK(c.tracked.rank() == 4);
  CHECK(c.image(Word{}).empty());
  CHECK(from_word(c.image(Word{})) == MunnElement());
  CHECK(str(c.image(w("aA"))) == "aAaAbBbBaA");
  for (std::uint32_t g = 0; g < 2; ++g) {
    CHECK(from_word(c.psi[1].image(g)) == apply(swap, from_word(Word{Letter(g, false)})));
  }
  const auto collapse = endo("alphabet: a b\na -> a\nb -> 1\n");
  const auto k = consen_construction(collapse, 2);
  CHECK_FALSE(k.b[1][1]);
  CHECK(k.beta[1].image(1).empty());
}

TEST_CASE("rationality") {
  CHECK(rad_is_rational(swap_endo(), curl_of(swap_endo())).verdict == Rationality::NotRational);
  const auto dbl = rad_is_rational(double_endo(), curl_of(double_endo()));
  CHECK(dbl.verdict == Rationality::Rational);
  CHECK(dbl.language_finite);
  const auto id = MonoidEndo::identity(2);
  CHECK(rad_is_rational(id, curl_of(id)).verdict == Rationality::Unknown);
  CHECK(to_string(Rationality::NotRational) == "not rational");
}
