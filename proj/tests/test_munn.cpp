#include <set>

#include "doctest.h"
#include "fim/errors.hpp"
#include "support.hpp"

using namespace fim;
using namespace fim::test;

namespace {

std::set<std::string> vertex_names(const MunnElement& x) {
  std::set<std::string> out;
  for (const auto& v : x.vertices()) out.insert(str(v));
  return out;
}

}  // namespace

TEST_CASE("prefix trace") {
  auto x = m("aA");
  CHECK(vertex_names(x) == std::set<std::string>{"", "a"});
  CHECK(str(x.root()) == "");
  x = m("abB");
  CHECK(vertex_names(x) == std::set<std::string>{"", "a", "ab"});
  CHECK(str(x.root()) == "a");
  x = m("bBaAb");
  CHECK(vertex_names(x) == std::set<std::string>{"", "a", "b"});
  CHECK(str(x.root()) == "b");
}

TEST_CASE("equality") {
  CHECK(equals(m("aAbB"), m("bBaA")));
  CHECK_FALSE(equals(m("a"), m("aaA")));
  CHECK(equals(m("abBAab"), m("ab")));
}

TEST_CASE("inverse") {
  CHECK(inverse(m("abB")) == m(str(invert_word(w("abB")))));
  CHECK(vertex_names(inverse(m("abB"))) == std::set<std::string>{"", "A", "b"});
  CHECK(inverse(m("")) == MunnElement());
}

TEST_CASE("multiplication") {
  CHECK(m("ab") * m("B") == m("abB"));
  CHECK(m("a") * inverse(m("a")) == m("aA"));
  CHECK(MunnElement() * m("ab") == m("ab"));
}

TEST_CASE("natural order") {
  CHECK(leq(m("aA"), MunnElement()));
  CHECK(leq(m("a"), m("a")));
  CHECK_FALSE(leq(MunnElement(), m("aA")));
  CHECK(leq(m("abBbB"), m("a")));
  CHECK_FALSE(leq(m("a"), m("b")));
}

TEST_CASE("idempotents and norm") {
  CHECK(is_idempotent(m("aA")));
  CHECK_FALSE(is_idempotent(m("a")));
  CHECK(is_idempotent(m("")));
  CHECK(norm(m("")) == 0);
  CHECK(norm(m("aAbB")) == 1);
  CHECK(norm(m("abB")) == 2);
}

TEST_CASE("automaton of an element accepts its upper set") {
  const auto x = m("abB");
  const auto nfa = to_automaton(x);
  CHECK(nfa.accepts(w("abB")));
  CHECK(nfa.accepts(w("a")));
  CHECK(nfa.accepts(w("abBAa")));
  CHECK_FALSE(nfa.accepts(w("abBAAaabB")));
  CHECK_FALSE(nfa.accepts(w("abBAAa")));
  CHECK_FALSE(nfa.accepts(w("ab")));
  CHECK_FALSE(nfa.accepts(w("")));
}

TEST_CASE("preimage automaton accepts exactly the representatives") {
  const auto x = m("abBbB");
  const auto nfa = preimage_automaton(x);
  std::size_t accepted = 0;
  for_each_word(2, 7, [&](const Word& u) {
    const bool in = from_word(u) == x;
    CHECK(nfa.accepts(u) == in);
    accepted += in;
  });
  CHECK(accepted > 0);
  CHECK_THROWS_AS(preimage_automaton(m("aAbBaaAAbbBB"), 4), ResourceError);
}

TEST_CASE("canonical word") {
  CHECK(canon(m("aAbB")) == "aAbB");
  CHECK(canon(m("bBaA")) == "aAbB");
  CHECK(canon(m("a")) == "a");
  for_each_word(2, 5, [&](const Word& u) { CHECK(from_word(canonical_word(from_word(u))) == from_word(u)); });
}

TEST_CASE("idempotent enumeration") {
  const Alphabet a1(1);
  CHECK(enumerate_idempotents(a1, 2).size() == 3);
  CHECK(enumerate_idempotents(a1, 1).size() == 1);
  CHECK(enumerate_idempotents(ab(), 2).size() == 5);
  // Each tree with k vertices carries k choices of root.
  std::size_t weighted = 0;
  for (const auto& e : enumerate_idempotents(ab(), 3)) weighted += e.vertex_count();
  CHECK(enumerate_elements(ab(), 3).size() == weighted);
}

TEST_CASE("json round trip") {
  for (const char* s : {"", "a", "abB", "bBaAb", "aAbBAb"}) {
    const auto x = m(s);
    CHECK(munn_from_json(to_json(x, ab()), ab()) == x);
  }
  CHECK_THROWS_AS(munn_from_json("{\"vertices\": [\"\", \"ab\"], \"root\": \"\"}", ab()), Error);
}

TEST_CASE("substitution on trees matches substitution on words") {
  const auto phi = aba_endo();
  for_each_word(2, 4, [&](const Word& u) {
    CHECK(map_element(from_word(u), phi.images_by_code()) == from_word(substitute(phi, u)));
  });
}

TEST_CASE("edge letters") {
  const auto letters = edge_letters(m("abB"));
  CHECK(std::set<Letter>(letters.begin(), letters.end()) ==
        std::set<Letter>{Letter(0, false), Letter(0, true), Letter(1, false), Letter(1, true)});
}

TEST_CASE("canonical order is total and strict") {
  const auto xs = enumerate_elements(ab(), 3);
  for (const auto& x : xs) {
    CHECK_FALSE(canonical_less(x, x));
    for (const auto& y : xs) {
      if (!(x == y)) CHECK(canonical_less(x, y) != canonical_less(y, x));
    }
  }
}
