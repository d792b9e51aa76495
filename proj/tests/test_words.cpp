#include <random>

#include "doctest.h"
#include "fim/errors.hpp"
#include "support.hpp"

using namespace fim;
using namespace fim::test;

TEST_CASE("inversion") {
  CHECK(str(invert_word(w(""))) == "");
  CHECK(str(invert_word(w("ab"))) == "BA");
  CHECK(str(invert_word(w("aBa"))) == "AbA");
}

TEST_CASE("free reduction") {
  CHECK(str(reduce(w("aA"))) == "");
  CHECK(str(reduce(w("abBA"))) == "");
  CHECK(str(reduce(w("abA"))) == "abA");
  CHECK(is_reduced(w("abA")));
  CHECK_FALSE(is_reduced(w("abBa")));
  CHECK_THROWS_AS(ReducedWord::from_letters(w("aA")), PreconditionError);
}

TEST_CASE("longest common prefix") {
  const Alphabet abc(3);
  CHECK(str(longest_common_prefix(rw("ab", abc), rw("ac", abc)), abc) == "a");
  CHECK(str(longest_common_prefix(rw("ab"), rw("ab"))) == "ab");
  CHECK(str(longest_common_prefix(rw("a"), rw("b"))) == "");
}

TEST_CASE("prefix distance is exact") {
  const Alphabet abc(3);
  CHECK(prefix_distance(rw("a"), rw("a")).is_zero);
  auto d = prefix_distance(rw("a"), rw("b"));
  CHECK_FALSE(d.is_zero);
  CHECK(d.exponent == 0);
  d = prefix_distance(rw("ab", abc), rw("ac", abc));
  CHECK_FALSE(d.is_zero);
  CHECK(d.exponent == 1);
}

TEST_CASE("parsing") {
  const Word x = w("aA b");
  REQUIRE(x.size() == 3);
  CHECK(x[0] == Letter(0, false));
  CHECK(x[1] == Letter(0, true));
  CHECK(x[2] == Letter(1, false));
  CHECK(w("").empty());
  try {
    w("ax");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find('x') != std::string::npos);
    CHECK(e.position() == 1);
    CHECK(e.exit_code() == 2);
  }
  CHECK(str(w("abAB")) == "abAB");
}

TEST_CASE("reduction properties on random words") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(0, 14), code(0, 5);
  const Alphabet abc(3);
  auto random = [&] {
    Word x(len(rng));
    for (auto& l : x) l = Letter::from_code(code(rng));
    return x;
  };
  for (int i = 0; i < 500; ++i) {
    const Word u = random(), v = random(), t = random();
    const auto r = reduce(u);
    CHECK(is_reduced(r.letters()));
    CHECK(reduce(concat(u, v)) == multiply_reduced(r, reduce(v)));
    CHECK(reduce(invert_word(u)) == invert(r));
    const auto x = reduce(u), y = reduce(v), z = reduce(t);
    CHECK(prefix_distance(x, z) <= std::max(prefix_distance(x, y), prefix_distance(y, z)));
  }
}

TEST_CASE("word enumeration counts") {
  std::size_t all = 0, reduced = 0;
  for_each_word(2, 3, [&](const Word&) { ++all; });
  for_each_reduced_word(2, 3, [&](const ReducedWord&) { ++reduced; });
  CHECK(all == 1 + 4 + 16 + 64);
  CHECK(reduced == 1 + 4 + 12 + 36);
}

TEST_CASE("alphabets") {
  CHECK_THROWS_AS(Alphabet(0), PreconditionError);
  CHECK_THROWS_AS(Alphabet(std::vector<char>{'a', 'a'}), PreconditionError);
  const Alphabet xy(std::vector<char>{'x', 'y'});
  CHECK(str(w("xYy", xy), xy) == "xYy");
  CHECK(xy.letters().size() == 4);
}
