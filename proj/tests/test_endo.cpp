#include <algorithm>

#include "doctest.h"
#include "fim/errors.hpp"
#include "support.hpp"

using namespace fim;
using namespace fim::test;

namespace {

const Alphabet& abc() {
  static const Alphabet a(3);
  return a;
}

MonoidEndo cycle3() { return endo("alphabet: a b c\na -> b\nb -> c\nc -> a\n"); }

bool contains(const std::vector<MunnElement>& xs, const MunnElement& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

}  // namespace

TEST_CASE("spec files") {
  const auto spec = parse_endo_spec("# comment\nalphabet: a b\na -> b B a  # trailing\nb -> 1\n");
  CHECK(spec.alphabet.size() == 2);
  CHECK(str(spec.endo.image(0)) == "bBa");
  CHECK(spec.endo.image(1).empty());
  CHECK(parse_endo_spec(format_endo_spec(spec)).endo == spec.endo);
  CHECK_THROWS_AS(parse_endo_spec("alphabet: a b\na -> b\n"), ParseError);
  CHECK_THROWS_AS(parse_endo_spec("alphabet: a b\na -> b\na -> a\nb -> a\n"), ParseError);
  CHECK_THROWS_AS(parse_endo_spec("alphabet: a b\na -> x\nb -> a\n"), ParseError);
  CHECK_THROWS_AS(parse_endo_spec("a -> a\n"), ParseError);
}

TEST_CASE("applying monoid endomorphisms") {
  CHECK(apply(swap_endo(), m("aAbB")) == m("bBaA"));
  const Alphabet a1(1);
  const auto x = apply(double_endo(), m("aA", a1));
  CHECK(x == m("aaAA", a1));
  CHECK(x.vertex_count() == 3);
  CHECK(x.is_idempotent());
  CHECK(apply(aba_endo(), MunnElement()) == MunnElement());
  CHECK(apply_power(swap_endo(), m("ab"), 2) == m("ab"));
}

TEST_CASE("powers and composition") {
  const auto phi = aba_endo();
  CHECK(str(power(phi, 2).image(1)) == "aabaa");
  CHECK(compose(phi, swap_endo()) == endo("alphabet: a b\na -> b\nb -> b a b\n"));
  for_each_word(2, 3, [&](const Word& u) {
    CHECK(apply(power(phi, 3), from_word(u)) == apply_power(phi, from_word(u), 3));
  });
  CHECK_THROWS_AS(power(double_endo(), 40), ResourceError);
}

TEST_CASE("idempotent orbits") {
  const Alphabet a1(1);
  const auto grow = idempotent_orbit(double_endo(), m("aA", a1), OrbitCutoffs{64, 64});
  CHECK(grow.status != Stability::Stable);
  REQUIRE(grow.elements.size() >= 4);
  CHECK(grow.elements[1].norm() == 2);
  CHECK(grow.elements[2].norm() == 4);
  CHECK(grow.elements[3].norm() == 8);
  const auto s = idempotent_orbit(swap_endo(), m("aA"));
  CHECK(s.stable());
  CHECK(s.period() == 2);
  CHECK(s.position(5) == 1);
  CHECK_THROWS_AS(idempotent_orbit(swap_endo(), m("a")), PreconditionError);
}

TEST_CASE("kappa") {
  CHECK(kappa(swap_endo(), m("aA")) == m("aAbB"));
  CHECK(kappa(aba_endo(), m("aA")) == m("aA"));
  CHECK(kappa(cycle3(), m("aA", abc())) == m("aAbBcC", abc()));
  const Alphabet a1(1);
  CHECK_THROWS_AS(kappa(double_endo(), m("aA", a1), OrbitCutoffs{32, 32}), UnstableOrbitError);
}

TEST_CASE("stable letters") {
  const auto swap = stable_letters(swap_endo());
  CHECK(swap.stable().size() == 4);
  for (Letter l : ab().letters()) CHECK(swap.of(l).period() == 2);
  const auto dbl = stable_letters(double_endo());
  CHECK(dbl.stable().empty());
  CHECK(dbl.decided());
  CHECK(dbl.of(Letter(0, false)).status == Stability::UnstableCertified);
  const auto aba = stable_letters(aba_endo());
  CHECK(aba.of(Letter(0, false)).stable());
  CHECK(aba.of(Letter(0, true)).period() == 1);
  CHECK_FALSE(aba.of(Letter(1, false)).stable());
  CHECK_FALSE(aba.of(Letter(1, true)).stable());
}

TEST_CASE("tiles") {
  const auto gap = tiles(gap_endo());
  bool found = false;
  for (const auto& t : gap.violations) {
    if (t.letter == Letter(1, false)) {
      CHECK(t.element == m("bBb"));
      CHECK(t.element == m("b"));
      found = true;
    }
  }
  CHECK(found);
  CHECK(apply(gap_endo(), m("b")) == m("bB"));
  const auto swap = tiles(swap_endo());
  CHECK(swap.violations.size() == 4);
  CHECK(swap.verified_fixed.empty());
  const auto squared = tiles_of_power(swap_endo(), 2, stable_letters(swap_endo()));
  CHECK(squared.verified_fixed.size() == 4);
  CHECK(squared.violations.empty());
}

TEST_CASE("fixed points") {
  CHECK(is_fixed(swap_endo(), m("aAbB")));
  CHECK_FALSE(is_fixed(swap_endo(), m("a")));
  CHECK(is_fixed(aba_endo(), MunnElement()));
  CHECK(fixed_check_permv(swap_endo(), m("aAbB")));
  CHECK_FALSE(fixed_check_permv(swap_endo(), m("a")));
}

TEST_CASE("tile factorization") {
  const auto id = MonoidEndo::identity(2);
  auto f = tile_factorization(id, m("ab"), stable_letters(id));
  REQUIRE(f);
  CHECK(*f == std::vector{m("a"), m("b")});
  f = tile_factorization(aba_endo(), m("aA"), stable_letters(aba_endo()));
  REQUIRE(f);
  CHECK(*f == std::vector{m("a"), m("A")});
  CHECK_FALSE(tile_factorization(swap_endo(), m("a"), stable_letters(swap_endo())));
}

TEST_CASE("fixed point generators") {
  const auto id = MonoidEndo::identity(2);
  const auto g = fix_generators(id, curl_bounded(induced_fg(id)));
  CHECK(g.certificate == FixCertificate::Complete);
  CHECK(g.generators.size() == 4);
  for (Letter l : ab().letters()) CHECK(contains(g.generators, from_word(Word{l})));
  const auto aba = fix_generators(aba_endo(), assert_curl(1, "by hand"));
  CHECK(aba.certificate == FixCertificate::Complete);
  CHECK(contains(aba.generators, m("a")));
  const auto unasserted = fix_generators(aba_endo(), curl_bounded(induced_fg(aba_endo())));
  CHECK(unasserted.certificate == FixCertificate::SoundPossiblyIncomplete);
  const auto gap = fix_generators(gap_endo(), assert_curl(1, "by hand"));
  CHECK(gap.certificate == FixCertificate::SoundPossiblyIncomplete);
  for (const auto& x : gap.generators) CHECK(is_fixed(gap_endo(), x));
}

TEST_CASE("periodic point generators") {
  const auto swap = per_generators(swap_endo(), curl_bounded(induced_fg(swap_endo())));
  CHECK(swap.complete);
  CHECK(swap.m == 2);
  CHECK(swap.generators.size() == 4);
  const auto dbl = per_generators(double_endo(), curl_bounded(induced_fg(double_endo())));
  CHECK(dbl.complete);
  CHECK(dbl.generators.empty());
}

TEST_CASE("infinitude of the fixed points") {
  auto curl = [](const MonoidEndo& phi) { return curl_bounded(induced_fg(phi)); };
  auto r = is_fix_infinite(swap_endo(), curl(swap_endo()));
  CHECK(r.verdict == Verdict::Infinite);
  REQUIRE(r.witness);
  CHECK_FALSE(r.witness->is_idempotent());
  CHECK(is_fix_infinite(double_endo(), curl(double_endo())).verdict == Verdict::Finite);
  const auto id = MonoidEndo::identity(2);
  CHECK(is_fix_infinite(id, curl(id)).verdict == Verdict::Infinite);
}

TEST_CASE("fixed point enumeration") {
  const auto swap = fix_enumerate(swap_endo(), ab(), 3);
  CHECK(contains(swap, m("aAbB")));
  for (const auto& x : swap) {
    CHECK(x.is_idempotent());
    CHECK(apply(swap_endo(), x) == x);
  }
  CHECK(swap.size() == 3);
  const Alphabet a1(1);
  CHECK(fix_enumerate(double_endo(), a1, 5) == std::vector{MunnElement()});
  const auto id = MonoidEndo::identity(2);
  CHECK(fix_enumerate(id, ab(), 3).size() == enumerate_elements(ab(), 3).size());
  CHECK(fix_enumerate(id, ab(), 4, 3) == fix_enumerate(id, ab(), 4, 1));
}

TEST_CASE("submonoid balls") {
  const std::vector gens{m("a"), m("A")};
  const auto ball = submonoid_ball(gens, 3);
  CHECK(ball.size() == enumerate_elements(Alphabet(1), 3).size());
  CHECK(submonoid_ball(std::vector<MunnElement>{}, 4) == std::vector{MunnElement()});
}

TEST_CASE("orbit exports") {
  const auto orbit = idempotent_orbit(swap_endo(), m("aA"));
  const auto json = orbit_to_json(orbit, ab());
  CHECK(json.front() == '[');
  CHECK(orbit_to_dot(orbit, ab()).find("digraph") != std::string::npos);
}
