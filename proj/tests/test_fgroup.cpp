#include "doctest.h"
#include "fim/errors.hpp"
#include "fim/fgroup.hpp"
#include "support.hpp"

using namespace fim;
using namespace fim::test;

namespace {

FreeGroupEndo fg(std::initializer_list<const char*> images, const Alphabet& a = ab()) {
  std::vector<ReducedWord> out;
  for (const char* s : images) out.push_back(rw(s, a));
  return FreeGroupEndo(out);
}

std::vector<std::string> strs(const std::vector<ReducedWord>& ws) {
  std::vector<std::string> out;
  for (const auto& x : ws) out.push_back(str(x));
  return out;
}

}  // namespace

TEST_CASE("applying free group endomorphisms") {
  CHECK(str(apply_fg(fg({"b", "a"}), rw("ab"))) == "ba");
  const Alphabet a1(1);
  CHECK(str(apply_fg(fg({"aa"}, a1), rw("aA", a1)), a1) == "");
  CHECK(str(apply_fg(fg({"a", "aba"}), rw("bab"))) == "abaaaba");
}

TEST_CASE("composition acts on the right") {
  const auto s = fg({"b", "a"}), t = fg({"a", "aba"});
  for_each_reduced_word(2, 4, [&](const ReducedWord& x) {
    CHECK(apply_fg(compose_fg(s, t), x) == apply_fg(t, apply_fg(s, x)));
  });
  CHECK(power_fg(s, 2) == FreeGroupEndo::identity(2));
  CHECK(str(power_fg(t, 3).image(1)) == "aaabaaa");
  CHECK_FALSE(power_fg_bounded(t, 10, 8).has_value());
}

TEST_CASE("subgroup membership") {
  const auto a_only = stallings_from_generators(std::vector{rw("a")});
  CHECK(subgroup_membership(a_only, rw("aa")));
  CHECK_FALSE(subgroup_membership(a_only, rw("b")));
  const auto conj = stallings_from_generators(std::vector{rw("abA")});
  CHECK_FALSE(subgroup_membership(conj, rw("ab")));
  CHECK(subgroup_membership(conj, rw("abbA")));
  const auto two = stallings_from_generators(std::vector{rw("ab"), rw("aB")});
  CHECK(subgroup_membership(two, rw("bb")));
  CHECK(subgroup_membership(two, rw("abbA")));
  CHECK_FALSE(subgroup_membership(two, rw("aa")));
  CHECK_FALSE(subgroup_membership(two, rw("a")));
}

TEST_CASE("stallings graphs are canonical") {
  const auto g1 = stallings_from_generators(std::vector{rw("ab"), rw("aB")});
  const auto g2 = stallings_from_generators(std::vector{rw("bb"), rw("aB"), rw("ab")});
  CHECK(g1 == g2);
  CHECK(g1.vertex_count() == 2);
}

TEST_CASE("rank") {
  CHECK(rank(stallings_from_generators(std::vector{rw("a")})) == 1);
  CHECK(rank(stallings_from_generators(std::vector{rw("a"), rw("b")})) == 2);
  CHECK(rank(stallings_from_generators(std::vector<ReducedWord>{})) == 0);
  CHECK(rank(stallings_from_generators(std::vector{rw("a"), rw("aa"), rw("bab")})) == 2);
}

TEST_CASE("injectivity") {
  CHECK(is_injective(fg({"b", "a"})));
  CHECK_FALSE(is_injective(fg({"a", "a"})));
  const Alphabet a1(1);
  CHECK(is_injective(fg({"aa"}, a1)));
  CHECK_FALSE(is_injective(fg({"a", ""})));
}

TEST_CASE("bounded fixed words") {
  CHECK(strs(fixed_words_bounded(fg({"b", "a"}), 3)) == std::vector<std::string>{""});
  CHECK(strs(fixed_words_bounded(fg({"a", "aba"}), 2)) ==
        std::vector<std::string>{"", "a", "A", "aa", "AA"});
  CHECK(fixed_words_bounded(FreeGroupEndo::identity(2), 1).size() == 5);
}

TEST_CASE("bounded fixed subgroup") {
  const auto swap = fix_basis_bounded(fg({"b", "a"}), 6);
  CHECK(swap.graph.vertex_count() == 1);
  CHECK(swap.graph.edge_count() == 0);
  CHECK(swap.exact);
  const auto aba = fix_basis_bounded(fg({"a", "aba"}), 6);
  CHECK(aba.graph == stallings_from_generators(std::vector{rw("a")}));
  CHECK_FALSE(aba.exact);
  const auto id = fix_basis_bounded(FreeGroupEndo::identity(2), 2);
  CHECK(id.graph.vertex_count() == 1);
  CHECK(rank(id.graph) == 2);
}

TEST_CASE("curl of letter permutations") {
  CHECK(curl_permutation(fg({"b", "a"})).value == 2);
  CHECK(curl_permutation(FreeGroupEndo::identity(2)).value == 1);
  const Alphabet abc(3);
  const auto cycle = fg({"b", "c", "a"}, abc);
  CHECK(curl_permutation(cycle).value == 3);
  CHECK(curl_permutation(cycle).status == CurlStatus::Exact);
  CHECK(curl_permutation(fg({"B", "a"})).value == 4);
  CHECK_THROWS_AS(curl_permutation(fg({"a", "aba"})), PreconditionError);
}

TEST_CASE("bounded curl") {
  auto c = curl_bounded(fg({"b", "a"}));
  CHECK(c.value == 2);
  CHECK(c.status == CurlStatus::Exact);
  c = curl_bounded(FreeGroupEndo::identity(2));
  CHECK(c.value == 1);
  CHECK(c.status == CurlStatus::Exact);
  // a collapses and b is inverted: the square fixes <b> but is not the identity.
  c = curl_bounded(fg({"", "B"}));
  CHECK(c.value == 2);
  CHECK(c.status == CurlStatus::LowerBoundOnly);
  // Only powers of a are periodic, and nothing certifies that.
  c = curl_bounded(fg({"a", "aba"}));
  CHECK(c.value == 1);
  CHECK_FALSE(c.certified());
  c = assert_curl(1, "by hand");
  CHECK(c.certified());
  CHECK(to_string(c.status) == "asserted");
}

TEST_CASE("periods") {
  CHECK(fg_period(fg({"b", "a"}), rw("ab"), 10, 64) == 2);
  CHECK(fg_period(fg({"a", "aba"}), rw("a"), 10, 64) == 1);
  CHECK_FALSE(fg_period(fg({"a", "aba"}), rw("b"), 10, 64).has_value());
}

TEST_CASE("graph construction is validated") {
  std::vector<StallingsGraph::Edge> unfolded{{0, Letter(0, false), 1}, {0, Letter(0, false), 0}};
  CHECK_THROWS_AS(StallingsGraph::from_edges(2, 0, unfolded), PreconditionError);
  std::vector<StallingsGraph::Edge> disconnected{{0, Letter(0, false), 0}};
  CHECK_THROWS_AS(StallingsGraph::from_edges(2, 0, disconnected), PreconditionError);
  const auto g = stallings_from_generators(std::vector{rw("ab")});
  CHECK(g.read(rw("ab").letters()) == std::size_t{0});
  CHECK(g.read(rw("b").letters()) == std::nullopt);
}
