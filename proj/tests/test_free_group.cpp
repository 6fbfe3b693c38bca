#include <doctest.h>

#include <random>

#include "opengame/codes.hpp"
#include "opengame/error.hpp"
#include "opengame/free_group.hpp"

using namespace opengame;

namespace {

GroupWord random_word(std::mt19937_64& rng, std::uint32_t k, std::size_t maxLen) {
  GroupWord w;
  std::size_t n = 1 + rng() % maxLen;
  for (std::size_t i = 0; i < n; ++i) w.push_back({static_cast<std::uint32_t>(rng() % k), rng() % 2 ? 1 : -1});
  return w;
}

// Exponent sum of every letter, mod n.
int exponent_sum_mod(const GroupWord& w, int n) {
  int s = 0;
  for (const auto& l : w) s += l.exponent;
  return ((s % n) + n) % n;
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(format_word(reduce_word(parse_word("abBa"))) == "aa");
  CHECK(format_word(reduce_word(parse_word("aA"))) == "1");
  CHECK(format_word(reduce_word(parse_word("abBAc"))) == "c");
  CHECK(is_reduced(parse_word("abAB")));
  CHECK_FALSE(is_reduced(parse_word("bB")));
  CHECK(format_word(inverse(parse_word("abC"))) == "cBA");
  CHECK(format_word(multiply(parse_word("ab"), parse_word("Ba"))) == "aa");
}

TEST_CASE("word parsing") {
  CHECK(parse_word("").empty());
  CHECK(parse_word("aB") == GroupWord{{0, 1}, {1, -1}});
  CHECK_THROWS_AS(parse_word("a1"), std::invalid_argument);
  CHECK(parse_generators("b, aba ,aBa").size() == 3);
  CHECK_THROWS_AS(parse_generators("a,,b"), std::invalid_argument);
  CHECK(parse_generators("").empty());
  CHECK(word_from_position(Position{1, 0}) == parse_word("ba"));
}

TEST_CASE("reduction is idempotent and inverse cancels") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    GroupWord w = random_word(rng, 3, 12);
    GroupWord r = reduce_word(w);
    REQUIRE(is_reduced(r));
    REQUIRE(reduce_word(r) == r);
    REQUIRE(multiply(w, inverse(w)).empty());
    REQUIRE(exponent_sum_mod(w, 7) == exponent_sum_mod(r, 7));
  }
}

TEST_CASE("folding examples") {
  IndexResult three = subgroup_index(parse_generators("b,aba,aBa"), 2);
  CHECK_FALSE(three.value);
  CHECK(three.graph.vertex_count() == 3);

  IndexResult all = subgroup_index(parse_generators("a,b"), 2);
  REQUIRE(all.value);
  CHECK(*all.value == 1);
  CHECK(all.rank == 2);

  IndexResult two = subgroup_index(parse_generators("aa,b,abA"), 2);
  REQUIRE(two.value);
  CHECK(*two.value == 2);
  CHECK(two.rank == 3);

  IndexResult trivial = subgroup_index({}, 2);
  CHECK_FALSE(trivial.value);
  CHECK(trivial.graph.vertex_count() == 1);
  CHECK(trivial.rank == 0);

  CHECK_THROWS_AS(subgroup_index(parse_generators("c"), 2), std::invalid_argument);
}

TEST_CASE("bouquet has one cycle per generator") {
  LabeledGraph b = bouquet(parse_generators("ab,b,aBa"));
  CHECK(b.edges().size() == 6);
  CHECK(b.vertex_count() == 4);
  CHECK(static_cast<std::int64_t>(b.edges().size()) - b.vertex_count() + 1 == 3);
}

TEST_CASE("membership") {
  auto gens = parse_generators("b,aba,aBa");
  CHECK(membership(parse_word("b"), gens));
  CHECK_FALSE(membership(parse_word("a"), gens));
  CHECK(membership(multiply(parse_word("aba"), parse_word("B")), gens));
  CHECK(membership(parse_word(""), gens));
  CHECK(membership(parse_word("abaaBa"), gens));
}

TEST_CASE("products of generators are members") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    std::vector<GroupWord> gens;
    for (int g = 0; g < 1 + int(rng() % 4); ++g) gens.push_back(random_word(rng, 2, 5));
    for (int t = 0; t < 10; ++t) {
      GroupWord prod;
      for (int f = 0; f < 4; ++f) {
        const auto& g = gens[rng() % gens.size()];
        prod = multiply(prod, rng() % 2 ? g : inverse(g));
      }
      REQUIRE(membership(prod, gens));
    }
  }
}

TEST_CASE("fold result does not depend on the folding order") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 60; ++i) {
    std::vector<GroupWord> gens;
    for (int g = 0; g < 1 + int(rng() % 4); ++g) gens.push_back(random_word(rng, 3, 6));
    LabeledGraph ref = fold(gens);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      LabeledGraph g = fold(gens, seed);
      REQUIRE(isomorphic(ref, g));
      REQUIRE(g.edges() == ref.edges());
    }
  }
}

TEST_CASE("words of length n generate the exponent-sum-mod-n subgroup") {
  for (std::uint32_t k : {2u, 3u}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      PrefixCode c = uniform_code(k, n);
      std::vector<GroupWord> gens;
      for (const auto& w : c.words()) gens.push_back(word_from_position(w));
      IndexResult r = subgroup_index(gens, k);
      REQUIRE(r.value);
      CHECK(*r.value == n);
      CHECK(r.rank == static_cast<std::int64_t>(n * (k - 1) + 1));
      std::mt19937_64 rng(n * 10 + k);
      for (int t = 0; t < 200; ++t) {
        GroupWord w = random_word(rng, k, 10);
        REQUIRE(membership(w, gens) == (exponent_sum_mod(w, static_cast<int>(n)) == 0));
      }
    }
  }
}

TEST_CASE("a complete core gives a transitive permutation action") {
  std::mt19937_64 rng(29);
  int complete = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<GroupWord> gens;
    for (int g = 0; g < 2 + int(rng() % 4); ++g) gens.push_back(random_word(rng, 2, 4));
    IndexResult r = subgroup_index(gens, 2);
    if (!r.value) continue;
    ++complete;
    const LabeledGraph& g = r.graph;
    // Each label is a bijection on vertices.
    for (std::uint32_t label = 0; label < 2; ++label) {
      std::vector<int> hit(g.vertex_count(), 0);
      for (std::uint32_t v = 0; v < g.vertex_count(); ++v) ++hit[*g.out(v, label)];
      for (int h : hit) REQUIRE(h == 1);
    }
    // Cosets: index many distinct endpoints are reached from the basepoint.
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<std::uint32_t> stack{g.basepoint()};
    seen[g.basepoint()] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (std::uint32_t label = 0; label < 2; ++label) {
        auto u = *g.out(v, label);
        if (!seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
    for (bool s : seen) REQUIRE(s);
    REQUIRE(r.rank == static_cast<std::int64_t>(*r.value) + 1);
  }
  CHECK(complete > 10);
}

TEST_CASE("hat index") {
  PositionSet z(2, {Position{0, 0}, Position{0, 1}});
  IndexResult r = hat_index(z);
  REQUIRE(r.value);
  CHECK(*r.value == 1);
  CHECK_FALSE(hat_index(PositionSet(2, {Position{0, 0}})).value);
  CHECK_FALSE(hat_index(PositionSet(2, {Position{}})).value);
}

TEST_CASE("dot output names the basepoint") {
  std::string dot = fold(parse_generators("ab")).to_dot();
  CHECK(dot.find("digraph") != std::string::npos);
}
