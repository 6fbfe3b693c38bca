#include <doctest.h>

#include <random>

#include "opengame/tree.hpp"
#include "oracles.hpp"

using namespace opengame;

TEST_CASE("is_prefix") {
  CHECK(is_prefix(Position{}, Position{0, 1}));
  CHECK(is_prefix(Position{0, 1}, Position{0, 1}));
  CHECK_FALSE(is_prefix(Position{1}, Position{0, 1}));
  CHECK_FALSE(is_prefix(Position{0, 1, 0}, Position{0, 1}));
}

TEST_CASE("antichain check") {
  CHECK(antichain_check(PositionSet(2, {Position{0, 0}, Position{0, 1}})));
  CHECK_FALSE(antichain_check(PositionSet(2, {Position{0}, Position{0, 1}})));
  CHECK(antichain_check(PositionSet(2, {})));
  CHECK_FALSE(antichain_check(PositionSet(2, {Position{}, Position{1, 1, 1}})));
}

TEST_CASE("position sets validate symbols and deduplicate") {
  CHECK_THROWS_AS(PositionSet(2, {Position{0, 2}}), std::invalid_argument);
  PositionSet z(3, {Position{2, 0}, Position{0, 1}, Position{2, 0}});
  CHECK(z.size() == 2);
  CHECK(z.elements().front() == Position{0, 1});
  CHECK_THROWS_AS(Alphabet::for_game(1), std::invalid_argument);
}

TEST_CASE("normalize_even expands odd positions") {
  CHECK(normalize_even(PositionSet(2, {Position{0}})) == PositionSet(2, {Position{0, 0}, Position{0, 1}}));
  CHECK(normalize_even(PositionSet(2, {Position{0, 0}})) == PositionSet(2, {Position{0, 0}}));
  CHECK(normalize_even(PositionSet(3, {Position{1}})) ==
        PositionSet(3, {Position{1, 0}, Position{1, 1}, Position{1, 2}}));
  CHECK_THROWS_AS(normalize_even(PositionSet(2, {Position{0}, Position{0, 1}})), std::invalid_argument);
}

TEST_CASE("normalize_even preserves the winning set on every small antichain") {
  for (std::uint32_t k : {2u, 3u}) {
    const std::size_t depth = k == 2 ? 3 : 2;
    for (const auto& elems : oracle::antichains(k, depth)) {
      PositionSet z(k, elems);
      PositionSet n = normalize_even(z);
      REQUIRE(n.is_antichain());
      REQUIRE(n.is_even_normalized());
      for (const auto& q : oracle::words(k, depth + 1)) {
        bool a = false, b = false;
        for (const auto& p : z.elements()) a = a || is_prefix(p, q);
        for (const auto& p : n.elements()) b = b || is_prefix(p, q);
        REQUIRE(a == b);
      }
    }
  }
}

TEST_CASE("hat keeps Player 2 entries") {
  CHECK(hat(Position{5, 6, 7, 8, 9}) == Position{6, 8});
  CHECK(hat(Position{}) == Position{});
  CHECK(hat(Position{1, 0, 0, 1}) == Position{0, 1});
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    std::vector<Symbol> s(rng() % 12);
    for (auto& v : s) v = rng() % 4;
    CHECK(hat(Position(s)).length() == s.size() / 2);
  }
}

namespace {

// Prefixes of length <= n of concatenations of elements of z, by expansion.
std::set<Position> concat_prefixes(const PositionSet& z, std::size_t n) {
  std::set<Position> out;
  std::vector<Position> frontier{Position{}};
  while (!frontier.empty()) {
    std::vector<Position> next;
    for (const auto& w : frontier) {
      for (const auto& p : z.elements()) {
        if (p.empty()) continue;
        Position joined = w.concat(p);
        for (std::size_t i = w.length() + 1; i <= std::min(n, joined.length()); ++i) out.insert(joined.prefix(i));
        if (joined.length() < n) next.push_back(joined);
      }
    }
    frontier = std::move(next);
  }
  if (!z.empty() && !(z.size() == 1 && z.elements().front().empty())) out.insert(Position{});
  return out;
}

}  // namespace

TEST_CASE("concat_prefix_member") {
  PositionSet z(2, {Position{0, 0}, Position{0, 1}});
  CHECK(concat_prefix_member(z, Position{0, 1, 0, 0}));
  CHECK_FALSE(concat_prefix_member(PositionSet(2, {Position{0, 0}}), Position{1}));
  CHECK(concat_prefix_member(z, Position{0}));
  CHECK_THROWS_AS(concat_prefix_member(PositionSet(2, {Position{0}}), Position{0}), std::invalid_argument);
}

TEST_CASE("concat_prefix_member agrees with expansion on small sets") {
  for (const auto& elems : oracle::antichains(2, 4)) {
    PositionSet z(2, elems);
    if (!z.is_even_normalized() || z.size() > 5) continue;
    if (z.size() == 1 && z.elements().front().empty()) continue;
    auto expected = concat_prefixes(z, 4);
    for (std::size_t n = 0; n <= 4; ++n) {
      for (const auto& w : oracle::words(2, n)) {
        REQUIRE(concat_prefix_member(z, w) == (expected.count(w) != 0));
      }
    }
  }
}
