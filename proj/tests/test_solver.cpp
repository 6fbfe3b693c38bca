#include <doctest.h>

#include <random>

#include "opengame/criteria.hpp"
#include "opengame/solver.hpp"
#include "opengame/suite.hpp"
#include "oracles.hpp"

using namespace opengame;

namespace {

PositionSet periodic_family(std::size_t m, bool infinite = false) {
  std::vector<Position> elems;
  Position prefix;
  for (std::size_t j = 0; j < m; ++j) {
    elems.push_back(prefix.concat(Position{0, 0}));
    prefix = prefix.concat(Position{0, 1});
  }
  return PositionSet(2, std::move(elems), infinite);
}

// Every Player 2 reply sequence against s1 reaches W before depth D.
bool strategy_wins(const GameInstance& g, const Strategy& s1) {
  const PositionSet& z = g.positions();
  std::function<bool(const Position&)> wins = [&](const Position& node) {
    for (const auto& p : z.elements()) {
      if (is_prefix(p, node)) return true;
    }
    if (node.length() >= g.depth()) return false;
    auto a = s1.move_at(node);
    if (!a) return false;
    for (Symbol b = 0; b < g.alphabet_size(); ++b) {
      if (!wins(node.extended(*a, b))) return false;
    }
    return true;
  };
  return wins(Position{});
}

}  // namespace

TEST_CASE("solve on small games") {
  SolveReport r = solve(GameInstance(PositionSet(2, {Position{0, 0}, Position{0, 1}})));
  CHECK(r.winner == 1);
  REQUIRE(r.strategy);
  CHECK(r.strategy->move_at(Position{}) == Symbol{0});
  CHECK(r.unique_p1_strategy);

  CHECK(solve(GameInstance(PositionSet(2, {Position{0, 0}}))).winner == 2);
  CHECK(solve(GameInstance(PositionSet(2, {}))).winner == 2);
  CHECK(solve(GameInstance(PositionSet(2, {Position{}}))).winner == 1);
}

TEST_CASE("periodic family is won by Player 2 at every truncation") {
  for (std::size_t m = 1; m <= 6; ++m) {
    SolveReport r = solve(GameInstance(periodic_family(m)));
    CHECK(r.winner == 2);
    CHECK(oracle::winner(periodic_family(m)) == 2);
  }
  SolveReport inf = solve(GameInstance(periodic_family(3, true)));
  CHECK(inf.winner == 2);
  REQUIRE(inf.certificate);
  CHECK(*inf.certificate == "infinite minimal-size family");
}

TEST_CASE("infinite flag without a closed form solves the truncation with a warning") {
  PositionSet z(2, {Position{0, 0}, Position{0, 1}}, true);
  SolveReport r = solve(GameInstance(z));
  CHECK(r.winner == 1);
  CHECK(r.warnings.size() == 1);
}

TEST_CASE("solve agrees with a raw-set minimax on every binary antichain of depth 3") {
  for (const auto& elems : oracle::antichains(2, 3)) {
    PositionSet z(2, elems);
    GameInstance g(z);
    SolveReport r = solve(g);
    REQUIRE(r.winner == oracle::winner(z));
    REQUIRE(r.winner == brute_force_oracle(g));
    if (r.winner == 1) REQUIRE(strategy_wins(g, *r.strategy));
  }
}

TEST_CASE("solve agrees with the oracle on random ternary games up to depth 6") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    PositionSet z = suite::random_antichain(rng, i % 2 ? 3 : 2, 2 + 2 * (i % 3), i % 3 == 0);
    GameInstance g(z);
    SolveReport r = solve(g);
    REQUIRE(r.winner == oracle::winner(z));
    SolveOptions parallel;
    parallel.jobs = 3;
    SolveReport rp = solve(g, parallel);
    REQUIRE(rp.winner == r.winner);
    REQUIRE(rp.winning_action_counts == r.winning_action_counts);
    if (r.winner == 1) REQUIRE(strategy_wins(g, *r.strategy));
  }
}

TEST_CASE("unique strategy flag matches the reachable winning-action counts") {
  for (const auto& elems : oracle::antichains(2, 3)) {
    GameInstance g{PositionSet(2, elems)};
    SolveReport r = solve(g);
    if (r.winner != 1) continue;
    // Recount along the winning tree using the strategy.
    bool unique = true;
    std::function<void(const Position&)> walk = [&](const Position& node) {
      auto it = r.winning_action_counts.find(node);
      if (it == r.winning_action_counts.end()) return;  // already in W
      unique = unique && it->second == 1;
      Symbol a = *r.strategy->move_at(node);
      for (Symbol b = 0; b < 2; ++b) walk(node.extended(a, b));
    };
    walk(Position{});
    REQUIRE(unique == r.unique_p1_strategy);
  }
}

TEST_CASE("Kraft sum of a Player 1 win is at least one") {
  for (const auto& elems : oracle::antichains(2, 4)) {
    PositionSet z(2, elems);
    if (!z.is_even_normalized()) continue;
    if (solve(GameInstance(z)).winner == 1) REQUIRE(oracle::kraft(z) >= 1);
  }
}

TEST_CASE("brute-force oracle budget") {
  GameInstance g(PositionSet(2, {Position(std::vector<Symbol>(30, 0))}));
  CHECK_THROWS_AS(brute_force_oracle(g, 1000), BudgetExceeded);
  SolveOptions tiny;
  tiny.node_budget = 3;
  CHECK_THROWS_AS(solve(GameInstance(suite::exhaustive_binary_depth4().back()), tiny), BudgetExceeded);
}

TEST_CASE("minimal-size extraction") {
  GameInstance g(PositionSet(2, {Position{0, 0}, Position{0, 1}, Position{1, 0}}));
  CHECK(extract_minimal_size(g) == PositionSet(2, {Position{0, 0}, Position{0, 1}}));
  PositionSet already(2, {Position{0, 0}, Position{0, 1}});
  CHECK(extract_minimal_size(GameInstance(already)) == already);
  PositionSet full(2, {Position{0, 0}, Position{0, 1}, Position{1, 0}, Position{1, 1}});
  PositionSet slice = extract_minimal_size(GameInstance(full));
  CHECK(oracle::kraft(slice) == 1);
  CHECK(oracle::winner(slice) == 1);
  CHECK_THROWS_AS(extract_minimal_size(GameInstance(PositionSet(2, {Position{0, 0}}))), std::invalid_argument);
}

TEST_CASE("extraction keeps odd elements of the input") {
  PositionSet z(2, {Position{0}, Position{1, 1}});
  PositionSet zp = extract_minimal_size(GameInstance(z));
  CHECK(zp == PositionSet(2, {Position{0}}));
}

TEST_CASE("extraction returns a minimal-size winning subset on every small win") {
  for (const auto& elems : oracle::antichains(2, 3)) {
    PositionSet z(2, elems);
    if (oracle::winner(z) != 1) continue;
    PositionSet zp = extract_minimal_size(GameInstance(z));
    for (const auto& p : zp.elements()) REQUIRE(z.contains(p));
    REQUIRE(oracle::winner(zp) == 1);
    REQUIRE(kraft_sum(normalize_even(zp)) == 1);
  }
}

TEST_CASE("consistent positions") {
  PositionSet z(2, {Position{0, 0}, Position{1, 0}});
  CHECK(consistent_positions(z, Strategy::oblivious({0})) == PositionSet(2, {Position{0, 0}}));
  CHECK(consistent_positions(PositionSet(2, {Position{0, 0}}), Strategy::oblivious({0})) ==
        PositionSet(2, {Position{0, 0}}));
  CHECK_THROWS_AS(consistent_positions(PositionSet(2, {Position{0, 0, 1, 1}}), Strategy::oblivious({0})),
                  StrategyUndefined);
  Strategy partial = Strategy::explicit_map({{Position{}, 1}});
  CHECK_THROWS_AS(consistent_positions(PositionSet(2, {Position{1, 0, 0, 0}}), partial), StrategyUndefined);
}
