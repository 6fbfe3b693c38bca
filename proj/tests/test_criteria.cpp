#include <doctest.h>

#include <cmath>
#include <map>

#include "opengame/criteria.hpp"
#include "opengame/solver.hpp"
#include "oracles.hpp"

using namespace opengame;

namespace {

PositionSet periodic_family(std::size_t m, bool infinite) {
  std::vector<Position> elems;
  Position prefix;
  for (std::size_t j = 0; j < m; ++j) {
    elems.push_back(prefix.concat(Position{0, 0}));
    prefix = prefix.concat(Position{0, 1});
  }
  return PositionSet(2, std::move(elems), infinite);
}

// Direct reading of the definition: max over nodes u of length n of
// k^{n/2} * sum over p extending u of k^{-|p|/2}.
Rational subtree_by_definition(const PositionSet& z, std::size_t n) {
  Rational best(0);
  for (const auto& u : oracle::words(z.alphabet_size(), n)) {
    Rational s(0);
    for (const auto& p : z.elements()) {
      if (!is_prefix(u, p)) continue;
      Rational term(1);
      for (std::size_t i = 0; i < p.length() / 2; ++i) term /= z.alphabet_size();
      s += term;
    }
    for (std::size_t i = 0; i < n / 2; ++i) s *= z.alphabet_size();
    if (s > best) best = s;
  }
  return best;
}

}  // namespace

TEST_CASE("kraft sum examples") {
  CHECK(kraft_sum(PositionSet(2, {Position{0, 0}, Position{0, 1}})) == 1);
  CHECK(kraft_sum(PositionSet(2, {Position{0, 0}})) == Rational(1, 2));
  CHECK(kraft_sum(PositionSet(3, {Position{0, 0}, Position{1, 1, 0, 0}})) == Rational(4, 9));
  CHECK(kraft_sum(PositionSet(2, {})) == 0);
  CHECK(kraft_sum(PositionSet(2, {Position{}})) == 1);
  CHECK(kraft_sum(periodic_family(3, false)) == Rational(7, 8));
  CHECK(kraft_sum(periodic_family(3, true)) == 1);
  CHECK_FALSE(kraft_sum_is_exact(PositionSet(2, {Position{0, 0}, Position{1, 1}}, true)));
}

TEST_CASE("kraft sum matches a termwise oracle") {
  for (std::uint32_t k : {2u, 3u}) {
    for (const auto& elems : oracle::antichains(k, k == 2 ? 4 : 2)) {
      PositionSet z(k, elems);
      REQUIRE(kraft_sum(z) == oracle::kraft(z));
    }
  }
}

TEST_CASE("Player 2 certificate") {
  auto below = p2_certificate(PositionSet(2, {Position{0, 0}}));
  REQUIRE(below);
  CHECK(below->sum == Rational(1, 2));
  CHECK_FALSE(p2_certificate(PositionSet(2, {Position{0, 0}, Position{0, 1}})));
  auto fam = p2_certificate(periodic_family(4, true));
  REQUIRE(fam);
  CHECK(fam->sum == 1);
  CHECK_FALSE(p2_certificate(PositionSet(2, {Position{0, 0}, Position{1, 1}}, true)));
}

TEST_CASE("a certificate is never issued for a Player 1 win") {
  for (const auto& elems : oracle::antichains(2, 4)) {
    PositionSet z(2, elems);
    if (!z.is_even_normalized()) continue;
    if (p2_certificate(z)) REQUIRE(oracle::winner(z) == 2);
  }
}

TEST_CASE("subtree criterion") {
  CHECK(subtree_criterion(PositionSet(2, {Position{0, 0, 0, 0}}), 2) == Rational(1, 2));
  CHECK(subtree_criterion(PositionSet(2, {Position{0, 0, 0, 0}, Position{0, 0, 0, 1}}), 2) == 1);
  CHECK(subtree_criterion(PositionSet(2, {}), 3) == 0);
  CHECK_THROWS_AS(subtree_criterion(PositionSet(2, {Position{0, 0}}), 4), std::out_of_range);
  for (const auto& elems : oracle::antichains(2, 4)) {
    PositionSet z(2, elems);
    if (!z.is_even_normalized() || z.empty()) continue;
    for (std::size_t n = 0; n <= z.min_length(); ++n) {
      REQUIRE(subtree_criterion(z, n) == subtree_by_definition(z, n));
    }
  }
}

TEST_CASE("minimal size") {
  CHECK(is_minimal_size(PositionSet(2, {Position{0, 0}, Position{0, 1}})));
  CHECK_FALSE(is_minimal_size(PositionSet(2, {Position{0, 0}})));
  CHECK(is_minimal_size(periodic_family(2, true)));
}

TEST_CASE("Moran exponent examples") {
  MoranRoot fam = moran_dimension(periodic_family(3, true));
  CHECK(fam.closed_form);
  CHECK(std::abs(fam.exponent - 0.5) < 1e-9);
  CHECK_FALSE(fam.below_half);

  MoranRoot full = moran_dimension(PositionSet(2, {Position{0, 0}, Position{0, 1}, Position{1, 0}, Position{1, 1}}));
  CHECK(std::abs(full.exponent - 1.0) < 1e-9);

  MoranRoot single = moran_dimension(PositionSet(2, {Position{0, 1}}));
  CHECK(std::abs(single.exponent) < 1e-9);
  CHECK(single.below_half);

  CHECK_THROWS_AS(moran_dimension(PositionSet(2, {})), std::invalid_argument);
  CHECK_THROWS_AS(moran_dimension(PositionSet(2, {Position{}})), std::invalid_argument);
  CHECK_THROWS_AS(moran_dimension(PositionSet(2, {Position{0}})), std::invalid_argument);
}

TEST_CASE("Moran root solves the equation and sits below one half exactly when the half-power sum is below one") {
  for (std::uint32_t k : {2u, 3u}) {
    for (const auto& elems : oracle::antichains(k, k == 2 ? 4 : 2)) {
      PositionSet z(k, elems);
      if (!z.is_even_normalized() || z.empty() || z.min_length() == 0) continue;
      MoranRoot r = moran_dimension(z);
      double s = 0.0;
      for (const auto& p : z.elements()) s += std::pow(double(k), -r.exponent * double(p.length()));
      REQUIRE(std::abs(s - 1.0) < 1e-9);
      REQUIRE(r.below_half == (oracle::kraft(z) < 1));
      if (oracle::kraft(z) == 1) REQUIRE(std::abs(r.exponent - 0.5) < 1e-12);
    }
  }
}
