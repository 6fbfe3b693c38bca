#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opengame/codes.hpp"
#include "opengame/rational.hpp"
#include "opengame/tree.hpp"

namespace opengame {

struct SignedLetter {
  Symbol symbol = 0;
  int exponent = 1;

  auto operator<=>(const SignedLetter&) const = default;
};

// A position of the Schreier tree of the trivial subgroup.
using SignedPosition = std::vector<SignedLetter>;

bool is_reduction_free(const SignedPosition& p);

// Forgets the signs.
Position project(const SignedPosition& p);

std::string to_string(const SignedPosition& p);

// <x1, c1, x2, c2, ...> for |c| codeword symbols. Requires |x| >= |c|.
Position interleave(const std::vector<Symbol>& x, const Position& c);

// 2^{#{i : c_i != x_i}}. Requires |x| >= |c|.
mpz_class lift_count(const Position& c, const std::vector<Symbol>& x);

// Every reduction-free signing of p.
std::vector<SignedPosition> lift_enumerate(const Position& p);

// Lifts of interleave(x, c) along the lifted oblivious strategy: Player 1
// plays x_i with sign +1 unless that would cancel the previous letter.
std::vector<SignedPosition> strategy_consistent_lifts(const std::vector<Symbol>& x, const Position& c);

enum class Verdict { equals_one, less_than_one, exceeds_one };

std::string verdict_name(Verdict v);
Verdict verdict_of(const Rational& sum);

struct IdentityReport {
  Rational sum;
  Verdict verdict = Verdict::less_than_one;
  // Set when C is only a listed part of a code over an infinite alphabet.
  bool partial = false;
  std::optional<Rational> limit;
};

// sum over C of 2^{mismatch(c, x)} (2k-1)^{-len(c)}.
// Throws std::invalid_argument for non-prefix codes or short x.
IdentityReport identity_sum(const PrefixCode& c, const std::vector<Symbol>& x);

// Mean of identity_sum over all x in A^n. Equals the Kraft sum of C, which is
// checked before returning.
IdentityReport averaged_identity(const PrefixCode& c, std::size_t n,
                                 std::uint64_t budget = kDefaultBudget);

// A probability measure on the symbols: finitely many rational atoms, or the
// geometric measure with mass 2^-(s+1) on symbol s.
class Measure {
 public:
  static Measure weights(std::map<Symbol, Rational> atoms);
  static Measure uniform(std::uint32_t k);
  static Measure geometric2();

  bool is_geometric() const { return geometric_; }
  const std::map<Symbol, Rational>& atoms() const { return atoms_; }

  // Throws UnweightedSymbol when s carries no mass.
  Rational weight(Symbol s) const;

 private:
  std::map<Symbol, Rational> atoms_;
  bool geometric_ = false;
};

class UnweightedSymbol : public std::invalid_argument {
 public:
  explicit UnweightedSymbol(Symbol s)
      : std::invalid_argument("symbol " + std::to_string(s) + " has no weight"), symbol_(s) {}
  Symbol symbol() const { return symbol_; }

 private:
  Symbol symbol_;
};

// One measure for every stage, or a per-stage list mu^1, mu^2, ...
struct MeasureSpec {
  std::vector<Measure> stages;
  bool per_stage = false;

  static MeasureSpec single(Measure m) { return {{std::move(m)}, false}; }
  static MeasureSpec staged(std::vector<Measure> ms) { return {std::move(ms), true}; }

  // Measure used at stage i (1-based).
  const Measure& at(std::size_t stage) const;
};

struct MeasureCriterion {
  Rational sum;
  bool p2_certificate = false;
};

// sum over Z of prod_{i <= floor(len/2)} mu^i_{a_{2i}}.
MeasureCriterion measure_criterion(const PositionSet& z, const MeasureSpec& measures);

// sum over C of 2^{mismatch} prod_i mu_{c_i} / (2 - mu_{x_i}). For the
// geometric measure and C = {<0>, ..., <N-1>} the report is partial and
// carries the exact limit of the full single-letter code.
IdentityReport weighted_identity(const PrefixCode& c, const std::vector<Symbol>& x, const Measure& mu);

// Same value computed on the covering: each strategy-consistent lift is
// weighted by the per-stage lifted measures.
Rational lifted_measure_sum(const PrefixCode& c, const std::vector<Symbol>& x, const Measure& mu);

// Total mass of the lifted measure at a stage where Player 1 plays x_i
// (finite measures only).
Rational lifted_stage_mass(const Measure& mu, Symbol x_i);

struct MonteCarloResult {
  double empirical = 0.0;
  Rational exact;
  double sigma = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
};

// Plays where Player 1 follows x and Player 2 draws i.i.d. from mu; counts
// plays whose Player 2 moves reach a codeword. Deterministic in
// (seed, trials) for any number of jobs.
MonteCarloResult monte_carlo_hit(const PrefixCode& c, const std::vector<Symbol>& x, const Measure& mu,
                                 std::uint64_t trials, std::uint64_t seed, unsigned jobs = 1);

}  // namespace opengame
