#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "opengame/error.hpp"
#include "opengame/rational.hpp"
#include "opengame/solver.hpp"
#include "opengame/tree.hpp"

namespace opengame {

// A finite set of words over {0..k-1}; kept sorted and deduplicated.
// Prefix-freeness is checked by is_prefix_code, not enforced.
class PrefixCode {
 public:
  PrefixCode() = default;
  PrefixCode(std::uint32_t alphabet_size, std::vector<Position> words);

  std::uint32_t alphabet_size() const { return alphabet_size_; }
  const std::vector<Position>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  std::size_t max_length() const;
  bool contains(const Position& w) const;

  PrefixCode without(const Position& w) const;

  bool operator==(const PrefixCode&) const = default;

 private:
  std::uint32_t alphabet_size_ = 2;
  std::vector<Position> words_;
};

// All words of length n over k symbols.
PrefixCode uniform_code(std::uint32_t k, std::size_t n);

bool is_prefix_code(const PrefixCode& c);
bool is_bifix_code(const PrefixCode& c);

// sum over C of k^-len(c).
Rational code_kraft_sum(const PrefixCode& c);

// Nonempty, and every proper prefix of a codeword has all k one-symbol
// extensions among the codewords or their proper prefixes.
bool is_complete_tree(const PrefixCode& c);

// Maximality of a finite prefix code, decided by both the Kraft sum and
// tree completeness; a disagreement throws InvariantViolation.
// Throws std::invalid_argument when c is not prefix-free.
bool is_maximal(const PrefixCode& c);

// is_prefix_code(c) && is_maximal(c).
bool is_maximal_prefix_code(const PrefixCode& c);

// x = (x_1, x_2, ...) with each x_i a map {0..k-1} -> {0..k-1} stored as a
// table. Normalized vectors satisfy x_i(0) = 0.
class XVector {
 public:
  XVector(std::uint32_t alphabet_size, std::vector<std::vector<Symbol>> entries);

  // Binary shorthand: bit b stands for the map a -> b*a.
  static XVector from_bits(const std::vector<Symbol>& bits);
  static XVector zero(std::uint32_t alphabet_size, std::size_t depth);

  std::uint32_t alphabet_size() const { return alphabet_size_; }
  std::size_t depth() const { return entries_.size(); }
  const std::vector<std::vector<Symbol>>& entries() const { return entries_; }
  bool is_normalized() const;
  Symbol apply(std::size_t coordinate, Symbol a) const { return entries_[coordinate][a]; }

  bool operator==(const XVector&) const = default;

 private:
  std::uint32_t alphabet_size_;
  std::vector<std::vector<Symbol>> entries_;
};

// Coordinate i is x_i(a_{2i-1}) + a_{2i} mod k; length floor(len/2).
Position cx_encode(const Position& p, const XVector& x);

PrefixCode cx_code(const PositionSet& z, const XVector& x);

// Normalized vectors (k^{(k-1)depth} of them) in lexicographic order, or all
// of (M_k)^depth when `full` is set.
std::vector<XVector> xvectors_enumerate(std::uint32_t k, std::size_t depth, bool full = false,
                                        std::uint64_t budget = kDefaultBudget);

struct EquivalenceVerdict {
  int winner = 2;
  bool all_maximal = true;
  bool equivalence_holds = true;
  std::optional<XVector> witness;  // lexicographically least non-maximal C_x(Z)
  std::size_t vectors_checked = 0;
};

struct EquivalenceOptions {
  bool full_functions = false;
  std::uint64_t budget = kDefaultBudget;
};

// Compares the solver's verdict with maximality of every C_x(Z).
// Requires a minimal-size antichain.
EquivalenceVerdict theorem_equivalence_check(const PositionSet& z,
                                             const EquivalenceOptions& options = {});

// Z_{s1}(C): interleaves each codeword with the moves s1 prescribes.
PositionSet build_Z_from_code(const PrefixCode& c, const Strategy& s1);

// Number of distinct starting sibling groups for extract_generating_subset.
std::size_t generating_subset_choices(const PositionSet& z, const XVector& x);

// Z' subset of Z with |Z'| <= max floor(len/2) (k-1) + 1 whose C_x image
// generates a finite-index subgroup. `choice` selects the starting group of
// maximal-length codewords (0 = lexicographically least).
PositionSet extract_generating_subset(const PositionSet& z, const XVector& x,
                                      std::size_t choice = 0);

}  // namespace opengame
