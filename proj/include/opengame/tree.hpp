#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace opengame {

using Symbol = std::uint32_t;

// Symbols are the canonical integers 0..size-1; names are for display only.
struct Alphabet {
  std::uint32_t size = 2;
  std::vector<std::string> names;

  // Games and codes need at least two actions.
  static Alphabet for_game(std::uint32_t size);

  std::string name_of(Symbol s) const;
};

// A finite node of the full tree A^{<N}.
class Position {
 public:
  Position() = default;
  Position(std::initializer_list<Symbol> symbols) : seq_(symbols) {}
  explicit Position(std::vector<Symbol> symbols) : seq_(std::move(symbols)) {}

  std::size_t length() const { return seq_.size(); }
  bool empty() const { return seq_.empty(); }
  Symbol operator[](std::size_t i) const { return seq_[i]; }
  std::span<const Symbol> symbols() const { return seq_; }
  const std::vector<Symbol>& vector() const { return seq_; }

  Position extended(Symbol s) const;
  Position extended(Symbol a, Symbol b) const;
  Position concat(const Position& tail) const;
  Position prefix(std::size_t n) const;

  auto operator<=>(const Position&) const = default;
  bool operator==(const Position&) const = default;

 private:
  std::vector<Symbol> seq_;
};

std::string to_string(const Position& p);

// True iff p is an initial segment of q (equality counts).
bool is_prefix(const Position& p, const Position& q);

// Z: a finite set of positions generating the open set W = U [T_p].
// Elements are kept sorted lexicographically and deduplicated, so the
// elements extending any node form a contiguous range.
class PositionSet {
 public:
  PositionSet() = default;
  PositionSet(std::uint32_t alphabet_size, std::vector<Position> elements,
              bool infinite_family = false);

  std::uint32_t alphabet_size() const { return alphabet_size_; }
  const std::vector<Position>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool infinite_family() const { return infinite_family_; }
  bool is_antichain() const { return antichain_; }
  bool is_even_normalized() const { return even_normalized_; }
  bool contains(const Position& p) const;
  std::size_t max_length() const;
  std::size_t min_length() const;

  // Half-open index range of the elements that extend `node`.
  std::pair<std::size_t, std::size_t> extensions_of(const Position& node) const;

  PositionSet with_infinite_family(bool flag) const;

  bool operator==(const PositionSet& other) const {
    return alphabet_size_ == other.alphabet_size_ &&
           infinite_family_ == other.infinite_family_ &&
           elements_ == other.elements_;
  }

 private:
  std::uint32_t alphabet_size_ = 2;
  std::vector<Position> elements_;
  bool infinite_family_ = false;
  bool antichain_ = true;
  bool even_normalized_ = true;
};

bool antichain_check(const PositionSet& z);

// Replaces each odd-length p by {p.a : a in A}. Requires an antichain.
PositionSet normalize_even(const PositionSet& z);

// The even-indexed (Player 2) entries <a2, a4, ...>.
Position hat(const Position& p);

// Whether w is a prefix of some infinite concatenation of elements of z.
// Requires z even-normalized.
bool concat_prefix_member(const PositionSet& z, const Position& w);

}  // namespace opengame
