#pragma once

// Test-side reference implementations. They share nothing with the library
// beyond the Position and PositionSet containers.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "opengame/rational.hpp"
#include "opengame/tree.hpp"

namespace oracle {

using opengame::Position;
using opengame::PositionSet;
using opengame::Rational;
using opengame::Symbol;

inline bool starts_with(const std::vector<Symbol>& play, const Position& p) {
  if (p.length() > play.size()) return false;
  return std::equal(p.vector().begin(), p.vector().end(), play.begin());
}

// Minimax on the raw set (odd lengths kept as they are).
inline int winner(const PositionSet& z) {
  std::size_t horizon = 0;
  for (const auto& p : z.elements()) horizon = std::max(horizon, p.length());
  std::vector<Symbol> play;
  std::function<bool()> p1 = [&]() -> bool {
    for (const auto& p : z.elements()) {
      if (starts_with(play, p)) return true;
    }
    if (play.size() >= horizon) return false;
    bool mover1 = play.size() % 2 == 0;
    for (Symbol a = 0; a < z.alphabet_size(); ++a) {
      play.push_back(a);
      bool w = p1();
      play.pop_back();
      if (mover1 && w) return true;
      if (!mover1 && !w) return false;
    }
    return !mover1;
  };
  return p1() ? 1 : 2;
}

// Sum of k^-floor(len/2), one term at a time.
inline Rational kraft(const PositionSet& z) {
  Rational s(0);
  for (const auto& p : z.elements()) {
    Rational term(1);
    for (std::size_t i = 0; i < p.length() / 2; ++i) term /= z.alphabet_size();
    s += term;
  }
  return s;
}

// All words of length exactly n.
inline std::vector<Position> words(std::uint32_t k, std::size_t n) {
  std::vector<Position> out{Position{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Position> next;
    for (const auto& w : out) {
      for (Symbol a = 0; a < k; ++a) next.push_back(w.extended(a));
    }
    out = std::move(next);
  }
  return out;
}

// Every antichain of words of length <= depth over k symbols, by the
// recursion "a node is either taken, or its children choose independently".
inline std::vector<std::vector<Position>> antichains(std::uint32_t k, std::size_t depth,
                                                     const Position& at = Position{}) {
  std::vector<std::vector<Position>> out{{}, {at}};
  if (at.length() == depth) return out;
  std::vector<std::vector<Position>> combos{{}};
  for (Symbol a = 0; a < k; ++a) {
    auto sub = antichains(k, depth, at.extended(a));
    std::vector<std::vector<Position>> next;
    for (const auto& c : combos) {
      for (const auto& s : sub) {
        auto merged = c;
        merged.insert(merged.end(), s.begin(), s.end());
        next.push_back(std::move(merged));
      }
    }
    combos = std::move(next);
  }
  for (auto& c : combos) {
    if (!c.empty()) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace oracle
