#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opengame/error.hpp"
#include "opengame/tree.hpp"

namespace opengame {

// A game (A^{<N}, U_{p in Z}[T_p]) over a finite alphabet. Z is
// even-normalized on ingestion; the caller's set is kept for reporting.
class GameInstance {
 public:
  explicit GameInstance(PositionSet z);

  std::uint32_t alphabet_size() const { return positions_.alphabet_size(); }
  const PositionSet& original() const { return original_; }
  const PositionSet& positions() const { return positions_; }
  std::size_t depth() const { return depth_; }

  // The caller's element that a normalized element came from.
  const Position& origin_of(const Position& normalized) const;

 private:
  PositionSet original_;
  PositionSet positions_;
  std::size_t depth_ = 0;
  std::map<Position, Position> origin_;
};

// A Player 1 strategy (moves at even-length positions), or, for reports of
// Player 2 wins, a Player 2 strategy (moves at odd-length positions).
class Strategy {
 public:
  enum class Kind { oblivious, explicit_map };

  // Stage-indexed moves: the move at a position of length 2i is moves[i].
  static Strategy oblivious(std::vector<Symbol> moves);
  static Strategy explicit_map(std::map<Position, Symbol> table);

  Kind kind() const { return kind_; }
  const std::vector<Symbol>& moves() const { return moves_; }
  const std::map<Position, Symbol>& table() const { return table_; }

  std::optional<Symbol> move_at(const Position& p) const;

 private:
  Kind kind_ = Kind::oblivious;
  std::vector<Symbol> moves_;
  std::map<Position, Symbol> table_;
};

// Thrown when a strategy has no move at a position it is asked about.
class StrategyUndefined : public std::invalid_argument {
 public:
  explicit StrategyUndefined(const Position& at)
      : std::invalid_argument("strategy is undefined at " + to_string(at)), at_(at) {}
  const Position& at() const { return at_; }

 private:
  Position at_;
};

struct SolveReport {
  int winner = 2;
  std::optional<Strategy> strategy;
  bool unique_p1_strategy = false;
  // Number of winning first actions at each Player 1 node not already in W.
  std::map<Position, std::uint32_t> winning_action_counts;
  std::optional<std::string> certificate;
  std::vector<std::string> warnings;
  std::uint64_t nodes_visited = 0;
};

struct SolveOptions {
  std::uint64_t node_budget = kDefaultBudget;
  unsigned jobs = 1;
};

SolveReport solve(const GameInstance& game, const SolveOptions& options = {});

// Unmemoized minimax over every node of the depth-D tree. Shares nothing
// with solve() beyond the game definition.
int brute_force_oracle(const GameInstance& game, std::uint64_t budget = kDefaultBudget);

// Z' subset of Z, still a Player 1 win, with kraft sum exactly 1.
PositionSet extract_minimal_size(const GameInstance& game, const SolveOptions& options = {});

// The elements of z whose Player 1 entries follow s1.
PositionSet consistent_positions(const PositionSet& z, const Strategy& s1);

}  // namespace opengame
