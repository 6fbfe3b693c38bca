#include "opengame/solver.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <stdexcept>
#include <thread>

#include "opengame/criteria.hpp"

namespace opengame {

GameInstance::GameInstance(PositionSet z) : original_(std::move(z)) {
  Alphabet::for_game(original_.alphabet_size());
  if (!original_.is_antichain()) {
    throw std::invalid_argument("game positions must form an antichain");
  }
  positions_ = normalize_even(original_);
  depth_ = positions_.max_length();
  for (const auto& p : original_.elements()) {
    if (p.length() % 2 == 0) {
      origin_.emplace(p, p);
    } else {
      for (Symbol a = 0; a < original_.alphabet_size(); ++a) origin_.emplace(p.extended(a), p);
    }
  }
}

const Position& GameInstance::origin_of(const Position& normalized) const {
  auto it = origin_.find(normalized);
  if (it == origin_.end()) {
    throw std::out_of_range(to_string(normalized) + " is not a normalized element");
  }
  return it->second;
}

Strategy Strategy::oblivious(std::vector<Symbol> moves) {
  Strategy s;
  s.kind_ = Kind::oblivious;
  s.moves_ = std::move(moves);
  return s;
}

Strategy Strategy::explicit_map(std::map<Position, Symbol> table) {
  Strategy s;
  s.kind_ = Kind::explicit_map;
  s.table_ = std::move(table);
  return s;
}

std::optional<Symbol> Strategy::move_at(const Position& p) const {
  if (kind_ == Kind::oblivious) {
    if (p.length() % 2 != 0) return std::nullopt;
    std::size_t stage = p.length() / 2;
    if (stage >= moves_.size()) return std::nullopt;
    return moves_[stage];
  }
  auto it = table_.find(p);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

namespace {

struct NodeInfo {
  bool p1_wins = false;
  bool in_w = false;
  std::uint32_t winning_actions = 0;
};

// Backward induction restricted to nodes that still have elements of Z
// below them; every other node is a Player 2 win.
class Evaluator {
 public:
  Evaluator(const PositionSet& z, std::uint64_t budget, std::atomic<std::uint64_t>& visited)
      : z_(z), budget_(budget), visited_(visited) {}

  bool eval(std::vector<Symbol>& path, std::size_t lo, std::size_t hi) {
    if (visited_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_) {
      throw BudgetExceeded("solver node budget exceeded", budget_);
    }
    if (lo == hi) return false;
    const auto& elems = z_.elements();
    const std::size_t depth = path.size();
    NodeInfo info;
    if (elems[lo].length() == depth) {
      info.p1_wins = true;
      info.in_w = true;
      info_.emplace(Position(path), info);
      return true;
    }
    const bool p1_to_move = depth % 2 == 0;
    bool all_children = true;
    std::uint32_t winning = 0;
    std::size_t i = lo;
    for (Symbol a = 0; a < z_.alphabet_size(); ++a) {
      std::size_t j = i;
      while (j < hi && elems[j][depth] == a) ++j;
      bool child = false;
      if (j > i) {
        path.push_back(a);
        child = eval(path, i, j);
        path.pop_back();
      }
      if (child) ++winning;
      else all_children = false;
      i = j;
    }
    info.p1_wins = p1_to_move ? winning > 0 : all_children;
    info.winning_actions = p1_to_move ? winning : 0;
    info_.emplace(Position(path), info);
    return info.p1_wins;
  }

  std::map<Position, NodeInfo>& info() { return info_; }

 private:
  const PositionSet& z_;
  std::uint64_t budget_;
  std::atomic<std::uint64_t>& visited_;
  std::map<Position, NodeInfo> info_;
};

struct Evaluation {
  std::map<Position, NodeInfo> info;
  std::uint64_t visited = 0;

  bool p1_wins(const Position& p) const {
    auto it = info.find(p);
    return it != info.end() && it->second.p1_wins;
  }
  bool in_w(const Position& p) const {
    auto it = info.find(p);
    return it != info.end() && it->second.in_w;
  }
  bool known(const Position& p) const { return info.count(p) != 0; }

  // Smallest action whose every reply keeps Player 1 winning.
  std::optional<Symbol> first_winning_action(const Position& node, std::uint32_t k) const {
    for (Symbol a = 0; a < k; ++a) {
      if (p1_wins(node.extended(a))) return a;
    }
    return std::nullopt;
  }
};

Evaluation evaluate(const GameInstance& game, const SolveOptions& options) {
  const PositionSet& z = game.positions();
  std::atomic<std::uint64_t> visited{0};
  Evaluation out;
  const std::uint32_t k = z.alphabet_size();
  const bool split = options.jobs > 1 && !z.empty() && z.elements().front().length() > 0;
  if (!split) {
    Evaluator ev(z, options.node_budget, visited);
    std::vector<Symbol> path;
    ev.eval(path, 0, z.size());
    out.info = std::move(ev.info());
    out.visited = visited.load();
    return out;
  }

  // Root children are evaluated by independent workers on disjoint subtrees.
  std::vector<std::pair<std::size_t, std::size_t>> ranges(k);
  for (Symbol a = 0; a < k; ++a) ranges[a] = z.extensions_of(Position{a});
  const unsigned workers = std::min<unsigned>(options.jobs, k);
  std::vector<std::future<std::map<Position, NodeInfo>>> futures;
  for (unsigned w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      Evaluator ev(z, options.node_budget, visited);
      for (Symbol a = w; a < k; a += workers) {
        std::vector<Symbol> path{a};
        if (ranges[a].first < ranges[a].second) ev.eval(path, ranges[a].first, ranges[a].second);
      }
      return std::move(ev.info());
    }));
  }
  for (auto& f : futures) {
    auto part = f.get();
    out.info.merge(part);
  }
  std::uint32_t winning = 0;
  for (Symbol a = 0; a < k; ++a) {
    if (out.p1_wins(Position{a})) ++winning;
  }
  NodeInfo root;
  root.p1_wins = winning > 0;
  root.winning_actions = winning;
  out.info.emplace(Position{}, root);
  out.visited = visited.load() + 1;
  return out;
}

void walk_p1_strategy(const Evaluation& ev, std::uint32_t k, const Position& node,
                      std::map<Position, Symbol>& table, bool& unique) {
  if (ev.in_w(node)) return;
  auto a = ev.first_winning_action(node, k);
  if (!a) throw InvariantViolation("winning node without a winning action at " + to_string(node));
  table.emplace(node, *a);
  if (ev.info.at(node).winning_actions != 1) unique = false;
  for (Symbol b = 0; b < k; ++b) walk_p1_strategy(ev, k, node.extended(*a, b), table, unique);
}

void walk_p2_strategy(const Evaluation& ev, std::uint32_t k, const Position& node,
                      std::map<Position, Symbol>& table) {
  if (!ev.known(node)) return;  // nothing in Z below: every continuation is safe
  for (Symbol a = 0; a < k; ++a) {
    Position reply_at = node.extended(a);
    if (!ev.known(reply_at)) continue;
    std::optional<Symbol> reply;
    for (Symbol b = 0; b < k && !reply; ++b) {
      if (!ev.p1_wins(reply_at.extended(b))) reply = b;
    }
    if (!reply) throw InvariantViolation("losing node without a refutation at " + to_string(reply_at));
    table.emplace(reply_at, *reply);
    walk_p2_strategy(ev, k, reply_at.extended(*reply), table);
  }
}

}  // namespace

SolveReport solve(const GameInstance& game, const SolveOptions& options) {
  SolveReport report;
  const PositionSet& original = game.original();
  if (original.infinite_family()) {
    if (kraft_sum_is_exact(original)) {
      int c = compare_to_one(kraft_sum(original));
      if (c == 0) {
        report.winner = 2;
        report.certificate = "infinite minimal-size family";
        return report;
      }
      if (c > 0) {
        report.warnings.push_back(
            "inconclusive for the infinite family (sum exceeds 1); solved the listed truncation");
      }
    } else {
      report.warnings.push_back(
          "no closed form for this infinite family; solved the listed truncation");
    }
  }

  Evaluation ev = evaluate(game, options);
  const std::uint32_t k = game.alphabet_size();
  report.nodes_visited = ev.visited;
  for (const auto& [node, info] : ev.info) {
    if (node.length() % 2 == 0 && !info.in_w) report.winning_action_counts.emplace(node, info.winning_actions);
  }
  const Position root;
  if (ev.p1_wins(root)) {
    report.winner = 1;
    std::map<Position, Symbol> table;
    bool unique = true;
    walk_p1_strategy(ev, k, root, table, unique);
    report.strategy = Strategy::explicit_map(std::move(table));
    report.unique_p1_strategy = unique;
  } else {
    report.winner = 2;
    std::map<Position, Symbol> table;
    walk_p2_strategy(ev, k, root, table);
    report.strategy = Strategy::explicit_map(std::move(table));
  }
  return report;
}

namespace {

class BruteForce {
 public:
  explicit BruteForce(const GameInstance& game) : game_(game) {}

  int value(std::vector<Symbol>& path) {
    Position here(path);
    for (const auto& z : game_.positions().elements()) {
      if (is_prefix(z, here)) return 1;
    }
    if (path.size() >= game_.depth()) return 2;
    const bool p1_to_move = path.size() % 2 == 0;
    bool any = false, all = true;
    for (Symbol a = 0; a < game_.alphabet_size(); ++a) {
      path.push_back(a);
      int v = value(path);
      path.pop_back();
      any = any || v == 1;
      all = all && v == 1;
    }
    return (p1_to_move ? any : all) ? 1 : 2;
  }

 private:
  const GameInstance& game_;
};

}  // namespace

int brute_force_oracle(const GameInstance& game, std::uint64_t budget) {
  mpz_class leaves = integer_power(game.alphabet_size(), game.depth());
  if (leaves > mpz_class(std::to_string(budget))) {
    throw BudgetExceeded("oracle leaf count k^D = " + leaves.get_str() + " exceeds budget", budget);
  }
  BruteForce bf(game);
  std::vector<Symbol> path;
  return bf.value(path);
}

namespace {

void collect_minimal(const Evaluation& ev, const GameInstance& game, const Position& node,
                     std::vector<Position>& out) {
  if (ev.in_w(node)) {
    out.push_back(game.origin_of(node));
    return;
  }
  const std::uint32_t k = game.alphabet_size();
  auto a = ev.first_winning_action(node, k);
  if (!a) throw InvariantViolation("extraction reached a losing node " + to_string(node));
  for (Symbol b = 0; b < k; ++b) collect_minimal(ev, game, node.extended(*a, b), out);
}

}  // namespace

PositionSet extract_minimal_size(const GameInstance& game, const SolveOptions& options) {
  Evaluation ev = evaluate(game, options);
  if (!ev.p1_wins(Position{})) {
    throw std::invalid_argument("minimal-size extraction requires a Player 1 win");
  }
  std::vector<Position> chosen;
  collect_minimal(ev, game, Position{}, chosen);
  PositionSet out(game.alphabet_size(), std::move(chosen));
  if (compare_to_one(kraft_sum(out)) != 0) {
    throw InvariantViolation("extracted set has kraft sum " + to_fraction(kraft_sum(out)));
  }
  return out;
}

PositionSet consistent_positions(const PositionSet& z, const Strategy& s1) {
  std::vector<Position> out;
  for (const auto& p : z.elements()) {
    bool consistent = true;
    for (std::size_t i = 0; i < p.length() && consistent; i += 2) {
      Position node = p.prefix(i);
      auto move = s1.move_at(node);
      if (!move) throw StrategyUndefined(node);
      consistent = *move == p[i];
    }
    if (consistent) out.push_back(p);
  }
  return PositionSet(z.alphabet_size(), std::move(out), z.infinite_family());
}

}  // namespace opengame
