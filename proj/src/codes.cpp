#include "opengame/codes.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "opengame/criteria.hpp"

namespace opengame {

PrefixCode::PrefixCode(std::uint32_t alphabet_size, std::vector<Position> words)
    : alphabet_size_(alphabet_size), words_(std::move(words)) {
  if (alphabet_size_ == 0) throw std::invalid_argument("alphabet size must be positive");
  for (const auto& w : words_) {
    for (Symbol s : w.symbols()) {
      if (s >= alphabet_size_) {
        throw std::invalid_argument("symbol " + std::to_string(s) + " in word " + to_string(w) +
                                    " is outside alphabet of size " +
                                    std::to_string(alphabet_size_));
      }
    }
  }
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

std::size_t PrefixCode::max_length() const {
  std::size_t m = 0;
  for (const auto& w : words_) m = std::max(m, w.length());
  return m;
}

bool PrefixCode::contains(const Position& w) const {
  return std::binary_search(words_.begin(), words_.end(), w);
}

PrefixCode PrefixCode::without(const Position& w) const {
  std::vector<Position> rest;
  for (const auto& v : words_) {
    if (v != w) rest.push_back(v);
  }
  return PrefixCode(alphabet_size_, std::move(rest));
}

PrefixCode uniform_code(std::uint32_t k, std::size_t n) {
  std::vector<Position> words{Position{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Position> next;
    next.reserve(words.size() * k);
    for (const auto& w : words) {
      for (Symbol a = 0; a < k; ++a) next.push_back(w.extended(a));
    }
    words = std::move(next);
  }
  return PrefixCode(k, std::move(words));
}

namespace {

bool sorted_prefix_free(const std::vector<Position>& sorted) {
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (is_prefix(sorted[i], sorted[i + 1])) return false;
  }
  return true;
}

}  // namespace

bool is_prefix_code(const PrefixCode& c) { return sorted_prefix_free(c.words()); }

bool is_bifix_code(const PrefixCode& c) {
  if (!is_prefix_code(c)) return false;
  std::vector<Position> reversed;
  reversed.reserve(c.size());
  for (const auto& w : c.words()) {
    std::vector<Symbol> r(w.vector().rbegin(), w.vector().rend());
    reversed.emplace_back(std::move(r));
  }
  std::sort(reversed.begin(), reversed.end());
  return sorted_prefix_free(reversed);
}

Rational code_kraft_sum(const PrefixCode& c) {
  const std::size_t m = c.max_length();
  mpz_class num = 0;
  for (const auto& w : c.words()) num += integer_power(c.alphabet_size(), m - w.length());
  Rational out(num, integer_power(c.alphabet_size(), m));
  out.canonicalize();
  return out;
}

bool is_complete_tree(const PrefixCode& c) {
  if (c.size() == 0) return false;
  std::set<Position> inner;
  for (const auto& w : c.words()) {
    for (std::size_t n = 0; n < w.length(); ++n) inner.insert(w.prefix(n));
  }
  for (const auto& p : inner) {
    for (Symbol a = 0; a < c.alphabet_size(); ++a) {
      Position child = p.extended(a);
      if (!c.contains(child) && !inner.count(child)) return false;
    }
  }
  return true;
}

bool is_maximal(const PrefixCode& c) {
  if (!is_prefix_code(c)) throw std::invalid_argument("maximality is defined for prefix codes only");
  const bool byKraft = compare_to_one(code_kraft_sum(c)) == 0;
  const bool byTree = is_complete_tree(c);
  if (byKraft != byTree) {
    throw InvariantViolation("Kraft and tree-completeness maximality checks disagree");
  }
  return byKraft;
}

bool is_maximal_prefix_code(const PrefixCode& c) { return is_prefix_code(c) && is_maximal(c); }

XVector::XVector(std::uint32_t alphabet_size, std::vector<std::vector<Symbol>> entries)
    : alphabet_size_(alphabet_size), entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].size() != alphabet_size_) {
      throw std::invalid_argument("x entry " + std::to_string(i) + " has " +
                                  std::to_string(entries_[i].size()) + " values, expected " +
                                  std::to_string(alphabet_size_));
    }
    for (Symbol v : entries_[i]) {
      if (v >= alphabet_size_) {
        throw std::invalid_argument("x entry " + std::to_string(i) + " maps outside the alphabet");
      }
    }
  }
}

XVector XVector::from_bits(const std::vector<Symbol>& bits) {
  std::vector<std::vector<Symbol>> entries;
  for (Symbol b : bits) {
    if (b > 1) throw std::invalid_argument("binary x entries must be 0 or 1");
    entries.push_back({0, b});
  }
  return XVector(2, std::move(entries));
}

XVector XVector::zero(std::uint32_t alphabet_size, std::size_t depth) {
  return XVector(alphabet_size,
                 std::vector<std::vector<Symbol>>(depth, std::vector<Symbol>(alphabet_size, 0)));
}

bool XVector::is_normalized() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const std::vector<Symbol>& e) { return e.empty() || e[0] == 0; });
}

Position cx_encode(const Position& p, const XVector& x) {
  const std::size_t half = p.length() / 2;
  if (x.depth() < half) {
    throw std::invalid_argument("x has depth " + std::to_string(x.depth()) + " but " + to_string(p) +
                                " needs " + std::to_string(half));
  }
  const std::uint32_t k = x.alphabet_size();
  std::vector<Symbol> out(half);
  for (std::size_t i = 0; i < half; ++i) {
    Symbol a = p[2 * i], b = p[2 * i + 1];
    if (a >= k || b >= k) throw std::invalid_argument(to_string(p) + " is outside the x alphabet");
    out[i] = (x.apply(i, a) + b) % k;
  }
  return Position(std::move(out));
}

PrefixCode cx_code(const PositionSet& z, const XVector& x) {
  std::vector<Position> words;
  words.reserve(z.size());
  for (const auto& p : z.elements()) words.push_back(cx_encode(p, x));
  return PrefixCode(z.alphabet_size(), std::move(words));
}

std::vector<XVector> xvectors_enumerate(std::uint32_t k, std::size_t depth, bool full,
                                        std::uint64_t budget) {
  const std::size_t freePerEntry = full ? k : k - 1;
  const std::size_t cells = freePerEntry * depth;
  mpz_class count = integer_power(k, cells);
  if (count > mpz_class(std::to_string(budget))) {
    throw BudgetExceeded("x-vector enumeration of size " + count.get_str() + " exceeds budget", budget);
  }
  std::vector<XVector> out;
  out.reserve(count.get_ui());
  std::vector<Symbol> digits(cells, 0);
  for (std::uint64_t t = 0; t < count.get_ui(); ++t) {
    std::vector<std::vector<Symbol>> entries(depth, std::vector<Symbol>(k, 0));
    for (std::size_t c = 0; c < cells; ++c) {
      std::size_t coordinate = c / freePerEntry;
      std::size_t arg = c % freePerEntry + (full ? 0 : 1);
      entries[coordinate][arg] = digits[c];
    }
    out.emplace_back(k, std::move(entries));
    // Odometer with the last cell least significant.
    for (std::size_t c = cells; c-- > 0;) {
      if (++digits[c] < k) break;
      digits[c] = 0;
    }
  }
  return out;
}

EquivalenceVerdict theorem_equivalence_check(const PositionSet& z, const EquivalenceOptions& options) {
  if (z.infinite_family()) throw std::invalid_argument("equivalence check needs a finite set");
  if (!z.is_antichain()) throw std::invalid_argument("equivalence check needs an antichain");
  if (!is_minimal_size(z)) {
    throw std::invalid_argument("equivalence check needs a minimal-size set (kraft sum " +
                                to_fraction(kraft_sum(z)) + ")");
  }
  EquivalenceVerdict verdict;
  verdict.winner = solve(GameInstance(z)).winner;
  std::size_t depth = 0;
  for (const auto& p : z.elements()) depth = std::max(depth, p.length() / 2);
  for (const auto& x : xvectors_enumerate(z.alphabet_size(), depth, options.full_functions,
                                          options.budget)) {
    ++verdict.vectors_checked;
    if (!is_maximal_prefix_code(cx_code(z, x))) {
      verdict.all_maximal = false;
      verdict.witness = x;
      break;
    }
  }
  verdict.equivalence_holds = (verdict.winner == 1) == verdict.all_maximal;
  return verdict;
}

PositionSet build_Z_from_code(const PrefixCode& c, const Strategy& s1) {
  std::vector<Position> out;
  out.reserve(c.size());
  for (const auto& w : c.words()) {
    Position p;
    for (Symbol ci : w.symbols()) {
      auto a = s1.move_at(p);
      if (!a) throw StrategyUndefined(p);
      if (*a >= c.alphabet_size()) throw std::invalid_argument("strategy move outside the alphabet");
      p = p.extended(*a, ci);
    }
    out.push_back(std::move(p));
  }
  return PositionSet(c.alphabet_size(), std::move(out));
}

namespace {

struct GeneratingContext {
  std::map<Position, Position> preimage;  // codeword -> element of Z
  std::vector<Position> codewords;        // sorted
  std::vector<Position> groups;           // parents of maximal-length codewords
  std::size_t max_length = 0;
};

GeneratingContext generating_context(const PositionSet& z, const XVector& x) {
  if (!is_minimal_size(z)) throw std::invalid_argument("generating subset needs a minimal-size set");
  if (solve(GameInstance(z)).winner != 1) {
    throw std::invalid_argument("generating subset needs a Player 1 win");
  }
  GeneratingContext ctx;
  for (const auto& p : z.elements()) {
    Position c = cx_encode(p, x);
    if (!ctx.preimage.emplace(c, p).second) {
      throw InvariantViolation("c_x is not injective on a winning minimal-size set");
    }
    ctx.max_length = std::max(ctx.max_length, c.length());
  }
  for (const auto& [c, p] : ctx.preimage) ctx.codewords.push_back(c);
  if (ctx.max_length > 0) {
    std::set<Position> parents;
    for (const auto& c : ctx.codewords) {
      if (c.length() == ctx.max_length) parents.insert(c.prefix(ctx.max_length - 1));
    }
    ctx.groups.assign(parents.begin(), parents.end());
  }
  return ctx;
}

}  // namespace

std::size_t generating_subset_choices(const PositionSet& z, const XVector& x) {
  auto ctx = generating_context(z, x);
  return std::max<std::size_t>(ctx.groups.size(), 1);
}

PositionSet extract_generating_subset(const PositionSet& z, const XVector& x, std::size_t choice) {
  auto ctx = generating_context(z, x);
  const std::uint32_t k = z.alphabet_size();
  if (ctx.max_length == 0) return z;
  if (choice >= ctx.groups.size()) {
    throw std::out_of_range("choice " + std::to_string(choice) + " but only " +
                            std::to_string(ctx.groups.size()) + " starting groups");
  }
  const Position& parent = ctx.groups[choice];
  std::vector<Position> chosen;
  for (Symbol a = 0; a < k; ++a) {
    Position w = parent.extended(a);
    if (!ctx.preimage.count(w)) throw InvariantViolation("maximal code is missing sibling " + to_string(w));
    chosen.push_back(ctx.preimage.at(w));
  }
  for (std::size_t j = ctx.max_length - 1; j >= 1; --j) {
    Position base = parent.prefix(j - 1);
    for (Symbol a = 0; a < k; ++a) {
      if (a == parent[j - 1]) continue;
      Position stem = base.extended(a);
      auto it = std::lower_bound(ctx.codewords.begin(), ctx.codewords.end(), stem);
      if (it == ctx.codewords.end() || !is_prefix(stem, *it)) {
        throw InvariantViolation("maximal code has no word below " + to_string(stem));
      }
      chosen.push_back(ctx.preimage.at(*it));
    }
  }
  return PositionSet(k, std::move(chosen));
}

}  // namespace opengame
