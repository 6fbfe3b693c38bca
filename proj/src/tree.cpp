#include "opengame/tree.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "opengame/error.hpp"

namespace opengame {

std::uint64_t budget_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("OPENGAME_BUDGET");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) {
    throw std::invalid_argument(std::string("OPENGAME_BUDGET is not a positive integer: ") + env);
  }
  return v;
}

Alphabet Alphabet::for_game(std::uint32_t size) {
  if (size < 2) {
    throw std::invalid_argument("alphabet size must be at least 2, got " + std::to_string(size));
  }
  return Alphabet{size, {}};
}

std::string Alphabet::name_of(Symbol s) const {
  if (s < names.size()) return names[s];
  return std::to_string(s);
}

Position Position::extended(Symbol s) const {
  Position out = *this;
  out.seq_.push_back(s);
  return out;
}

Position Position::extended(Symbol a, Symbol b) const {
  Position out = *this;
  out.seq_.push_back(a);
  out.seq_.push_back(b);
  return out;
}

Position Position::concat(const Position& tail) const {
  Position out = *this;
  out.seq_.insert(out.seq_.end(), tail.seq_.begin(), tail.seq_.end());
  return out;
}

Position Position::prefix(std::size_t n) const {
  n = std::min(n, seq_.size());
  return Position(std::vector<Symbol>(seq_.begin(), seq_.begin() + static_cast<std::ptrdiff_t>(n)));
}

std::string to_string(const Position& p) {
  std::string out = "<";
  for (std::size_t i = 0; i < p.length(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i]);
  }
  return out + ">";
}

bool is_prefix(const Position& p, const Position& q) {
  if (p.length() > q.length()) return false;
  return std::equal(p.symbols().begin(), p.symbols().end(), q.symbols().begin());
}

PositionSet::PositionSet(std::uint32_t alphabet_size, std::vector<Position> elements,
                         bool infinite_family)
    : alphabet_size_(alphabet_size), elements_(std::move(elements)),
      infinite_family_(infinite_family) {
  if (alphabet_size_ == 0) throw std::invalid_argument("alphabet size must be positive");
  for (const auto& p : elements_) {
    for (Symbol s : p.symbols()) {
      if (s >= alphabet_size_) {
        throw std::invalid_argument("symbol " + std::to_string(s) + " in " + to_string(p) +
                                    " is outside alphabet of size " +
                                    std::to_string(alphabet_size_));
      }
    }
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  // In lexicographic order a proper prefix is followed by one of its extensions.
  antichain_ = true;
  for (std::size_t i = 0; i + 1 < elements_.size(); ++i) {
    if (is_prefix(elements_[i], elements_[i + 1])) {
      antichain_ = false;
      break;
    }
  }
  even_normalized_ = std::all_of(elements_.begin(), elements_.end(),
                                 [](const Position& p) { return p.length() % 2 == 0; });
}

bool PositionSet::contains(const Position& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

std::size_t PositionSet::max_length() const {
  std::size_t m = 0;
  for (const auto& p : elements_) m = std::max(m, p.length());
  return m;
}

std::size_t PositionSet::min_length() const {
  if (elements_.empty()) return 0;
  std::size_t m = elements_.front().length();
  for (const auto& p : elements_) m = std::min(m, p.length());
  return m;
}

std::pair<std::size_t, std::size_t> PositionSet::extensions_of(const Position& node) const {
  auto lo = std::lower_bound(elements_.begin(), elements_.end(), node);
  auto hi = lo;
  while (hi != elements_.end() && is_prefix(node, *hi)) ++hi;
  return {static_cast<std::size_t>(lo - elements_.begin()),
          static_cast<std::size_t>(hi - elements_.begin())};
}

PositionSet PositionSet::with_infinite_family(bool flag) const {
  PositionSet out = *this;
  out.infinite_family_ = flag;
  return out;
}

bool antichain_check(const PositionSet& z) { return z.is_antichain(); }

PositionSet normalize_even(const PositionSet& z) {
  if (!z.is_antichain()) {
    throw std::invalid_argument("normalize_even requires an antichain");
  }
  std::vector<Position> out;
  out.reserve(z.size());
  for (const auto& p : z.elements()) {
    if (p.length() % 2 == 0) {
      out.push_back(p);
    } else {
      for (Symbol a = 0; a < z.alphabet_size(); ++a) out.push_back(p.extended(a));
    }
  }
  PositionSet result(z.alphabet_size(), std::move(out), z.infinite_family());
  if (!result.is_antichain()) {
    throw InvariantViolation("even normalization broke the antichain property");
  }
  return result;
}

Position hat(const Position& p) {
  std::vector<Symbol> out;
  out.reserve(p.length() / 2);
  for (std::size_t i = 1; i < p.length(); i += 2) out.push_back(p[i]);
  return Position(std::move(out));
}

bool concat_prefix_member(const PositionSet& z, const Position& w) {
  if (!z.is_even_normalized() || !z.is_antichain()) {
    throw std::invalid_argument("concat_prefix_member requires an even-normalized antichain");
  }
  // Only nonempty blocks contribute to an infinite concatenation.
  std::vector<const Position*> blocks;
  for (const auto& p : z.elements()) {
    if (!p.empty()) blocks.push_back(&p);
  }
  if (blocks.empty()) return false;

  const std::size_t n = w.length();
  std::vector<char> reachable(n + 1, 0);
  reachable[0] = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    if (!reachable[i]) continue;
    const std::size_t rest = n - i;
    for (const Position* b : blocks) {
      const std::size_t m = std::min(rest, b->length());
      bool agree = std::equal(b->symbols().begin(), b->symbols().begin() + static_cast<std::ptrdiff_t>(m),
                              w.symbols().begin() + static_cast<std::ptrdiff_t>(i));
      if (!agree) continue;
      if (rest <= b->length()) return true;  // remainder is a prefix of b
      reachable[i + b->length()] = 1;
    }
  }
  return false;
}

}  // namespace opengame
