#include "opengame/covering.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <stdexcept>

#include "opengame/criteria.hpp"
#include "opengame/error.hpp"
#include "opengame/solver.hpp"

namespace opengame {

bool is_reduction_free(const SignedPosition& p) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (p[i].symbol == p[i + 1].symbol && p[i].exponent == -p[i + 1].exponent) return false;
  }
  return true;
}

Position project(const SignedPosition& p) {
  std::vector<Symbol> out;
  out.reserve(p.size());
  for (const auto& l : p) out.push_back(l.symbol);
  return Position(std::move(out));
}

std::string to_string(const SignedPosition& p) {
  std::string out = "<";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i].symbol);
    if (p[i].exponent < 0) out += "^-1";
  }
  return out + ">";
}

namespace {

void require_x_covers(const Position& c, const std::vector<Symbol>& x) {
  if (x.size() < c.length()) {
    throw std::invalid_argument("x has length " + std::to_string(x.size()) + " but codeword " +
                                to_string(c) + " needs " + std::to_string(c.length()));
  }
}

std::size_t mismatches(const Position& c, const std::vector<Symbol>& x) {
  std::size_t m = 0;
  for (std::size_t i = 0; i < c.length(); ++i) m += c[i] != x[i];
  return m;
}

}  // namespace

Position interleave(const std::vector<Symbol>& x, const Position& c) {
  require_x_covers(c, x);
  std::vector<Symbol> out;
  out.reserve(2 * c.length());
  for (std::size_t i = 0; i < c.length(); ++i) {
    out.push_back(x[i]);
    out.push_back(c[i]);
  }
  return Position(std::move(out));
}

mpz_class lift_count(const Position& c, const std::vector<Symbol>& x) {
  require_x_covers(c, x);
  return integer_power(2, mismatches(c, x));
}

std::vector<SignedPosition> lift_enumerate(const Position& p) {
  if (p.length() > 24) throw std::invalid_argument("lift enumeration is limited to length 24");
  std::vector<SignedPosition> out;
  const std::uint64_t patterns = std::uint64_t{1} << p.length();
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    SignedPosition s(p.length());
    for (std::size_t i = 0; i < p.length(); ++i) s[i] = {p[i], (mask >> i) & 1 ? -1 : 1};
    if (is_reduction_free(s)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SignedPosition> strategy_consistent_lifts(const std::vector<Symbol>& x, const Position& c) {
  std::vector<SignedPosition> out;
  for (auto& lift : lift_enumerate(interleave(x, c))) {
    bool follows = true;
    for (std::size_t i = 0; i < lift.size() && follows; i += 2) {
      int expected = 1;
      if (i > 0 && lift[i - 1].symbol == lift[i].symbol && lift[i - 1].exponent < 0) expected = -1;
      follows = lift[i].exponent == expected;
    }
    if (follows) out.push_back(std::move(lift));
  }
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::equals_one: return "equals_one";
    case Verdict::less_than_one: return "less_than_one";
    case Verdict::exceeds_one: return "exceeds_one";
  }
  return "unknown";
}

Verdict verdict_of(const Rational& sum) {
  int c = compare_to_one(sum);
  if (c == 0) return Verdict::equals_one;
  return c < 0 ? Verdict::less_than_one : Verdict::exceeds_one;
}

IdentityReport identity_sum(const PrefixCode& c, const std::vector<Symbol>& x) {
  if (!is_prefix_code(c)) throw std::invalid_argument("identity sum needs a prefix code");
  const std::uint32_t k = c.alphabet_size();
  for (Symbol s : x) {
    if (s >= k) throw std::invalid_argument("x symbol " + std::to_string(s) + " outside the alphabet");
  }
  const std::size_t m = c.max_length();
  const std::uint64_t degree = 2 * std::uint64_t{k} - 1;
  mpz_class num = 0;
  for (const auto& w : c.words()) {
    require_x_covers(w, x);
    num += lift_count(w, x) * integer_power(degree, m - w.length());
  }
  IdentityReport r;
  r.sum = Rational(num, integer_power(degree, m));
  r.sum.canonicalize();
  r.verdict = verdict_of(r.sum);
  return r;
}

IdentityReport averaged_identity(const PrefixCode& c, std::size_t n, std::uint64_t budget) {
  const std::uint32_t k = c.alphabet_size();
  if (n < c.max_length()) {
    throw std::invalid_argument("n = " + std::to_string(n) + " is below the maximal codeword length " +
                                std::to_string(c.max_length()));
  }
  mpz_class count = integer_power(k, n);
  if (count > mpz_class(std::to_string(budget))) {
    throw BudgetExceeded("averaging over " + count.get_str() + " vectors", budget);
  }
  Rational total(0);
  std::vector<Symbol> x(n, 0);
  for (std::uint64_t t = 0; t < count.get_ui(); ++t) {
    total += identity_sum(c, x).sum;
    for (std::size_t i = n; i-- > 0;) {
      if (++x[i] < k) break;
      x[i] = 0;
    }
  }
  IdentityReport r;
  r.sum = total / Rational(count);
  r.verdict = verdict_of(r.sum);
  if (r.sum != code_kraft_sum(c)) {
    throw InvariantViolation("averaged identity " + to_fraction(r.sum) + " differs from the Kraft sum " +
                             to_fraction(code_kraft_sum(c)));
  }
  return r;
}

Measure Measure::weights(std::map<Symbol, Rational> atoms) {
  if (atoms.empty()) throw std::invalid_argument("a measure needs at least one atom");
  Rational total(0);
  for (const auto& [s, w] : atoms) {
    if (w <= 0) throw std::invalid_argument("atom " + std::to_string(s) + " has non-positive mass");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("atoms sum to " + to_fraction(total) + ", not 1");
  Measure m;
  m.atoms_ = std::move(atoms);
  return m;
}

Measure Measure::uniform(std::uint32_t k) {
  std::map<Symbol, Rational> atoms;
  for (Symbol s = 0; s < k; ++s) atoms.emplace(s, Rational(1, k));
  return weights(std::move(atoms));
}

Measure Measure::geometric2() {
  Measure m;
  m.geometric_ = true;
  return m;
}

Rational Measure::weight(Symbol s) const {
  if (geometric_) return inverse_power(2, std::uint64_t{s} + 1);
  auto it = atoms_.find(s);
  if (it == atoms_.end()) throw UnweightedSymbol(s);
  return it->second;
}

const Measure& MeasureSpec::at(std::size_t stage) const {
  if (stages.empty()) throw std::invalid_argument("measure specification has no measures");
  if (!per_stage) return stages.front();
  if (stage == 0 || stage > stages.size()) {
    throw std::out_of_range("no measure for stage " + std::to_string(stage));
  }
  return stages[stage - 1];
}

MeasureCriterion measure_criterion(const PositionSet& z, const MeasureSpec& measures) {
  MeasureCriterion out;
  out.sum = 0;
  for (const auto& p : z.elements()) {
    Rational term(1);
    for (std::size_t i = 1; i <= p.length() / 2; ++i) term *= measures.at(i).weight(p[2 * i - 1]);
    out.sum += term;
  }
  out.p2_certificate = compare_to_one(out.sum) < 0;
  return out;
}

namespace {

// Exact value of the weighted identity over every single-letter codeword
// <n> with n >= listed, for the geometric measure.
Rational geometric_tail(std::size_t listed, Symbol x1) {
  const Rational mx = inverse_power(2, std::uint64_t{x1} + 1);
  Rational tailMass = inverse_power(2, listed);  // sum_{s >= listed} 2^-(s+1)
  Rational tail = 2 * tailMass;
  if (x1 >= listed) tail -= mx;  // the x_1 atom is not doubled
  return tail / (2 - mx);
}

bool is_single_letter_prefix(const PrefixCode& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.words()[i] != Position{static_cast<Symbol>(i)}) return false;
  }
  return c.size() > 0;
}

}  // namespace

IdentityReport weighted_identity(const PrefixCode& c, const std::vector<Symbol>& x, const Measure& mu) {
  if (!is_prefix_code(c)) throw std::invalid_argument("weighted identity needs a prefix code");
  IdentityReport r;
  r.sum = 0;
  for (const auto& w : c.words()) {
    require_x_covers(w, x);
    Rational term(mpz_class(lift_count(w, x)));
    for (std::size_t i = 0; i < w.length(); ++i) term *= mu.weight(w[i]) / (2 - mu.weight(x[i]));
    r.sum += term;
  }
  r.verdict = verdict_of(r.sum);
  if (mu.is_geometric()) {
    r.partial = true;
    if (is_single_letter_prefix(c) && !x.empty()) {
      Rational limit = r.sum + geometric_tail(c.size(), x[0]);
      if (limit != 1) throw InvariantViolation("geometric closed form gives " + to_fraction(limit));
      r.limit = limit;
    }
  }
  return r;
}

Rational lifted_measure_sum(const PrefixCode& c, const std::vector<Symbol>& x, const Measure& mu) {
  Rational total(0);
  for (const auto& w : c.words()) {
    for (const auto& lift : strategy_consistent_lifts(x, w)) {
      Rational product(1);
      for (std::size_t i = 0; i < w.length(); ++i) {
        const SignedLetter& p1 = lift[2 * i];
        const SignedLetter& p2 = lift[2 * i + 1];
        Rational mx = mu.weight(p1.symbol);
        // The inverse of Player 1's letter is not an edge of the lifted tree;
        // reduction-free lifts never contain it.
        if (p2.symbol == p1.symbol) product *= mx / (2 - mx);
        else product *= mu.weight(p2.symbol) / (2 - mx);
      }
      total += product;
    }
  }
  return total;
}

Rational lifted_stage_mass(const Measure& mu, Symbol x_i) {
  Rational mx = mu.weight(x_i);
  if (mu.is_geometric()) return mx / (2 - mx) + 2 * (1 - mx) / (2 - mx);
  Rational total = mx / (2 - mx);
  for (const auto& [a, w] : mu.atoms()) {
    if (a != x_i) total += 2 * w / (2 - mx);
  }
  return total;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Draws symbols exactly: integer rejection against a common denominator, or
// trailing zeros of a uniform 64-bit word for the geometric measure.
class Sampler {
 public:
  explicit Sampler(const Measure& mu) : geometric_(mu.is_geometric()) {
    if (geometric_) return;
    mpz_class den = 1;
    for (const auto& [s, w] : mu.atoms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), w.get_den().get_mpz_t());
    if (den > mpz_class("4611686018427387904")) throw std::invalid_argument("measure denominators too large to sample");
    denominator_ = std::stoull(den.get_str());
    std::uint64_t acc = 0;
    for (const auto& [s, w] : mu.atoms()) {
      mpz_class share = w.get_num() * (den / w.get_den());
      acc += std::stoull(share.get_str());
      cumulative_.emplace_back(acc, s);
    }
    limit_ = UINT64_MAX - (UINT64_MAX % denominator_ + 1) % denominator_;
  }

  Symbol draw(std::mt19937_64& rng) const {
    if (geometric_) {
      std::uint64_t r;
      do r = rng(); while (r == 0);
      return static_cast<Symbol>(__builtin_ctzll(r));
    }
    std::uint64_t r;
    do r = rng(); while (r > limit_);
    std::uint64_t v = r % denominator_;
    for (const auto& [bound, s] : cumulative_) {
      if (v < bound) return s;
    }
    return cumulative_.back().second;
  }

 private:
  bool geometric_;
  std::uint64_t denominator_ = 1;
  std::uint64_t limit_ = UINT64_MAX;
  std::vector<std::pair<std::uint64_t, Symbol>> cumulative_;
};

struct Trie {
  std::vector<std::map<Symbol, std::uint32_t>> children{{}};
  std::vector<bool> terminal{false};

  explicit Trie(const PrefixCode& c) {
    for (const auto& w : c.words()) {
      std::uint32_t node = 0;
      for (Symbol s : w.symbols()) {
        auto it = children[node].find(s);
        if (it == children[node].end()) {
          children.emplace_back();
          terminal.push_back(false);
          it = children[node].emplace(s, static_cast<std::uint32_t>(children.size() - 1)).first;
        }
        node = it->second;
      }
      terminal[node] = true;
    }
  }
};

constexpr std::uint64_t kBlock = 1 << 14;

}  // namespace

MonteCarloResult monte_carlo_hit(const PrefixCode& c, const std::vector<Symbol>& x, const Measure& mu,
                                 std::uint64_t trials, std::uint64_t seed, unsigned jobs) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (!is_prefix_code(c)) throw std::invalid_argument("Monte Carlo needs a prefix code");
  MonteCarloResult out;
  out.trials = trials;
  out.exact = measure_criterion(build_Z_from_code(c, Strategy::oblivious(x)), MeasureSpec::single(mu)).sum;

  const Trie trie(c);
  const Sampler sampler(mu);
  const std::uint64_t blocks = (trials + kBlock - 1) / kBlock;
  auto run = [&](unsigned worker, unsigned stride) {
    std::uint64_t hits = 0;
    for (std::uint64_t b = worker; b < blocks; b += stride) {
      std::mt19937_64 rng(splitmix64(seed ^ splitmix64(b)));
      const std::uint64_t n = std::min(kBlock, trials - b * kBlock);
      for (std::uint64_t t = 0; t < n; ++t) {
        std::uint32_t node = 0;
        while (!trie.terminal[node]) {
          auto it = trie.children[node].find(sampler.draw(rng));
          if (it == trie.children[node].end()) break;
          node = it->second;
        }
        hits += trie.terminal[node];
      }
    }
    return hits;
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(blocks)));
  if (jobs == 1) {
    out.hits = run(0, 1);
  } else {
    std::vector<std::future<std::uint64_t>> parts;
    for (unsigned w = 0; w < jobs; ++w) parts.push_back(std::async(std::launch::async, run, w, jobs));
    for (auto& p : parts) out.hits += p.get();
  }
  out.empirical = static_cast<double>(out.hits) / static_cast<double>(trials);
  const double p = out.exact.get_d();
  out.sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return out;
}

}  // namespace opengame
