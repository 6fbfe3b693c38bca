#include "opengame/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "opengame/error.hpp"

namespace opengame {

std::optional<PeriodicFamily> recognize_periodic_family(const PositionSet& z) {
  if (z.size() < 2) return std::nullopt;
  std::vector<Position> byLength(z.elements().begin(), z.elements().end());
  std::sort(byLength.begin(), byLength.end(),
            [](const Position& a, const Position& b) { return a.length() < b.length(); });
  const std::size_t block = byLength.front().length();
  if (block == 0 || block % 2 != 0) return std::nullopt;
  const Position& tail = byLength[0];
  Position period = byLength[1].prefix(block);
  if (period == tail) return std::nullopt;
  Position expected = tail;
  for (const auto& p : byLength) {
    if (p != expected) return std::nullopt;
    expected = period.concat(expected);
  }
  return PeriodicFamily{period, tail};
}

namespace {

// r = k^{-|u|/2}; the family sums to r + r^2 + ... = r / (1 - r).
Rational family_kraft(std::uint32_t k, const PeriodicFamily& f) {
  Rational r = inverse_power(k, f.tail.length() / 2);
  Rational out = r / (Rational(1) - r);
  return out;
}

Rational finite_kraft(const PositionSet& z) {
  // Common denominator k^m keeps the accumulation in integers.
  std::size_t m = 0;
  for (const auto& p : z.elements()) m = std::max(m, p.length() / 2);
  mpz_class num = 0;
  for (const auto& p : z.elements()) num += integer_power(z.alphabet_size(), m - p.length() / 2);
  Rational out(num, integer_power(z.alphabet_size(), m));
  out.canonicalize();
  return out;
}

}  // namespace

Rational kraft_sum(const PositionSet& z) {
  if (z.infinite_family()) {
    if (auto f = recognize_periodic_family(z)) return family_kraft(z.alphabet_size(), *f);
  }
  return finite_kraft(z);
}

bool kraft_sum_is_exact(const PositionSet& z) {
  return !z.infinite_family() || recognize_periodic_family(z).has_value();
}

std::optional<P2Certificate> p2_certificate(const PositionSet& z) {
  if (!kraft_sum_is_exact(z)) return std::nullopt;
  Rational sum = kraft_sum(z);
  int c = compare_to_one(sum);
  if (c < 0) return P2Certificate{sum, "kraft sum below 1"};
  if (c == 0 && z.infinite_family()) return P2Certificate{sum, "infinite family with kraft sum 1"};
  return std::nullopt;
}

Rational subtree_criterion(const PositionSet& z, std::size_t n) {
  if (z.empty()) return Rational(0);
  if (n > z.min_length()) {
    throw std::out_of_range("subtree depth " + std::to_string(n) + " exceeds the minimum length " +
                            std::to_string(z.min_length()));
  }
  const std::uint32_t k = z.alphabet_size();
  std::map<Position, Rational> bySubtree;
  for (const auto& p : z.elements()) {
    bySubtree[p.prefix(n)] += inverse_power(k, p.length() / 2);
  }
  Rational best(0);
  for (const auto& [root, sum] : bySubtree) {
    Rational scaled = sum * Rational(integer_power(k, n / 2));
    if (scaled > best) best = scaled;
  }
  return best;
}

bool is_minimal_size(const PositionSet& z) { return compare_to_one(kraft_sum(z)) == 0; }

Rational half_power_sum(const PositionSet& z) {
  if (!z.is_even_normalized()) {
    throw std::invalid_argument("half-power sum requires even-length positions");
  }
  return kraft_sum(z);
}

MoranRoot moran_dimension(const PositionSet& z) {
  if (z.empty()) throw std::invalid_argument("Moran exponent of an empty set is undefined");
  if (!z.is_even_normalized() || !z.is_antichain()) {
    throw std::invalid_argument("Moran exponent requires an even-normalized antichain");
  }
  if (z.min_length() == 0) {
    throw std::invalid_argument("Moran exponent is undefined when the empty position is present");
  }
  const double k = z.alphabet_size();
  std::optional<PeriodicFamily> family;
  if (z.infinite_family()) family = recognize_periodic_family(z);

  std::vector<double> lengths;
  for (const auto& p : z.elements()) lengths.push_back(static_cast<double>(p.length()));
  auto f = [&](double d) {
    if (family) {
      double r = std::pow(k, -d * static_cast<double>(family->tail.length()));
      return r / (1.0 - r);
    }
    double s = 0.0;
    for (double len : lengths) s += std::pow(k, -d * len);
    return s;
  };

  // f is strictly decreasing. The first split at 1/2 is decided exactly.
  MoranRoot out;
  out.closed_form = family.has_value();
  int atHalf = compare_to_one(half_power_sum(z));
  double lo = 0.0, hi = 1.0;
  if (atHalf == 0) {
    out.exponent = 0.5;
  } else {
    if (atHalf < 0) hi = 0.5;
    else lo = 0.5;
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (f(mid) > 1.0) lo = mid;
      else hi = mid;
    }
    // Pick the bracket end with the smaller residual.
    out.exponent = std::abs(f(lo) - 1.0) <= std::abs(f(hi) - 1.0) ? lo : hi;
  }
  out.residual = std::abs(f(out.exponent) - 1.0);
  out.below_half = out.exponent < 0.5;
  if (out.residual >= 1e-12) {
    throw InvariantViolation("Moran root residual " + std::to_string(out.residual) +
                             " exceeds 1e-12");
  }
  if (out.below_half != (atHalf < 0)) {
    throw InvariantViolation("Moran exponent disagrees with the half-power threshold");
  }
  return out;
}

}  // namespace opengame
