#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "opengame/rational.hpp"
#include "opengame/tree.hpp"

namespace opengame {

// An infinite family {u^{j-1} v : j >= 1} with |u| = |v| even, recognized
// from a truncation that lists at least its first two members.
struct PeriodicFamily {
  Position period;  // u
  Position tail;    // v
};

std::optional<PeriodicFamily> recognize_periodic_family(const PositionSet& z);

// Sum over Z of k^-floor(len/2). For a flagged infinite family of periodic
// shape this is the closed-form value of the whole family.
Rational kraft_sum(const PositionSet& z);

// True when kraft_sum(z) is the value of the full set z denotes: always for
// finite sets, and for infinite families only with a recognized closed form.
bool kraft_sum_is_exact(const PositionSet& z);

struct P2Certificate {
  Rational sum;
  std::string reason;
};

// Certificate that Player 2 wins: sum < 1, or sum <= 1 for an infinite family.
std::optional<P2Certificate> p2_certificate(const PositionSet& z);

// max over |p*| = n of k^floor(n/2) * sum_{p in Z, p* <= p} k^-floor(len/2).
// Requires n <= min length of Z; throws std::out_of_range otherwise.
Rational subtree_criterion(const PositionSet& z, std::size_t n);

bool is_minimal_size(const PositionSet& z);

// Root d of sum k^{-d len(p)} = 1 ("Moran exponent").
struct MoranRoot {
  double exponent = 0.0;
  double residual = 0.0;
  bool below_half = false;
  bool closed_form = false;
};

// Requires a nonempty even-normalized antichain without the empty position.
MoranRoot moran_dimension(const PositionSet& z);

// Exact sum k^{-len/2} over an even-normalized Z (family closed form when
// recognized); the threshold quantity the Moran exponent is compared to.
Rational half_power_sum(const PositionSet& z);

}  // namespace opengame
