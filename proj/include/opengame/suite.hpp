#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "opengame/rational.hpp"
#include "opengame/tree.hpp"

namespace opengame::suite {

// All even-normalized antichains over k=2 with lengths <= 4, including the
// empty set: 17^4 + 1 of them.
std::vector<PositionSet> exhaustive_binary_depth4();

// Every antichain of k=3 with Kraft sum 1 and lengths in {0, 2}.
std::vector<PositionSet> minimal_size_ternary_depth2();

// A random antichain of lengths <= depth. Odd lengths appear only when
// allow_odd is set.
PositionSet random_antichain(std::mt19937_64& rng, std::uint32_t k, std::size_t depth, bool allow_odd);

// A random minimal-size set: starting from {<>}, an element p is repeatedly
// replaced by {p.a_b.b : b in A} with independently drawn a_b.
PositionSet random_minimal_size(std::mt19937_64& rng, std::uint32_t k, std::size_t depth, int splits);

struct Options {
  std::uint64_t seed = 20261015;
  std::size_t random_instances = 1000;
  std::uint64_t mc_trials = 100000;
  unsigned jobs = 1;
};

struct BatteryResult {
  int criterion = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  std::vector<std::string> notes;
  double seconds = 0.0;
};

BatteryResult run_criterion(int criterion, const Options& options = {});
std::vector<BatteryResult> run_all(const Options& options = {});

inline constexpr int kCriteria = 9;

// "PASS 3 minimal-size extraction (1.2s): detail"
std::string format_line(const BatteryResult& r);

}  // namespace opengame::suite
