#include "opengame/suite.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "opengame/codes.hpp"
#include "opengame/covering.hpp"
#include "opengame/criteria.hpp"
#include "opengame/free_group.hpp"
#include "opengame/solver.hpp"

namespace opengame::suite {

std::vector<PositionSet> exhaustive_binary_depth4() {
  std::vector<PositionSet> out;
  out.reserve(83522);
  out.emplace_back(2, std::vector<Position>{});
  out.emplace_back(2, std::vector<Position>{Position{}});
  // Each length-2 node contributes itself (digit 16) or a subset of its four
  // length-4 extensions (digits 0..15).
  for (std::uint32_t code = 1; code < 83521; ++code) {
    std::vector<Position> elems;
    std::uint32_t rest = code;
    for (Symbol node = 0; node < 4; ++node) {
      std::uint32_t digit = rest % 17;
      rest /= 17;
      Position p{node >> 1, node & 1};
      if (digit == 16) {
        elems.push_back(p);
        continue;
      }
      for (Symbol ext = 0; ext < 4; ++ext) {
        if (digit >> ext & 1) elems.push_back(p.extended(ext >> 1, ext & 1));
      }
    }
    out.emplace_back(2, std::move(elems));
  }
  return out;
}

std::vector<PositionSet> minimal_size_ternary_depth2() {
  std::vector<PositionSet> out{PositionSet(3, {Position{}})};
  for (std::uint32_t mask = 0; mask < (1u << 9); ++mask) {
    if (__builtin_popcount(mask) != 3) continue;
    std::vector<Position> elems;
    for (Symbol i = 0; i < 9; ++i) {
      if (mask >> i & 1) elems.push_back(Position{i / 3, i % 3});
    }
    out.emplace_back(3, std::move(elems));
  }
  return out;
}

namespace {

void grow(std::mt19937_64& rng, std::uint32_t k, std::size_t depth, bool allow_odd, const Position& node,
          std::vector<Position>& out) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const bool even = node.length() % 2 == 0;
  if (node.length() == depth) {
    if (u(rng) < 0.55) out.push_back(node);
    return;
  }
  double r = u(rng);
  if (even || allow_odd) {
    double stop = even ? 0.12 : 0.06;
    if (r < stop) {
      out.push_back(node);
      return;
    }
    if (even && r < stop + 0.1) return;
  }
  for (Symbol a = 0; a < k; ++a) grow(rng, k, depth, allow_odd, node.extended(a), out);
}

}  // namespace

PositionSet random_antichain(std::mt19937_64& rng, std::uint32_t k, std::size_t depth, bool allow_odd) {
  std::vector<Position> out;
  grow(rng, k, depth, allow_odd, Position{}, out);
  return PositionSet(k, std::move(out));
}

PositionSet random_minimal_size(std::mt19937_64& rng, std::uint32_t k, std::size_t depth, int splits) {
  std::vector<Position> elems{Position{}};
  for (int s = 0; s < splits; ++s) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (elems[i].length() + 2 <= depth) open.push_back(i);
    }
    if (open.empty()) break;
    std::size_t pick = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
    Position p = elems[pick];
    elems.erase(elems.begin() + static_cast<std::ptrdiff_t>(pick));
    std::uniform_int_distribution<Symbol> sym(0, k - 1);
    // Mostly a shared first move, so both winners show up.
    bool shared = std::uniform_int_distribution<int>(0, 2)(rng) != 0;
    Symbol common = sym(rng);
    for (Symbol b = 0; b < k; ++b) elems.push_back(p.extended(shared ? common : sym(rng), b));
  }
  return PositionSet(k, std::move(elems));
}

namespace {

using Clock = std::chrono::steady_clock;

std::string show(const PositionSet& z) {
  std::string out = "{";
  for (std::size_t i = 0; i < z.size(); ++i) out += (i ? "," : "") + to_string(z.elements()[i]);
  return out + "}";
}

// Collects failures; keeps the first few for the report.
struct Tally {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<std::string> samples;

  void check(bool ok, const std::function<std::string()>& describe) {
    ++checked;
    if (ok) return;
    ++failures;
    if (samples.size() < 3) samples.push_back(describe());
  }
  std::string summary(const std::string& what) const {
    std::string s = std::to_string(checked) + " " + what + ", " + std::to_string(failures) + " failures";
    for (const auto& e : samples) s += "; " + e;
    return s;
  }
};

struct Record {
  const PositionSet* z;
  int winner;
  Rational kraft;
};

const std::vector<PositionSet>& exhaustive() {
  static const std::vector<PositionSet> sets = exhaustive_binary_depth4();
  return sets;
}

std::vector<Record> solved_exhaustive() {
  std::vector<Record> out;
  out.reserve(exhaustive().size());
  for (const auto& z : exhaustive()) out.push_back({&z, solve(GameInstance(z)).winner, kraft_sum(z)});
  return out;
}

PositionSet example_family(std::size_t m, bool infinite) {
  std::vector<Position> elems;
  Position prefix;
  for (std::size_t j = 0; j < m; ++j) {
    elems.push_back(prefix.concat(Position{0, 0}));
    prefix = prefix.concat(Position{0, 1});
  }
  return PositionSet(2, std::move(elems), infinite);
}

BatteryResult solver_soundness(const Options& o) {
  BatteryResult r{1, "solver soundness", false, "", {}, 0.0};
  auto start = Clock::now();
  Tally t;
  for (const auto& z : exhaustive()) {
    GameInstance g(z);
    int a = solve(g).winner, b = brute_force_oracle(g);
    t.check(a == b, [&] { return show(z) + " solve " + std::to_string(a) + " oracle " + std::to_string(b); });
  }
  std::mt19937_64 rng(o.seed);
  std::size_t p1 = 0;
  for (std::size_t i = 0; i < o.random_instances; ++i) {
    std::uint32_t k = i % 2 == 0 ? 2 : 3;
    std::size_t depth = 2 + 2 * (i / 2 % 3);
    PositionSet z = random_antichain(rng, k, depth, i % 5 == 4);
    GameInstance g(z);
    SolveOptions so;
    so.jobs = o.jobs;
    int a = solve(g, so).winner, b = brute_force_oracle(g);
    p1 += a == 1;
    t.check(a == b, [&] { return show(z) + " solve " + std::to_string(a) + " oracle " + std::to_string(b); });
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.notes.push_back(std::to_string(o.random_instances) + " random instances, " + std::to_string(p1) +
                    " won by Player 1");
  r.passed = t.failures == 0 && t.checked >= exhaustive().size() + 1000 && r.seconds <= 120.0;
  r.detail = t.summary("games") + (r.seconds > 120.0 ? "; runtime above 2 minutes" : "");
  return r;
}

BatteryResult kraft_necessity(const Options&) {
  BatteryResult r{2, "Kraft necessity", false, "", {}, 0.0};
  auto start = Clock::now();
  Tally t;
  for (const auto& rec : solved_exhaustive()) {
    bool ok = rec.winner != 1 || compare_to_one(rec.kraft) >= 0;
    ok = ok && (compare_to_one(rec.kraft) >= 0 || rec.winner == 2);
    t.check(ok, [&] { return show(*rec.z) + " sum " + to_fraction(rec.kraft); });
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.passed = t.failures == 0;
  r.detail = t.summary("instances");
  return r;
}

BatteryResult extraction(const Options&) {
  BatteryResult r{3, "minimal-size extraction", false, "", {}, 0.0};
  auto start = Clock::now();
  Tally t;
  for (const auto& rec : solved_exhaustive()) {
    if (rec.winner != 1) continue;
    bool ok = false;
    std::string why;
    try {
      PositionSet zp = extract_minimal_size(GameInstance(*rec.z));
      bool subset = std::all_of(zp.elements().begin(), zp.elements().end(),
                                [&](const Position& p) { return rec.z->contains(p); });
      ok = subset && kraft_sum(zp) == 1 && solve(GameInstance(zp)).winner == 1;
      why = show(zp);
    } catch (const std::exception& e) {
      why = e.what();
    }
    t.check(ok, [&] { return show(*rec.z) + " -> " + why; });
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.passed = t.failures == 0 && t.checked > 0;
  r.detail = t.summary("Player 1 wins");
  return r;
}

BatteryResult code_equivalence(const Options& o) {
  BatteryResult r{4, "maximal-code equivalence", false, "", {}, 0.0};
  auto start = Clock::now();
  Tally t;
  std::size_t forwardFailures = 0, converseFailures = 0;
  auto run = [&](const PositionSet& z) {
    std::string why;
    bool ok = false;
    try {
      EquivalenceVerdict v = theorem_equivalence_check(z);
      ok = v.equivalence_holds;
      forwardFailures += v.winner == 1 && !v.all_maximal;
      converseFailures += v.winner == 2 && v.all_maximal;
      why = "winner " + std::to_string(v.winner) + (v.all_maximal ? ", every C_x maximal" : ", witness found");
    } catch (const std::exception& e) {
      why = e.what();
    }
    t.check(ok, [&] { return show(z) + ": " + why; });
  };
  std::size_t binary = 0;
  for (const auto& z : exhaustive()) {
    if (!is_minimal_size(z)) continue;
    ++binary;
    run(z);
  }
  const auto ternary = minimal_size_ternary_depth2();
  std::size_t fullAgree = 0;
  for (const auto& z : ternary) {
    run(z);
    // Normalized x against the whole of M_k.
    EquivalenceOptions full;
    full.full_functions = true;
    bool agree = theorem_equivalence_check(z).all_maximal == theorem_equivalence_check(z, full).all_maximal;
    fullAgree += agree;
    t.check(agree, [&] { return show(z) + ": normalized and full x-spaces disagree"; });
  }
  std::mt19937_64 rng(o.seed ^ 0x4c);
  const std::size_t sampled = 200;
  for (std::size_t i = 0; i < sampled; ++i) run(random_minimal_size(rng, 3, 4, 1 + static_cast<int>(i % 4)));
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.notes.push_back(std::to_string(binary) + " binary sets (depth <= 4), " + std::to_string(ternary.size()) +
                    " ternary sets (depth <= 2, full M_3 cross-check), " + std::to_string(sampled) +
                    " sampled ternary sets (depth <= 4)");
  r.notes.push_back("winner 1 with a non-maximal C_x: " + std::to_string(forwardFailures) +
                    "; winner 2 with every C_x maximal: " + std::to_string(converseFailures));
  r.passed = t.failures == 0 && fullAgree == ternary.size();
  r.detail = t.summary("checks");
  return r;
}

BatteryResult identity(const Options&) {
  BatteryResult r{5, "covering identity", false, "", {}, 0.0};
  auto start = Clock::now();
  Tally t;
  const PrefixCode example(2, {Position{1}, Position{0, 1}, Position{0, 0, 1}, Position{0, 0, 0}});
  {
    IdentityReport rep = identity_sum(example, {1, 1, 1});
    t.check(rep.sum == 1, [&] { return "example code sums to " + to_fraction(rep.sum); });
    for (const auto& w : example.words()) {
      IdentityReport less = identity_sum(example.without(w), {1, 1, 1});
      t.check(less.verdict == Verdict::less_than_one,
              [&] { return "example minus " + to_string(w) + " gives " + to_fraction(less.sum); });
    }
  }
  for (std::size_t n = 1; n <= 8; ++n) {
    PrefixCode c = uniform_code(2, n);
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      std::vector<Symbol> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = bits >> i & 1;
      IdentityReport rep = identity_sum(c, x);
      t.check(rep.sum == 1, [&] { return "{0,1}^" + std::to_string(n) + " sums to " + to_fraction(rep.sum); });
      for (const auto& w : c.words()) {
        IdentityReport less = identity_sum(c.without(w), x);
        t.check(less.verdict == Verdict::less_than_one, [&] {
          return "{0,1}^" + std::to_string(n) + " minus " + to_string(w) + " gives " + to_fraction(less.sum);
        });
      }
    }
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.notes.push_back("every single-codeword removal checked against every x");
  r.passed = t.failures == 0;
  r.detail = t.summary("exact comparisons");
  return r;
}

BatteryResult free_group_battery(const Options& o) {
  BatteryResult r{6, "free-group index", false, "", {}, 0.0};
  auto start = Clock::now();
  Tally t;
  auto gensFig = parse_generators("b,aba,aBa");
  auto gensAll = parse_generators("a,b");
  auto gensTwo = parse_generators("aa,b,abA");
  IndexResult fig = subgroup_index(gensFig, 2);
  t.check(fig.graph.vertex_count() == 3 && !fig.value, [&] {
    return "b,aba,aBa: " + std::to_string(fig.graph.vertex_count()) + " vertices, index " +
           (fig.value ? std::to_string(*fig.value) : std::string("infinite"));
  });
  IndexResult all = subgroup_index(gensAll, 2);
  t.check(all.value == 1u && all.rank == 2, [&] { return std::string("a,b: index is not 1"); });
  IndexResult two = subgroup_index(gensTwo, 2);
  t.check(two.value == 2u && two.rank == 3, [&] {
    return "aa,b,abA: index " + (two.value ? std::to_string(*two.value) : std::string("infinite")) + ", rank " +
           std::to_string(two.rank);
  });
  std::mt19937_64 rng(o.seed ^ 0xf0);
  for (const auto* gens : {&gensFig, &gensAll, &gensTwo}) {
    LabeledGraph reference = fold(*gens);
    for (int i = 0; i < 100; ++i) {
      LabeledGraph shuffled = fold(*gens, rng());
      t.check(isomorphic(reference, shuffled), [&] { return std::string("fold order changed the core graph"); });
    }
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.passed = t.failures == 0;
  r.detail = t.summary("checks (3 instances, 100 fold orders each)");
  return r;
}

BatteryResult hat_criterion(const Options&) {
  BatteryResult r{7, "hat-map index", false, "", {}, 0.0};
  auto start = Clock::now();
  Tally t;
  std::size_t infiniteMinimal = 0, others = 0, otherFailures = 0;
  for (const auto& rec : solved_exhaustive()) {
    const PositionSet& z = *rec.z;
    const bool degenerate = z.size() == 1 && z.elements().front().empty();
    IndexResult h = hat_index(z);
    if (rec.winner == 1) {
      t.check(h.value.has_value(), [&] {
        return show(z) + " is won by Player 1 but its hat image generates an infinite-index subgroup";
      });
      if (!degenerate) {
        ++others;
        otherFailures += !h.value.has_value();
      }
    }
    if (rec.kraft == 1 && !h.value) {
      ++infiniteMinimal;
      t.check(rec.winner == 2, [&] { return show(z) + " has infinite hat index yet Player 1 wins"; });
      if (!degenerate) {
        ++others;
        otherFailures += rec.winner != 2;
      }
    }
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.notes.push_back("{<>} is won at the root, but its hat image is the empty word, so the subgroup is trivial");
  r.notes.push_back("excluding {<>}: " + std::to_string(others) + " checks, " + std::to_string(otherFailures) +
                    " failures");
  r.notes.push_back(std::to_string(infiniteMinimal) + " minimal-size instances with infinite hat index");
  r.passed = t.failures == 0;
  r.detail = t.summary("checks");
  return r;
}

BatteryResult moran(const Options&) {
  BatteryResult r{8, "Moran threshold", false, "", {}, 0.0};
  auto start = Clock::now();
  Tally t;
  MoranRoot fam = moran_dimension(example_family(3, true));
  t.check(std::abs(fam.exponent - 0.5) <= 1e-9, [&] { return "family exponent " + std::to_string(fam.exponent); });
  std::size_t skipped = 0;
  for (const auto& z : exhaustive()) {
    if (z.empty() || z.min_length() == 0) {
      ++skipped;
      continue;
    }
    bool ok = false;
    try {
      MoranRoot m = moran_dimension(z);
      ok = m.below_half == (compare_to_one(half_power_sum(z)) < 0);
    } catch (const std::exception&) {
      ok = false;
    }
    t.check(ok, [&] { return show(z) + " threshold disagreement"; });
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream fe;
  fe << std::setprecision(17) << fam.exponent;
  r.notes.push_back("infinite family exponent " + fe.str());
  r.notes.push_back("excluded the empty set and {<>}, where the exponent is undefined (" +
                    std::to_string(skipped) + " instances)");
  r.passed = t.failures == 0;
  r.detail = t.summary("checks");
  return r;
}

struct McCase {
  PrefixCode code;
  std::vector<Symbol> x;
  Measure mu;
};

std::vector<McCase> mc_cases() {
  auto w = [](std::initializer_list<std::pair<Symbol, const char*>> atoms) {
    std::map<Symbol, Rational> m;
    for (const auto& [s, v] : atoms) m.emplace(s, parse_rational(v));
    return Measure::weights(std::move(m));
  };
  const PrefixCode example(2, {Position{1}, Position{0, 1}, Position{0, 0, 1}, Position{0, 0, 0}});
  const PrefixCode single(2, {Position{0, 0}});
  const PrefixCode one(2, {Position{0}});
  const PrefixCode ternary(3, {Position{0}, Position{1, 0}, Position{1, 1}, Position{2, 2, 1}});
  const PrefixCode letters(5, {Position{0}, Position{1}, Position{2}, Position{3}, Position{4}});
  return {
      {uniform_code(2, 2), {0, 0}, Measure::uniform(2)},
      {single, {0, 0}, Measure::uniform(2)},
      {one, {0}, w({{0, "1/3"}, {1, "2/3"}})},
      {example, {1, 1, 1}, Measure::uniform(2)},
      {example, {0, 0, 0}, w({{0, "1/3"}, {1, "2/3"}})},
      {example.without(Position{1}), {1, 1, 1}, Measure::uniform(2)},
      {example.without(Position{0, 0, 0}), {0, 1, 0}, w({{0, "3/4"}, {1, "1/4"}})},
      {uniform_code(2, 3), {1, 0, 1}, w({{0, "1/5"}, {1, "4/5"}})},
      {uniform_code(2, 3).without(Position{1, 1, 1}), {1, 1, 1}, w({{0, "1/5"}, {1, "4/5"}})},
      {PrefixCode(2, {Position{1}, Position{0, 1}}), {0, 0}, w({{0, "1/4"}, {1, "3/4"}})},
      {PrefixCode(2, {Position{0, 1, 1}, Position{1, 0}}), {0, 0, 0}, Measure::uniform(2)},
      {uniform_code(3, 2), {2, 1}, Measure::uniform(3)},
      {ternary, {1, 1, 1}, Measure::uniform(3)},
      {ternary, {0, 2, 2}, w({{0, "1/2"}, {1, "1/3"}, {2, "1/6"}})},
      {uniform_code(3, 1), {0}, w({{0, "1/7"}, {1, "2/7"}, {2, "4/7"}})},
      {uniform_code(3, 1).without(Position{2}), {2}, w({{0, "1/7"}, {1, "2/7"}, {2, "4/7"}})},
      {letters, {0}, Measure::geometric2()},
      {PrefixCode(5, {Position{0}, Position{1, 0}, Position{1, 1}}), {1, 1}, Measure::geometric2()},
      {uniform_code(2, 4), {0, 1, 1, 0}, w({{0, "2/3"}, {1, "1/3"}})},
      {PrefixCode(2, {Position{0, 0, 0, 0}, Position{1, 1}}), {0, 0, 0, 0}, w({{0, "9/10"}, {1, "1/10"}})},
  };
}

BatteryResult measures(const Options& o) {
  BatteryResult r{9, "measure-weighted criteria", false, "", {}, 0.0};
  auto start = Clock::now();
  Tally t;
  const MeasureSpec uniform2 = MeasureSpec::single(Measure::uniform(2));
  for (const auto& z : exhaustive()) {
    Rational m = measure_criterion(z, uniform2).sum;
    t.check(m == kraft_sum(z), [&] { return show(z) + " measure sum " + to_fraction(m); });
  }
  // Uniform weighted identity against the plain identity, every x.
  std::vector<PrefixCode> codes;
  for (std::size_t n = 1; n <= 4; ++n) {
    codes.push_back(uniform_code(2, n));
    codes.push_back(uniform_code(2, n).without(Position(std::vector<Symbol>(n, 1))));
  }
  codes.push_back(PrefixCode(2, {Position{1}, Position{0, 1}, Position{0, 0, 1}, Position{0, 0, 0}}));
  codes.push_back(PrefixCode(3, {Position{0}, Position{1, 0}, Position{1, 1}, Position{2, 2, 1}}));
  codes.push_back(uniform_code(3, 2));
  for (const auto& c : codes) {
    const std::uint32_t k = c.alphabet_size();
    const std::size_t n = c.max_length();
    const Measure mu = Measure::uniform(k);
    std::vector<Symbol> x(n, 0);
    for (mpz_class i = 0; i < integer_power(k, n); ++i) {
      Rational a = weighted_identity(c, x, mu).sum, b = identity_sum(c, x).sum;
      t.check(a == b, [&] { return "weighted " + to_fraction(a) + " vs " + to_fraction(b); });
      for (std::size_t j = n; j-- > 0;) {
        if (++x[j] < k) break;
        x[j] = 0;
      }
    }
  }
  std::size_t idx = 0;
  for (const auto& mc : mc_cases()) {
    MonteCarloResult res = monte_carlo_hit(mc.code, mc.x, mc.mu, o.mc_trials, o.seed + idx, o.jobs);
    double exact = res.exact.get_d();
    double bound = 3.0 * res.sigma;
    bool ok = res.sigma == 0.0 ? res.empirical == exact : std::abs(res.empirical - exact) <= bound;
    t.check(ok, [&] {
      std::ostringstream os;
      os << "case " << idx << " empirical " << res.empirical << " exact " << to_fraction(res.exact);
      return os.str();
    });
    ++idx;
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.notes.push_back(std::to_string(idx) + " Monte Carlo cases at " + std::to_string(o.mc_trials) + " trials");
  r.passed = t.failures == 0 && r.seconds <= 60.0;
  r.detail = t.summary("checks") + (r.seconds > 60.0 ? "; runtime above 1 minute" : "");
  return r;
}

}  // namespace

BatteryResult run_criterion(int criterion, const Options& options) {
  switch (criterion) {
    case 1: return solver_soundness(options);
    case 2: return kraft_necessity(options);
    case 3: return extraction(options);
    case 4: return code_equivalence(options);
    case 5: return identity(options);
    case 6: return free_group_battery(options);
    case 7: return hat_criterion(options);
    case 8: return moran(options);
    case 9: return measures(options);
    default: throw std::out_of_range("no criterion " + std::to_string(criterion));
  }
}

std::vector<BatteryResult> run_all(const Options& options) {
  std::vector<BatteryResult> out;
  for (int c = 1; c <= kCriteria; ++c) out.push_back(run_criterion(c, options));
  return out;
}

std::string format_line(const BatteryResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " " << r.criterion << " " << r.name << " (" << std::fixed
     << std::setprecision(1) << r.seconds << "s): " << r.detail;
  return os.str();
}

}  // namespace opengame::suite
