// opengame: command-line front end for the open-game library.
//
// Exit status: 0 success, 1 a checked property failed, 2 usage error or
// malformed input.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "opengame/codes.hpp"
#include "opengame/covering.hpp"
#include "opengame/criteria.hpp"
#include "opengame/free_group.hpp"
#include "opengame/io.hpp"
#include "opengame/solver.hpp"
#include "opengame/suite.hpp"

namespace og = opengame;
namespace io = opengame::io;

namespace {

constexpr int kViolation = 1;
constexpr int kUsage = 2;

void print(const io::json& j) { std::cout << io::emit(j) << std::flush; }

std::vector<og::GroupWord> generators_arg(const std::string& arg) {
  if (arg.size() > 5 && arg.ends_with(".json") && std::filesystem::exists(arg)) {
    return io::generators_from_json(io::load_file(arg));
  }
  return og::parse_generators(arg);
}

std::string index_line(const og::IndexResult& r) {
  const std::string vertices = std::to_string(r.graph.vertex_count()) + " vertices";
  if (!r.value) return "infinite (core: " + vertices + ")";
  return std::to_string(*r.value) + " (core: " + vertices + ", rank " + std::to_string(r.rank) + ")";
}

std::string identity_line(const og::IdentityReport& r) {
  std::string out = og::to_fraction(r.sum) + " (" + og::verdict_name(r.verdict);
  if (r.partial) out += ", partial";
  if (r.limit) out += ", limit " + og::to_fraction(*r.limit);
  return out + ")";
}

og::XVector xvector_arg(const std::string& arg, std::uint32_t k) {
  if (std::filesystem::exists(arg)) return io::xvector_from_json(io::load_file(arg), k);
  return io::xvector_from_json(io::parse_text(arg, "--x"), k);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open Gale-Stewart games, prefix codes and free-group indices"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned jobs = 1;
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));

  std::string file, file2, word, gens, xarg;
  std::uint64_t budget = 0;
  bool oracle = false, moran = false, dot = false, json_out = false, averaged = false, full = false;
  std::optional<std::size_t> subtree, n;
  std::optional<std::uint64_t> seed;
  std::uint32_t k = 2;
  std::size_t choice = 0;
  std::uint64_t trials = 100000, mc_seed = 1;
  int criterion = 0;

  auto* solve = app.add_subcommand("solve", "decide the winner of a game");
  solve->add_option("instance", file, "game JSON")->required();
  solve->add_flag("--oracle", oracle, "cross-check with brute-force minimax");
  solve->add_option("--budget", budget, "node budget (default OPENGAME_BUDGET or 2^24)");

  auto* kraft = app.add_subcommand("kraft", "Kraft-type sums and certificates");
  kraft->add_option("instance", file, "game JSON")->required();
  kraft->add_option("--subtree", subtree, "subtree depth n");
  kraft->add_flag("--moran", moran, "Moran exponent of Z_concat");
  kraft->add_option("--measure", file2, "per-stage measure JSON for the weighted criterion");

  auto* minimize = app.add_subcommand("minimize", "extract a minimal-size winning subset");
  minimize->add_option("instance", file, "game JSON")->required();

  auto* codes = app.add_subcommand("codes", "prefix codes and the c_x encodings");
  codes->require_subcommand(1);
  auto* check = codes->add_subcommand("check", "prefix, bifix and maximality");
  check->add_option("code", file, "code JSON")->required();
  auto* cx = codes->add_subcommand("cx", "the code C_x(Z)");
  cx->add_option("instance", file, "game JSON")->required();
  cx->add_option("--x", xarg, "x-vector JSON file or inline JSON")->required();
  auto* equiv = codes->add_subcommand("equiv", "winner versus maximality of every C_x(Z)");
  equiv->add_option("instance", file, "game JSON")->required();
  equiv->add_flag("--full", full, "enumerate all of (M_k)^d instead of normalized x");
  auto* build = codes->add_subcommand("build", "Z_{s1}(C) for an oblivious strategy");
  build->add_option("code", file, "code JSON")->required();
  build->add_option("--x", word, "Player 1 moves, e.g. 111")->required();
  auto* subset = codes->add_subcommand("subset", "bounded generating subset Z'");
  subset->add_option("instance", file, "game JSON")->required();
  subset->add_option("--x", xarg, "x-vector JSON file or inline JSON")->required();
  subset->add_option("--choice", choice, "starting sibling group");

  auto* foldCmd = app.add_subcommand("fold", "Stallings core graph");
  foldCmd->add_option("generators", gens, "e.g. b,aba,aBa or a generators JSON file")->required();
  foldCmd->add_flag("--dot", dot, "emit DOT");
  foldCmd->add_option("--seed", seed, "shuffle the fold order");

  auto* indexCmd = app.add_subcommand("index", "subgroup index in F_k");
  indexCmd->add_option("generators", gens, "e.g. b,aba,aBa")->required();
  indexCmd->add_option("-k", k, "rank of the free group")->check(CLI::Range(1u, 26u));
  indexCmd->add_flag("--json", json_out, "JSON report");

  auto* member = app.add_subcommand("member", "subgroup membership");
  member->add_option("word", word, "e.g. abaB")->required();
  member->add_option("generators", gens, "e.g. b,aba,aBa")->required();
  member->add_flag("--json", json_out, "JSON report");

  auto* hatCmd = app.add_subcommand("hat-index", "index of the subgroup generated by the hat image");
  hatCmd->add_option("instance", file, "game JSON")->required();

  auto* identity = app.add_subcommand("identity", "covering identity for a prefix code");
  identity->add_option("code", file, "code JSON")->required();
  identity->add_option("--x", word, "Player 1 moves, e.g. 111");
  identity->add_flag("--averaged", averaged, "average over every x of length n");
  identity->add_option("-n", n, "length for --averaged");
  identity->add_flag("--json", json_out, "JSON report");

  auto* weighted = app.add_subcommand("weighted", "measure-weighted identity");
  weighted->add_option("code", file, "code JSON")->required();
  weighted->add_option("--measure", file2, "measure JSON")->required();
  weighted->add_option("--x", word, "Player 1 moves")->required();

  auto* mc = app.add_subcommand("mc", "Monte Carlo hit frequency");
  mc->add_option("code", file, "code JSON")->required();
  mc->add_option("--measure", file2, "measure JSON (default uniform)");
  mc->add_option("--x", word, "Player 1 moves (default all zero)");
  mc->add_option("--trials", trials, "number of plays")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  mc->add_option("--seed", mc_seed, "64-bit seed");

  auto* suiteCmd = app.add_subcommand("suite", "run the acceptance batteries");
  suiteCmd->add_option("--criterion", criterion, "run one criterion (1-9)")->check(CLI::Range(1, og::suite::kCriteria));
  suiteCmd->add_option("--seed", mc_seed, "seed for random instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (budget == 0) budget = og::budget_from_env(og::kDefaultBudget);
    auto load_game = [&] { return io::position_set_from_json(io::load_file(file)); };
    auto load_code = [&] { return io::code_from_json(io::load_file(file)); };

    if (*solve) {
      og::GameInstance g(load_game());
      og::SolveOptions so{budget, jobs};
      og::SolveReport r = og::solve(g, so);
      io::json out = io::to_json(r);
      if (oracle) {
        int o = og::brute_force_oracle(g, budget);
        out["oracle_winner"] = o;
        out["oracle_agrees"] = o == r.winner || r.certificate.has_value();
        print(out);
        return out["oracle_agrees"].get<bool>() ? 0 : kViolation;
      }
      print(out);
      return 0;
    }
    if (*kraft) {
      og::PositionSet z = load_game();
      io::json out = {{"sum", og::to_fraction(og::kraft_sum(z))},
                      {"exact", og::kraft_sum_is_exact(z)},
                      {"minimal_size", og::kraft_sum_is_exact(z) && og::is_minimal_size(z)}};
      if (auto cert = og::p2_certificate(z)) {
        out["p2_certificate"] = {{"sum", og::to_fraction(cert->sum)}, {"reason", cert->reason}};
      } else {
        out["p2_certificate"] = nullptr;
      }
      if (subtree) out["subtree"] = {{"n", *subtree}, {"value", og::to_fraction(og::subtree_criterion(z, *subtree))}};
      if (moran) out["moran"] = io::to_json(og::moran_dimension(og::normalize_even(z)));
      if (!file2.empty()) {
        og::MeasureCriterion m = og::measure_criterion(z, io::measure_spec_from_json(io::load_file(file2)));
        out["measure"] = {{"sum", og::to_fraction(m.sum)}, {"p2_certificate", m.p2_certificate}};
      }
      print(out);
      return 0;
    }
    if (*minimize) {
      og::GameInstance g(load_game());
      print(io::to_json(og::extract_minimal_size(g, og::SolveOptions{budget, jobs})));
      return 0;
    }
    if (*codes) {
      if (*check) {
        og::PrefixCode c = load_code();
        bool prefix = og::is_prefix_code(c);
        io::json out = {{"prefix_code", prefix},
                        {"bifix_code", og::is_bifix_code(c)},
                        {"kraft_sum", og::to_fraction(og::code_kraft_sum(c))}};
        out["maximal"] = prefix ? io::json(og::is_maximal(c)) : io::json(nullptr);
        print(out);
        return 0;
      }
      if (*cx) {
        og::PositionSet z = load_game();
        print(io::to_json(og::cx_code(z, xvector_arg(xarg, z.alphabet_size()))));
        return 0;
      }
      if (*equiv) {
        og::EquivalenceOptions eo{full, budget};
        og::EquivalenceVerdict v = og::theorem_equivalence_check(load_game(), eo);
        print(io::to_json(v));
        return v.equivalence_holds ? 0 : kViolation;
      }
      if (*build) {
        og::PrefixCode c = load_code();
        auto x = io::parse_symbols(word, c.alphabet_size());
        print(io::to_json(og::build_Z_from_code(c, og::Strategy::oblivious(x))));
        return 0;
      }
      if (*subset) {
        og::PositionSet z = load_game();
        og::XVector x = xvector_arg(xarg, z.alphabet_size());
        og::PositionSet zp = og::extract_generating_subset(z, x, choice);
        const og::PrefixCode image = og::cx_code(zp, x);
        std::vector<og::GroupWord> words;
        for (const auto& p : image.words()) words.push_back(og::word_from_position(p));
        og::IndexResult idx = og::subgroup_index(words, z.alphabet_size());
        io::json out = io::to_json(zp);
        out["cx_index"] = idx.value ? io::json(*idx.value) : io::json("infinite");
        out["choices"] = og::generating_subset_choices(z, x);
        print(out);
        return idx.value ? 0 : kViolation;
      }
    }
    if (*foldCmd) {
      og::LabeledGraph g = og::fold(generators_arg(gens), seed);
      if (dot) std::cout << g.to_dot() << std::flush;
      else print(io::to_json(g));
      return 0;
    }
    if (*indexCmd) {
      og::IndexResult r = og::subgroup_index(generators_arg(gens), k);
      if (json_out) print(io::to_json(r));
      else std::cout << index_line(r) << std::endl;
      return 0;
    }
    if (*member) {
      bool in = og::membership(og::parse_word(word), generators_arg(gens));
      if (json_out) print({{"word", word}, {"member", in}});
      else std::cout << (in ? "true" : "false") << std::endl;
      return 0;
    }
    if (*hatCmd) {
      og::PositionSet z = load_game();
      print(io::to_json(og::hat_index(z)));
      return 0;
    }
    if (*identity) {
      og::PrefixCode c = load_code();
      og::IdentityReport r;
      if (averaged) {
        if (!n) throw CLI::RequiredError("-n");
        r = og::averaged_identity(c, *n, budget);
      } else {
        if (word.empty() && c.max_length() > 0) throw CLI::RequiredError("--x");
        r = og::identity_sum(c, io::parse_symbols(word, c.alphabet_size()));
      }
      if (json_out) print(io::to_json(r));
      else std::cout << identity_line(r) << std::endl;
      return 0;
    }
    if (*weighted) {
      og::PrefixCode c = load_code();
      og::MeasureSpec m = io::measure_spec_from_json(io::load_file(file2));
      if (m.per_stage) throw io::ParseError(file2, "the weighted identity takes a single measure");
      auto x = io::parse_symbols(word, UINT32_MAX);
      og::IdentityReport r = og::weighted_identity(c, x, m.stages.front());
      io::json out = io::to_json(r);
      if (!m.stages.front().is_geometric()) out["lifted_check"] = og::to_fraction(og::lifted_measure_sum(c, x, m.stages.front()));
      print(out);
      return 0;
    }
    if (*mc) {
      og::PrefixCode c = load_code();
      og::Measure mu = og::Measure::uniform(c.alphabet_size());
      if (!file2.empty()) {
        og::MeasureSpec m = io::measure_spec_from_json(io::load_file(file2));
        if (m.per_stage) throw io::ParseError(file2, "Monte Carlo takes a single measure");
        mu = m.stages.front();
      }
      std::vector<og::Symbol> x = word.empty() ? std::vector<og::Symbol>(c.max_length(), 0)
                                               : io::parse_symbols(word, c.alphabet_size());
      print(io::to_json(og::monte_carlo_hit(c, x, mu, trials, mc_seed, jobs)));
      return 0;
    }
    if (*suiteCmd) {
      og::suite::Options so;
      so.jobs = jobs;
      if (suiteCmd->count("--seed")) so.seed = mc_seed;
      std::vector<og::suite::BatteryResult> results;
      if (criterion) results.push_back(og::suite::run_criterion(criterion, so));
      else results = og::suite::run_all(so);
      bool ok = true;
      for (const auto& r : results) {
        std::cout << og::suite::format_line(r) << "\n";
        for (const auto& note : r.notes) std::cout << "  note: " << note << "\n";
        std::cout << std::flush;
        ok = ok && r.passed;
      }
      return ok ? 0 : kViolation;
    }
  } catch (const og::InvariantViolation& e) {
    std::cerr << "property violation: " << e.what() << std::endl;
    return kViolation;
  } catch (const og::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << std::endl;
    return kUsage;
  } catch (const io::ParseError& e) {
    std::cerr << "malformed input: " << e.what() << std::endl;
    return kUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "usage: " << e.what() << std::endl;
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kUsage;
  }
  return kUsage;
}
