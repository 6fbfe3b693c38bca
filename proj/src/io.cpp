#include "opengame/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace opengame::io {

namespace {

std::string location_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::string at(const std::string& where) { return where.empty() ? "/" : where; }

void require_object(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ParseError(at(where), "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ParseError(where + "/" + key, "unknown field");
  }
}

const json& field(const json& j, const std::string& where, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(at(where), "missing field \"" + key + "\"");
  return *it;
}

std::uint64_t unsigned_of(const json& j, const std::string& where) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    throw ParseError(at(where), "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::uint32_t alphabet_of(const json& j, const std::string& where) {
  std::uint64_t k = unsigned_of(field(j, where, "alphabet_size"), where + "/alphabet_size");
  if (k < 2 || k > (1u << 20)) {
    throw ParseError(where + "/alphabet_size", "alphabet size must be between 2 and 2^20");
  }
  return static_cast<std::uint32_t>(k);
}

void check_header(const json& j, const std::string& kind) {
  if (auto it = j.find("kind"); it != j.end()) {
    if (!it->is_string() || it->get<std::string>() != kind) {
      throw ParseError("/kind", "expected \"" + kind + "\"");
    }
  }
  if (auto it = j.find("schema_version"); it != j.end()) {
    if (unsigned_of(*it, "/schema_version") != kSchemaVersion) {
      throw ParseError("/schema_version", "unsupported schema version");
    }
  }
}

std::vector<Position> positions_of(const json& j, const std::string& where, std::uint32_t k) {
  if (!j.is_array()) throw ParseError(at(where), "expected an array of positions");
  std::vector<Position> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string here = where + "/" + std::to_string(i);
    Position p = position_from_json(j[i], here);
    for (std::size_t s = 0; s < p.length(); ++s) {
      if (p[s] >= k) {
        throw ParseError(here + "/" + std::to_string(s),
                         "symbol " + std::to_string(p[s]) + " is outside the alphabet");
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": " + location_of(text, e.byte == 0 ? 0 : e.byte - 1), "invalid JSON");
  }
}

json load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

std::string emit(const json& j) { return j.dump(2) + "\n"; }

json to_json(const Position& p) { return json(p.vector()); }

Position position_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(at(where), "expected an array of symbols");
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::uint64_t s = unsigned_of(j[i], where + "/" + std::to_string(i));
    if (s > UINT32_MAX) throw ParseError(where + "/" + std::to_string(i), "symbol too large");
    out.push_back(static_cast<Symbol>(s));
  }
  return Position(std::move(out));
}

json to_json(const PositionSet& z) {
  json positions = json::array();
  for (const auto& p : z.elements()) positions.push_back(to_json(p));
  return {{"kind", "game"},
          {"schema_version", kSchemaVersion},
          {"alphabet_size", z.alphabet_size()},
          {"infinite_family", z.infinite_family()},
          {"positions", positions}};
}

PositionSet position_set_from_json(const json& j) {
  require_object(j, "", {"kind", "schema_version", "alphabet_size", "infinite_family", "positions"});
  check_header(j, "game");
  const std::uint32_t k = alphabet_of(j, "");
  bool infinite = false;
  if (auto it = j.find("infinite_family"); it != j.end()) {
    if (!it->is_boolean()) throw ParseError("/infinite_family", "expected a boolean");
    infinite = it->get<bool>();
  }
  return PositionSet(k, positions_of(field(j, "", "positions"), "/positions", k), infinite);
}

json to_json(const PrefixCode& c) {
  json words = json::array();
  for (const auto& w : c.words()) words.push_back(to_json(w));
  return {{"kind", "code"},
          {"schema_version", kSchemaVersion},
          {"alphabet_size", c.alphabet_size()},
          {"words", words}};
}

PrefixCode code_from_json(const json& j) {
  require_object(j, "", {"kind", "schema_version", "alphabet_size", "words"});
  check_header(j, "code");
  const std::uint32_t k = alphabet_of(j, "");
  return PrefixCode(k, positions_of(field(j, "", "words"), "/words", k));
}

json to_json(const XVector& x) {
  return {{"depth", x.depth()}, {"entries", x.entries()}};
}

XVector xvector_from_json(const json& j, std::uint32_t alphabet_size) {
  require_object(j, "", {"depth", "entries", "bits"});
  if (j.contains("bits")) {
    if (j.contains("entries")) throw ParseError("/", "give either \"bits\" or \"entries\"");
    if (alphabet_size != 2) throw ParseError("/bits", "bit shorthand needs a binary alphabet");
    const json& bits = j.at("bits");
    if (!bits.is_array()) throw ParseError("/bits", "expected an array");
    std::vector<Symbol> values;
    for (std::size_t i = 0; i < bits.size(); ++i) {
      std::uint64_t b = unsigned_of(bits[i], "/bits/" + std::to_string(i));
      if (b > 1) throw ParseError("/bits/" + std::to_string(i), "expected 0 or 1");
      values.push_back(static_cast<Symbol>(b));
    }
    if (j.contains("depth") && unsigned_of(j.at("depth"), "/depth") != values.size()) {
      throw ParseError("/depth", "depth does not match the number of bits");
    }
    return XVector::from_bits(values);
  }
  const json& entries = field(j, "", "entries");
  if (!entries.is_array()) throw ParseError("/entries", "expected an array of tables");
  std::vector<std::vector<Symbol>> tables;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string here = "/entries/" + std::to_string(i);
    if (!entries[i].is_array() || entries[i].size() != alphabet_size) {
      throw ParseError(here, "expected a table of " + std::to_string(alphabet_size) + " values");
    }
    std::vector<Symbol> table;
    for (std::size_t a = 0; a < entries[i].size(); ++a) {
      std::uint64_t v = unsigned_of(entries[i][a], here + "/" + std::to_string(a));
      if (v >= alphabet_size) throw ParseError(here + "/" + std::to_string(a), "value outside the alphabet");
      table.push_back(static_cast<Symbol>(v));
    }
    tables.push_back(std::move(table));
  }
  if (j.contains("depth") && unsigned_of(j.at("depth"), "/depth") != tables.size()) {
    throw ParseError("/depth", "depth does not match the number of entries");
  }
  return XVector(alphabet_size, std::move(tables));
}

json to_json(const Measure& m) {
  if (m.is_geometric()) return {{"tail", "geometric2"}};
  json weights = json::object();
  for (const auto& [s, w] : m.atoms()) weights[std::to_string(s)] = to_fraction(w);
  return {{"weights", weights}};
}

Measure measure_from_json(const json& j, const std::string& where) {
  require_object(j, where, {"kind", "schema_version", "weights", "tail", "uniform"});
  const int forms = j.contains("weights") + j.contains("tail") + j.contains("uniform");
  if (forms != 1) throw ParseError(at(where), "give exactly one of \"weights\", \"tail\", \"uniform\"");
  if (j.contains("tail")) {
    const json& t = j.at("tail");
    if (!t.is_string() || t.get<std::string>() != "geometric2") {
      throw ParseError(where + "/tail", "the only supported tail is \"geometric2\"");
    }
    return Measure::geometric2();
  }
  if (j.contains("uniform")) {
    std::uint64_t k = unsigned_of(j.at("uniform"), where + "/uniform");
    if (k < 1 || k > (1u << 20)) throw ParseError(where + "/uniform", "size out of range");
    return Measure::uniform(static_cast<std::uint32_t>(k));
  }
  const json& w = j.at("weights");
  if (!w.is_object()) throw ParseError(where + "/weights", "expected an object of symbol: \"n/d\"");
  std::map<Symbol, Rational> atoms;
  for (const auto& [key, value] : w.items()) {
    const std::string here = where + "/weights/" + key;
    std::uint64_t s = 0;
    try {
      std::size_t used = 0;
      s = std::stoull(key, &used);
      if (used != key.size() || key.empty() || key[0] == '-' || key[0] == '+') throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ParseError(here, "symbol keys must be non-negative integers");
    }
    if (!value.is_string()) throw ParseError(here, "weights are rational strings such as \"1/3\"");
    try {
      atoms.emplace(static_cast<Symbol>(s), parse_rational(value.get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw ParseError(here, e.what());
    }
  }
  try {
    return Measure::weights(std::move(atoms));
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + "/weights", e.what());
  }
}

json to_json(const MeasureSpec& m) {
  if (!m.per_stage) {
    json out = to_json(m.stages.front());
    out["kind"] = "measure";
    out["schema_version"] = kSchemaVersion;
    return out;
  }
  json stages = json::array();
  for (const auto& s : m.stages) stages.push_back(to_json(s));
  return {{"kind", "measure"}, {"schema_version", kSchemaVersion}, {"stages", stages}};
}

MeasureSpec measure_spec_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("/", "expected an object");
  check_header(j, "measure");
  if (!j.contains("stages")) return MeasureSpec::single(measure_from_json(j, ""));
  require_object(j, "", {"kind", "schema_version", "stages"});
  const json& stages = j.at("stages");
  if (!stages.is_array() || stages.empty()) throw ParseError("/stages", "expected a nonempty array");
  std::vector<Measure> ms;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    json stage = stages[i];
    ms.push_back(measure_from_json(stage, "/stages/" + std::to_string(i)));
  }
  return MeasureSpec::staged(std::move(ms));
}

json generators_to_json(const std::vector<GroupWord>& gens) {
  json words = json::array();
  for (const auto& g : gens) words.push_back(format_word(g));
  return {{"kind", "generators"}, {"schema_version", kSchemaVersion}, {"generators", words}};
}

std::vector<GroupWord> generators_from_json(const json& j) {
  require_object(j, "", {"kind", "schema_version", "generators"});
  check_header(j, "generators");
  const json& g = field(j, "", "generators");
  if (!g.is_array()) throw ParseError("/generators", "expected an array of words");
  std::vector<GroupWord> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::string here = "/generators/" + std::to_string(i);
    if (!g[i].is_string()) throw ParseError(here, "expected a word such as \"aBa\"");
    try {
      out.push_back(parse_word(g[i].get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw ParseError(here, e.what());
    }
  }
  return out;
}

std::vector<Symbol> parse_symbols(const std::string& text, std::uint32_t alphabet_size) {
  std::vector<Symbol> out;
  auto push = [&](const std::string& piece, std::size_t offset) {
    if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("offset " + std::to_string(offset), "expected a symbol, got \"" + piece + "\"");
    }
    unsigned long long v = std::stoull(piece);
    if (v >= alphabet_size) {
      throw ParseError("offset " + std::to_string(offset), "symbol " + piece + " is outside the alphabet");
    }
    out.push_back(static_cast<Symbol>(v));
  };
  if (text.find(',') == std::string::npos) {
    for (std::size_t i = 0; i < text.size(); ++i) push(std::string(1, text[i]), i);
    return out;
  }
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    push(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start), start);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

json to_json(const Strategy& s) {
  if (s.kind() == Strategy::Kind::oblivious) return {{"kind", "oblivious"}, {"moves", s.moves()}};
  json moves = json::array();
  for (const auto& [p, a] : s.table()) moves.push_back({{"position", to_json(p)}, {"action", a}});
  return {{"kind", "explicit"}, {"moves", moves}};
}

json to_json(const SolveReport& r) {
  json out = {{"winner", r.winner},
              {"unique_p1_strategy", r.unique_p1_strategy},
              {"nodes_visited", r.nodes_visited},
              {"warnings", r.warnings}};
  if (r.strategy) {
    out["strategy"] = to_json(*r.strategy);
    if (r.winner == 1) {
      if (auto a = r.strategy->move_at(Position{})) out["first_move"] = *a;
    }
  }
  if (r.certificate) out["certificate"] = *r.certificate;
  json counts = json::array();
  for (const auto& [p, n] : r.winning_action_counts) counts.push_back({{"position", to_json(p)}, {"count", n}});
  out["winning_action_counts"] = counts;
  return out;
}

json to_json(const LabeledGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back({{"source", e.source}, {"target", e.target}, {"label", format_word({{e.label, 1}})}});
  }
  return {{"vertices", g.vertex_count()}, {"basepoint", g.basepoint()}, {"edges", edges}};
}

json to_json(const IndexResult& r) {
  json out = {{"rank", r.rank}, {"core", to_json(r.graph)}};
  if (r.value) out["index"] = *r.value;
  else out["index"] = "infinite";
  return out;
}

json to_json(const IdentityReport& r) {
  json out = {{"sum", to_fraction(r.sum)}, {"verdict", verdict_name(r.verdict)}, {"partial", r.partial}};
  if (r.limit) out["limit"] = to_fraction(*r.limit);
  return out;
}

json to_json(const MoranRoot& m) {
  return {{"exponent", m.exponent},
          {"residual", m.residual},
          {"below_half", m.below_half},
          {"closed_form", m.closed_form}};
}

json to_json(const EquivalenceVerdict& v) {
  json out = {{"winner", v.winner},
              {"all_maximal", v.all_maximal},
              {"equivalence_holds", v.equivalence_holds},
              {"vectors_checked", v.vectors_checked}};
  out["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  return out;
}

json to_json(const MonteCarloResult& r) {
  return {{"empirical", r.empirical},
          {"exact", to_fraction(r.exact)},
          {"sigma", r.sigma},
          {"hits", r.hits},
          {"trials", r.trials}};
}

}  // namespace opengame::io
