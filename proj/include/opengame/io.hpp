#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "opengame/codes.hpp"
#include "opengame/covering.hpp"
#include "opengame/criteria.hpp"
#include "opengame/free_group.hpp"
#include "opengame/solver.hpp"
#include "opengame/tree.hpp"

namespace opengame::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Malformed input. `where` is a JSON pointer ("/positions/3/1") or a
// "line L, column C" text location.
class ParseError : public std::invalid_argument {
 public:
  ParseError(std::string where, const std::string& message)
      : std::invalid_argument(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

json parse_text(const std::string& text, const std::string& source = "<input>");
json load_file(const std::string& path);

// Canonical emission: sorted keys, two-space indent, trailing newline.
std::string emit(const json& j);

json to_json(const Position& p);
Position position_from_json(const json& j, const std::string& where = "");

json to_json(const PositionSet& z);
PositionSet position_set_from_json(const json& j);

json to_json(const PrefixCode& c);
PrefixCode code_from_json(const json& j);

json to_json(const XVector& x);
XVector xvector_from_json(const json& j, std::uint32_t alphabet_size);

json to_json(const Measure& m);
Measure measure_from_json(const json& j, const std::string& where = "");
json to_json(const MeasureSpec& m);
MeasureSpec measure_spec_from_json(const json& j);

json generators_to_json(const std::vector<GroupWord>& gens);
std::vector<GroupWord> generators_from_json(const json& j);

// Parses a symbol string such as "111" or "1,0,2".
std::vector<Symbol> parse_symbols(const std::string& text, std::uint32_t alphabet_size);

json to_json(const Strategy& s);
json to_json(const SolveReport& r);
json to_json(const LabeledGraph& g);
json to_json(const IndexResult& r);
json to_json(const IdentityReport& r);
json to_json(const MoranRoot& m);
json to_json(const EquivalenceVerdict& v);
json to_json(const MonteCarloResult& r);

}  // namespace opengame::io
